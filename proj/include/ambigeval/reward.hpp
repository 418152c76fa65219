//
// Copyright 2026 The ambigeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef AMBIGEVAL_REWARD_HPP_
#define AMBIGEVAL_REWARD_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ambigeval/response_parser.hpp"
#include "ambigeval/similarity_oracle.hpp"
#include "ambigeval/sql_exec.hpp"
#include "ambigeval/types.hpp"

namespace ambigeval {

// Mode is a pure function of the gold set size: several golds reward
// coverage (recall), a single gold rewards not over-generating (precision).
enum class RewardMode { Recall, Precision, FormatFailure };

std::string_view to_string(RewardMode mode);

struct MatchedPair {
  std::size_t pred = 0;
  std::size_t gold = 0;
  double sim = 0.0;
};

struct RewardOutcome {
  double reward = 0.0;
  RewardMode mode = RewardMode::FormatFailure;
  std::vector<MatchedPair> matched;
  std::size_t pred_count = 0;  // all parsed pairs, overflow included
  std::size_t gold_count = 0;
  std::vector<Violation> violations;
};

// Training reward for one completion: parse, score the |P| x |A| grid with
// the oracle, take the optimal assignment, then divide the matched mass by
// |A| (recall, ambiguous) or |P| (precision, unambiguous). A completion with
// no answer block or no pairs scores 0 with mode FormatFailure. Propagates
// GoldExecutionFault from the SQL oracle.
RewardOutcome compute_reward(const std::string& completion, const GoldExample& example,
                             const SimilarityOracle& sim);

// Batch kernel over independent (example, completion) items, OpenMP-parallel
// across items. Outcomes are positionally aligned with the input and
// bit-identical to the serial variant for any thread count.
struct RewardItem {
  const GoldExample* example = nullptr;
  std::string completion;
};

std::vector<RewardOutcome> compute_reward_batch(std::span<const RewardItem> items,
                                                const SimilarityOracle& sim);

namespace serial {
std::vector<RewardOutcome> compute_reward_batch(std::span<const RewardItem> items,
                                                const SimilarityOracle& sim);
}  // namespace serial

// Keeps the first pair per distinct execution result; non-executable pairs
// are all kept (each failure is its own bucket). Opt-in post-processor for
// repeated interpretations, not applied inside compute_reward.
std::vector<InterpretationAnswerPair> dedupe_by_execution(
    std::span<const InterpretationAnswerPair> pairs, const std::string& db_path,
    ExecutionCache* cache = nullptr, const ExecOptions& options = {});

}  // namespace ambigeval

#endif  // AMBIGEVAL_REWARD_HPP_
