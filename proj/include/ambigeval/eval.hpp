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

#ifndef AMBIGEVAL_EVAL_HPP_
#define AMBIGEVAL_EVAL_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ambigeval/assignment.hpp"
#include "ambigeval/judge.hpp"
#include "ambigeval/sql_exec.hpp"
#include "ambigeval/types.hpp"

namespace ambigeval {

enum class SimMode { Judge, Overlap, Exec };

std::string_view to_string(SimMode mode);
SimMode sim_mode_from_string(std::string_view s);  // throws ConfigError

// Binary judge similarity grid plus the count of malformed verdicts. An
// entry is 1 iff the judge calls the prediction equivalent to any paraphrase
// variant of that gold answer.
struct JudgeMatrix {
  SimilarityMatrix matrix;
  std::size_t malformed_verdicts = 0;
};

JudgeMatrix judge_matrix(const GoldExample& example, std::span<const std::string> predictions,
                         JudgeClient& judge);

struct ExampleEval {
  std::string example_id;
  bool ambiguous = false;
  TaskKind task = TaskKind::Qa;
  double recall = 0.0;
  double precision = 0.0;
  bool full_coverage = false;    // recall == 1 up to 1e-9
  bool single_coverage = false;  // some matched pair with sim >= 0.999
  double legacy_overlap_f1 = 0.0;  // QA only
  std::size_t reasoning_chars = 0;
  bool parse_failed = false;
  std::size_t malformed_verdicts = 0;
};

struct SubsetReport {
  std::size_t n_examples = 0;
  std::size_t n_parse_failures = 0;
  double recall = 0.0;          // percentages
  double precision = 0.0;
  double full_coverage = 0.0;
  double single_coverage = 0.0;
  double legacy_overlap_f1 = 0.0;  // over QA examples in the subset
  double mean_reasoning_chars = 0.0;
};

struct EvalReport {
  SubsetReport ambiguous;
  SubsetReport unambiguous;
  std::size_t malformed_verdicts = 0;
};

// Legacy conversational-QA coverage metric: per gold answer, the best
// overlap F1 over all predictions and that gold's variants, averaged across
// gold answers. No one-to-one constraint, so it dominates matching-based
// recall. QA only.
double legacy_overlap_f1(const GoldExample& example, const std::string& completion);

// Characters before the answer block; whole completion when no block exists.
std::size_t reasoning_length(std::string_view completion);

// Macro-averages per subset, scaled to percentages.
EvalReport aggregate(std::span<const ExampleEval> results);

struct DumpRecord {
  std::string example_id;
  std::string completion_text;
};

// Reads a line-delimited JSON dump of {example_id, completion_text} records.
std::vector<DumpRecord> load_dump(const std::string& path);

class Evaluator {
 public:
  struct Options {
    SimMode mode = SimMode::Overlap;
    ExecOptions exec;
    int threads = 0;  // 0: library default
  };

  // The judge is required for SimMode::Judge and is wrapped in a verdict
  // cache owned by this evaluator.
  explicit Evaluator(Options options, JudgeClient* judge = nullptr);

  ExampleEval evaluate_example(const GoldExample& example, const std::string& completion);

  // Pairs each dump record with its dataset example and evaluates them,
  // OpenMP-parallel across examples. Unknown or duplicate example ids throw
  // SchemaViolation.
  std::vector<ExampleEval> evaluate_dump(std::span<const GoldExample> dataset,
                                         std::span<const DumpRecord> records);

 private:
  Options options_;
  JudgeClient* judge_;
  std::unique_ptr<CachingJudge> cache_;
  ExecutionCache exec_cache_;
};

// Fixed-width table for terminals; one row per subset.
std::string format_report(const EvalReport& report);

}  // namespace ambigeval

#endif  // AMBIGEVAL_EVAL_HPP_
