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

#include "ambigeval/reward.hpp"

#include <exception>
#include <stdexcept>
#include <utility>

namespace ambigeval {

std::string_view to_string(RewardMode mode) {
  switch (mode) {
    case RewardMode::Recall:
      return "RECALL";
    case RewardMode::Precision:
      return "PRECISION";
    case RewardMode::FormatFailure:
      return "FORMAT_FAILURE";
  }
  return "UNKNOWN";
}

RewardOutcome compute_reward(const std::string& completion, const GoldExample& example,
                             const SimilarityOracle& sim) {
  if (example.gold_answers.empty()) {
    throw std::invalid_argument("compute_reward: example has no gold answers");
  }

  RewardOutcome out;
  out.gold_count = example.gold_answers.size();

  StructuredResponse parsed = parse_interpretation_answer(completion, example.task);
  out.violations = parsed.violations;
  if (!parsed.ok() || parsed.pairs.empty()) {
    out.mode = RewardMode::FormatFailure;
    out.reward = 0.0;
    return out;
  }

  std::vector<std::string> predictions;
  predictions.reserve(parsed.pairs.size());
  for (const auto& pair : parsed.pairs) predictions.push_back(pair.answer);
  out.pred_count = predictions.size();

  const SimilarityMatrix s = build_similarity_matrix(predictions, example, sim);
  const Assignment assignment = optimal_assignment(s);
  for (const auto& [p, g] : assignment.matches) {
    out.matched.push_back(MatchedPair{p, g, s.at(p, g)});
  }

  const bool recall_mode = out.gold_count > 1;
  out.mode = recall_mode ? RewardMode::Recall : RewardMode::Precision;
  const double denom =
      recall_mode ? static_cast<double>(out.gold_count) : static_cast<double>(out.pred_count);
  out.reward = assignment.value / denom;
  return out;
}

namespace {

std::vector<RewardOutcome> reward_batch_impl(std::span<const RewardItem> items,
                                             const SimilarityOracle& sim, bool parallel) {
  std::vector<RewardOutcome> outcomes(items.size());
  std::vector<std::exception_ptr> failures(items.size());

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(items.size()); ++i) {
    try {
      outcomes[i] = compute_reward(items[i].completion, *items[i].example, sim);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }

  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return outcomes;
}

}  // namespace

std::vector<RewardOutcome> compute_reward_batch(std::span<const RewardItem> items,
                                                const SimilarityOracle& sim) {
  return reward_batch_impl(items, sim, true);
}

namespace serial {
std::vector<RewardOutcome> compute_reward_batch(std::span<const RewardItem> items,
                                                const SimilarityOracle& sim) {
  return reward_batch_impl(items, sim, false);
}
}  // namespace serial

std::vector<InterpretationAnswerPair> dedupe_by_execution(
    std::span<const InterpretationAnswerPair> pairs, const std::string& db_path,
    ExecutionCache* cache, const ExecOptions& options) {
  std::vector<InterpretationAnswerPair> kept;
  std::vector<const ResultTable*> kept_tables;
  std::vector<std::shared_ptr<const ExecResult>> owned;

  for (const auto& pair : pairs) {
    std::shared_ptr<const ExecResult> result =
        cache != nullptr
            ? cache->get_or_execute(pair.answer, db_path, options)
            : std::make_shared<const ExecResult>(execute_sql(pair.answer, db_path, options));
    if (const auto* table = std::get_if<ResultTable>(result.get())) {
      bool duplicate = false;
      for (const ResultTable* seen : kept_tables) {
        if (table_equal(*seen, *table)) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;
      owned.push_back(result);
      kept_tables.push_back(std::get_if<ResultTable>(owned.back().get()));
    }
    kept.push_back(pair);
  }
  return kept;
}

}  // namespace ambigeval
