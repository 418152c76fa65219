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

#include "ambigeval/similarity_oracle.hpp"

#include <stdexcept>

#include "ambigeval/text_similarity.hpp"

namespace ambigeval {

double TextOverlapOracle::score(const std::string& prediction, const GoldAnswer& gold,
                                const GoldExample&) const {
  return sim_text(prediction, gold);
}

double ExecutionOracle::score(const std::string& prediction, const GoldAnswer& gold,
                              const GoldExample& example) const {
  if (gold.variants.empty()) {
    throw std::invalid_argument("execution oracle: gold answer has no query");
  }
  return static_cast<double>(
      sim_exec(prediction, gold.variants.front(), example.db_path, cache_, options_));
}

const SimilarityOracle& training_oracle(TaskKind task, const ExecutionOracle& exec,
                                        const TextOverlapOracle& text) {
  if (task == TaskKind::Sql) return exec;
  return text;
}

SimilarityMatrix build_similarity_matrix(std::span<const std::string> predictions,
                                         const GoldExample& example,
                                         const SimilarityOracle& oracle) {
  SimilarityMatrix s(predictions.size(), example.gold_answers.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    for (std::size_t j = 0; j < example.gold_answers.size(); ++j) {
      s.at(i, j) = oracle.score(predictions[i], example.gold_answers[j], example);
    }
  }
  return s;
}

}  // namespace ambigeval
