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

#ifndef AMBIGEVAL_SIMILARITY_ORACLE_HPP_
#define AMBIGEVAL_SIMILARITY_ORACLE_HPP_

#include <span>
#include <string>

#include "ambigeval/assignment.hpp"
#include "ambigeval/sql_exec.hpp"
#include "ambigeval/types.hpp"

namespace ambigeval {

// Task-dependent sim(p, a-hat) in [0, 1]. Implementations must be safe for
// concurrent score() calls; the batch kernels rely on it.
class SimilarityOracle {
 public:
  virtual ~SimilarityOracle() = default;

  virtual double score(const std::string& prediction, const GoldAnswer& gold,
                       const GoldExample& example) const = 0;
};

// Word-overlap F1, best variant wins. The training-time similarity for QA.
class TextOverlapOracle final : public SimilarityOracle {
 public:
  double score(const std::string& prediction, const GoldAnswer& gold,
               const GoldExample& example) const override;
};

// Binary execution match on the example's database. May throw
// GoldExecutionFault. The cache pointer is optional and shared per batch.
class ExecutionOracle final : public SimilarityOracle {
 public:
  explicit ExecutionOracle(ExecutionCache* cache = nullptr, ExecOptions options = {})
      : cache_(cache), options_(options) {}

  double score(const std::string& prediction, const GoldAnswer& gold,
               const GoldExample& example) const override;

 private:
  ExecutionCache* cache_;
  ExecOptions options_;
};

// Picks the natural training oracle for the example's task kind.
const SimilarityOracle& training_oracle(TaskKind task, const ExecutionOracle& exec,
                                        const TextOverlapOracle& text);

// |P| x |A| score grid for a prediction list against an example's gold set.
SimilarityMatrix build_similarity_matrix(std::span<const std::string> predictions,
                                         const GoldExample& example,
                                         const SimilarityOracle& oracle);

}  // namespace ambigeval

#endif  // AMBIGEVAL_SIMILARITY_ORACLE_HPP_
