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

#ifndef AMBIGEVAL_ASSIGNMENT_HPP_
#define AMBIGEVAL_ASSIGNMENT_HPP_

#include <cstddef>
#include <utility>
#include <vector>

namespace ambigeval {

// Row-major m x n score grid: rows are predictions, columns are gold answers.
// Entries must lie in [0, 1]. m may be zero; n must be at least one wherever
// a matrix reaches the solver.
struct SimilarityMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> scores;

  SimilarityMatrix() = default;
  SimilarityMatrix(std::size_t m, std::size_t n) : rows(m), cols(n), scores(m * n, 0.0) {}

  double at(std::size_t i, std::size_t j) const { return scores[i * cols + j]; }
  double& at(std::size_t i, std::size_t j) { return scores[i * cols + j]; }
};

// One-to-one matching of size min(m, n). Matches are sorted by prediction
// index; value is the sum of matched scores accumulated in that order.
struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> matches;  // (pred, gold)
  double value = 0.0;
};

// Maximum-total-similarity assignment. Ties between optima are broken toward
// the lexicographically smallest match set, so results are reproducible
// across runs and platforms. Throws std::invalid_argument on a malformed
// matrix (entries outside [0, 1], NaN, or zero columns with nonzero rows).
Assignment optimal_assignment(const SimilarityMatrix& s);

// Assignment value of a 0/1 matrix as an integer, i.e. the size of a maximum
// bipartite matching over the 1-cells. Throws NonBinaryMatrix when any entry
// is not exactly 0.0 or 1.0.
int binary_match_count(const SimilarityMatrix& s);

}  // namespace ambigeval

#endif  // AMBIGEVAL_ASSIGNMENT_HPP_
