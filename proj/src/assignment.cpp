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

#include "ambigeval/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ambigeval/errors.hpp"

namespace ambigeval {

namespace {

// Two sums of at most ~10 scores in [0,1] that are mathematically equal can
// differ by a few ulps depending on accumulation order.
constexpr double kValueTolerance = 1e-12;

void validate(const SimilarityMatrix& s) {
  if (s.scores.size() != s.rows * s.cols) {
    throw std::invalid_argument("similarity matrix: size does not match dimensions");
  }
  if (s.rows > 0 && s.cols == 0) {
    throw std::invalid_argument("similarity matrix: zero gold columns");
  }
  for (double v : s.scores) {
    if (!(v >= 0.0 && v <= 1.0)) {  // also rejects NaN
      throw std::invalid_argument("similarity matrix: entry outside [0, 1]");
    }
  }
}

// Classic O(n^3) Kuhn-Munkres on a square cost matrix (potentials form).
// Returns the minimum total cost assignment as row -> column.
std::vector<int> solve_square_min(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      double delta = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

// Maximum total similarity over one-to-one matchings of size
// min(|preds|, |golds|) on the given row/column subset. Maximization is the
// standard reduction to minimizing (1 - S) on a zero-score-padded square.
double best_value(const SimilarityMatrix& s, const std::vector<std::size_t>& preds,
                  const std::vector<std::size_t>& golds) {
  const std::size_t m = preds.size(), n = golds.size();
  if (m == 0 || n == 0) return 0.0;
  const std::size_t sq = std::max(m, n);
  std::vector<std::vector<double>> cost(sq, std::vector<double>(sq, 1.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i][j] = 1.0 - s.at(preds[i], golds[j]);
    }
  }
  const std::vector<int> sol = solve_square_min(cost);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const int j = sol[i];
    if (j >= 0 && static_cast<std::size_t>(j) < n) {
      total += s.at(preds[i], golds[j]);
    }
  }
  return total;
}

}  // namespace

Assignment optimal_assignment(const SimilarityMatrix& s) {
  validate(s);
  Assignment result;
  if (s.rows == 0) return result;

  std::vector<std::size_t> all_preds(s.rows), all_golds(s.cols);
  for (std::size_t i = 0; i < s.rows; ++i) all_preds[i] = i;
  for (std::size_t j = 0; j < s.cols; ++j) all_golds[j] = j;
  const double optimum = best_value(s, all_preds, all_golds);
  const std::size_t target = std::min(s.rows, s.cols);

  // Lexicographic refinement: commit the smallest (pred, gold) pairs that
  // still extend to an assignment of optimal total value.
  std::vector<char> gold_used(s.cols, 0);
  double fixed_sum = 0.0;
  for (std::size_t i = 0; i < s.rows && result.matches.size() < target; ++i) {
    const std::size_t needed_after = target - result.matches.size() - 1;
    for (std::size_t j = 0; j < s.cols; ++j) {
      if (gold_used[j]) continue;
      std::vector<std::size_t> rem_preds;
      for (std::size_t r = i + 1; r < s.rows; ++r) rem_preds.push_back(r);
      std::vector<std::size_t> rem_golds;
      for (std::size_t c = 0; c < s.cols; ++c) {
        if (!gold_used[c] && c != j) rem_golds.push_back(c);
      }
      if (std::min(rem_preds.size(), rem_golds.size()) < needed_after) continue;
      const double rest = needed_after == 0 ? 0.0 : best_value(s, rem_preds, rem_golds);
      if (std::abs(fixed_sum + s.at(i, j) + rest - optimum) <= kValueTolerance) {
        result.matches.emplace_back(i, j);
        gold_used[j] = 1;
        fixed_sum += s.at(i, j);
        break;
      }
    }
  }

  double value = 0.0;
  for (const auto& [p, g] : result.matches) value += s.at(p, g);
  result.value = value;
  return result;
}

int binary_match_count(const SimilarityMatrix& s) {
  for (double v : s.scores) {
    if (v != 0.0 && v != 1.0) {
      throw NonBinaryMatrix("binary_match_count: entry is not exactly 0 or 1");
    }
  }
  // Sums of 0/1 doubles are exact, so the rounded value is the matching size.
  return static_cast<int>(std::llround(optimal_assignment(s).value));
}

}  // namespace ambigeval
