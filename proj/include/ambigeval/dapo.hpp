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

#ifndef AMBIGEVAL_DAPO_HPP_
#define AMBIGEVAL_DAPO_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace ambigeval {

// Decoupled-clip token-level policy objective with dynamic sampling:
//
//   J = (1 / sum_i |o_i|) * sum_i sum_t
//         min(r_it * A_i, clip(r_it, 1 - eps_low, 1 + eps_high) * A_i)
//
// with r_it = exp(logp_new - logp_old), no KL term, and per-completion
// advantages A_i standardized within the rollout group.

struct GroupRollout {
  std::vector<double> rewards;
  std::vector<bool> success_flags;  // is-equivalent outcomes, one per reward
};

// Per-completion token log-probabilities under the current and behavior
// policies. Shapes must match exactly; all values must be <= 0.
struct TokenBatch {
  std::vector<std::vector<double>> logp_new;
  std::vector<std::vector<double>> logp_old;

  std::size_t completions() const { return logp_new.size(); }
  std::size_t total_tokens() const;

  // Throws ShapeMismatch on ragged shapes or positive log-probabilities.
  void validate() const;
};

struct DapoConfig {
  double eps_low = 0.2;
  double eps_high = 0.28;
  int group_size = 16;
  int max_completion_tokens = 2500;

  // Throws ConfigError when eps values leave (0, 1) or group_size < 2.
  void validate() const;
};

// Group-relative advantages: (R_i - mean) / std with the population standard
// deviation (no Bessel correction). Throws std::invalid_argument for groups
// smaller than 2 and DegenerateGroup when the std is zero.
std::vector<double> group_advantage(std::span<const double> rewards);

struct FilterOptions {
  // Soft-reward batches also drop groups whose rewards have zero variance;
  // such groups have no defined advantage.
  bool drop_zero_variance = true;
};

// True iff the group has both successes and failures (0 < sum < G) and, when
// enabled, nonzero reward variance.
bool keep_group(const GroupRollout& group, const FilterOptions& options = {});

std::vector<GroupRollout> dynamic_sampling_filter(std::span<const GroupRollout> groups,
                                                  const FilterOptions& options = {});

// Default success flag for soft rewards: full coverage.
inline bool success_from_reward(double reward) { return reward >= 0.999; }

// OpenMP-parallel objective and its analytic gradient with respect to
// logp_new. Gradient is r*A/T on unclipped tokens and 0 where the clipped
// branch is active; boundary ties count as unclipped. Serial reference
// implementations live in ambigeval::serial.
double dapo_objective(const TokenBatch& batch, std::span<const double> advantages,
                      const DapoConfig& config);

std::vector<std::vector<double>> dapo_gradient(const TokenBatch& batch,
                                               std::span<const double> advantages,
                                               const DapoConfig& config);

namespace serial {
double dapo_objective(const TokenBatch& batch, std::span<const double> advantages,
                      const DapoConfig& config);
std::vector<std::vector<double>> dapo_gradient(const TokenBatch& batch,
                                               std::span<const double> advantages,
                                               const DapoConfig& config);
}  // namespace serial

}  // namespace ambigeval

#endif  // AMBIGEVAL_DAPO_HPP_
