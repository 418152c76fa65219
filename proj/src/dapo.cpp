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

#include "ambigeval/dapo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ambigeval/errors.hpp"

namespace ambigeval {

std::size_t TokenBatch::total_tokens() const {
  std::size_t total = 0;
  for (const auto& row : logp_new) total += row.size();
  return total;
}

void TokenBatch::validate() const {
  if (logp_new.size() != logp_old.size()) {
    throw ShapeMismatch("token batch: completion counts differ");
  }
  for (std::size_t i = 0; i < logp_new.size(); ++i) {
    if (logp_new[i].size() != logp_old[i].size()) {
      throw ShapeMismatch("token batch: token counts differ at completion " + std::to_string(i));
    }
    for (std::size_t t = 0; t < logp_new[i].size(); ++t) {
      if (logp_new[i][t] > 0.0 || logp_old[i][t] > 0.0) {
        throw ShapeMismatch("token batch: positive log-probability");
      }
    }
  }
}

void DapoConfig::validate() const {
  if (!(eps_low > 0.0 && eps_low < 1.0) || !(eps_high > 0.0 && eps_high < 1.0)) {
    throw ConfigError("dapo config: clipping parameters must lie in (0, 1)");
  }
  if (group_size < 2) {
    throw ConfigError("dapo config: group size must be at least 2");
  }
  if (max_completion_tokens < 1) {
    throw ConfigError("dapo config: max completion tokens must be positive");
  }
}

std::vector<double> group_advantage(std::span<const double> rewards) {
  const std::size_t g = rewards.size();
  if (g < 2) {
    throw std::invalid_argument("group_advantage: need at least two rewards");
  }
  const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / static_cast<double>(g);
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  var /= static_cast<double>(g);  // population variance
  const double stddev = std::sqrt(var);
  if (stddev == 0.0) {
    throw DegenerateGroup("group_advantage: zero reward variance");
  }
  std::vector<double> advantages(g);
  for (std::size_t i = 0; i < g; ++i) {
    advantages[i] = (rewards[i] - mean) / stddev;
  }
  return advantages;
}

bool keep_group(const GroupRollout& group, const FilterOptions& options) {
  if (group.rewards.size() != group.success_flags.size()) {
    throw ShapeMismatch("group rollout: rewards and success flags differ in length");
  }
  const std::size_t g = group.rewards.size();
  const std::size_t successes =
      static_cast<std::size_t>(std::count(group.success_flags.begin(),
                                          group.success_flags.end(), true));
  if (successes == 0 || successes == g) return false;
  if (options.drop_zero_variance) {
    const bool all_equal = std::all_of(group.rewards.begin(), group.rewards.end(),
                                       [&](double r) { return r == group.rewards.front(); });
    if (all_equal) return false;
  }
  return true;
}

std::vector<GroupRollout> dynamic_sampling_filter(std::span<const GroupRollout> groups,
                                                  const FilterOptions& options) {
  std::vector<GroupRollout> kept;
  for (const auto& group : groups) {
    if (keep_group(group, options)) kept.push_back(group);
  }
  return kept;
}

namespace {

void check_shapes(const TokenBatch& batch, std::span<const double> advantages) {
  batch.validate();
  if (advantages.size() != batch.completions()) {
    throw ShapeMismatch("dapo: one advantage required per completion");
  }
  if (batch.total_tokens() == 0) {
    throw ShapeMismatch("dapo: batch has no tokens");
  }
}

inline double token_term(double lpn, double lpo, double advantage, const DapoConfig& cfg) {
  const double ratio = std::exp(lpn - lpo);
  const double clipped = std::clamp(ratio, 1.0 - cfg.eps_low, 1.0 + cfg.eps_high);
  return std::min(ratio * advantage, clipped * advantage);
}

inline double token_grad(double lpn, double lpo, double advantage, const DapoConfig& cfg,
                         double inv_total) {
  const double ratio = std::exp(lpn - lpo);
  const double clipped = std::clamp(ratio, 1.0 - cfg.eps_low, 1.0 + cfg.eps_high);
  const double unclipped_term = ratio * advantage;
  // Clipped branch active => constant in logp_new => zero gradient. Ties are
  // treated as unclipped.
  if (unclipped_term > clipped * advantage) return 0.0;
  return unclipped_term * inv_total;
}

double objective_impl(const TokenBatch& batch, std::span<const double> advantages,
                      const DapoConfig& cfg, bool parallel) {
  check_shapes(batch, advantages);
  cfg.validate();
  const double inv_total = 1.0 / static_cast<double>(batch.total_tokens());
  const std::int64_t n = static_cast<std::int64_t>(batch.completions());

  double sum = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : sum) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    double local = 0.0;
    const auto& lpn = batch.logp_new[i];
    const auto& lpo = batch.logp_old[i];
    for (std::size_t t = 0; t < lpn.size(); ++t) {
      local += token_term(lpn[t], lpo[t], advantages[i], cfg);
    }
    sum += local;
  }
  return sum * inv_total;
}

std::vector<std::vector<double>> gradient_impl(const TokenBatch& batch,
                                               std::span<const double> advantages,
                                               const DapoConfig& cfg, bool parallel) {
  check_shapes(batch, advantages);
  cfg.validate();
  const double inv_total = 1.0 / static_cast<double>(batch.total_tokens());
  const std::int64_t n = static_cast<std::int64_t>(batch.completions());

  std::vector<std::vector<double>> grads(batch.completions());
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& lpn = batch.logp_new[i];
    const auto& lpo = batch.logp_old[i];
    grads[i].resize(lpn.size());
    for (std::size_t t = 0; t < lpn.size(); ++t) {
      grads[i][t] = token_grad(lpn[t], lpo[t], advantages[i], cfg, inv_total);
    }
  }
  return grads;
}

}  // namespace

double dapo_objective(const TokenBatch& batch, std::span<const double> advantages,
                      const DapoConfig& config) {
  return objective_impl(batch, advantages, config, true);
}

std::vector<std::vector<double>> dapo_gradient(const TokenBatch& batch,
                                               std::span<const double> advantages,
                                               const DapoConfig& config) {
  return gradient_impl(batch, advantages, config, true);
}

namespace serial {

double dapo_objective(const TokenBatch& batch, std::span<const double> advantages,
                      const DapoConfig& config) {
  return objective_impl(batch, advantages, config, false);
}

std::vector<std::vector<double>> dapo_gradient(const TokenBatch& batch,
                                               std::span<const double> advantages,
                                               const DapoConfig& config) {
  return gradient_impl(batch, advantages, config, false);
}

}  // namespace serial

}  // namespace ambigeval
