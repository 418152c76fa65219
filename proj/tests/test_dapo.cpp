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
#include <random>

#include "doctest.h"

#include "ambigeval/errors.hpp"

using namespace ambigeval;

namespace {

// Straightforward re-implementation used as the oracle: explicit double loop,
// no shared helpers with the library path.
double naive_objective(const TokenBatch& batch, const std::vector<double>& advantages,
                       const DapoConfig& cfg) {
  double total_tokens = 0.0;
  for (const auto& row : batch.logp_new) total_tokens += static_cast<double>(row.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < batch.logp_new.size(); ++i) {
    for (std::size_t t = 0; t < batch.logp_new[i].size(); ++t) {
      const double r = std::exp(batch.logp_new[i][t] - batch.logp_old[i][t]);
      double clipped = r;
      if (clipped < 1.0 - cfg.eps_low) clipped = 1.0 - cfg.eps_low;
      if (clipped > 1.0 + cfg.eps_high) clipped = 1.0 + cfg.eps_high;
      const double a = advantages[i];
      sum += std::min(r * a, clipped * a);
    }
  }
  return sum / total_tokens;
}

struct RandomBatch {
  TokenBatch batch;
  std::vector<double> advantages;
};

// Small random batch with every ratio nudged away from the clip boundaries
// by at least `margin`.
RandomBatch random_batch(std::mt19937_64& rng, const DapoConfig& cfg, double margin) {
  std::uniform_int_distribution<int> n_completions(2, 4);
  std::uniform_int_distribution<int> n_tokens(1, 8);
  std::uniform_real_distribution<double> logp(-4.0, -0.2);
  std::uniform_real_distribution<double> delta(-0.8, 0.8);
  std::uniform_real_distribution<double> advantage(-2.0, 2.0);

  RandomBatch out;
  const int g = n_completions(rng);
  for (int i = 0; i < g; ++i) {
    const int tokens = n_tokens(rng);
    std::vector<double> lpo(tokens), lpn(tokens);
    for (int t = 0; t < tokens; ++t) {
      lpo[t] = logp(rng);
      double d = delta(rng);
      // Keep exp(d) away from both clip edges and keep logp_new <= 0.
      const double low = 1.0 - cfg.eps_low, high = 1.0 + cfg.eps_high;
      while (std::abs(std::exp(d) - low) < margin || std::abs(std::exp(d) - high) < margin ||
             lpo[t] + d > -0.05) {
        d = delta(rng);
      }
      lpn[t] = lpo[t] + d;
    }
    out.batch.logp_old.push_back(std::move(lpo));
    out.batch.logp_new.push_back(std::move(lpn));
    double a = advantage(rng);
    while (std::abs(a) < 0.05) a = advantage(rng);
    out.advantages.push_back(a);
  }
  return out;
}

}  // namespace

TEST_CASE("group_advantage on the stated pairs") {
  const auto two = group_advantage(std::vector<double>{1.0, 0.0});
  CHECK(two[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(two[1] == doctest::Approx(-1.0).epsilon(1e-12));

  const auto four = group_advantage(std::vector<double>{1.0, 0.0, 0.0, 0.0});
  CHECK(four[0] == doctest::Approx(1.7321).epsilon(1e-4));
  CHECK(four[1] == doctest::Approx(-0.5774).epsilon(1e-4));
  CHECK(four[2] == doctest::Approx(-0.5774).epsilon(1e-4));
  CHECK(four[3] == doctest::Approx(-0.5774).epsilon(1e-4));
}

TEST_CASE("group_advantage output has mean 0 and population std 1") {
  std::mt19937_64 rng(321);
  std::uniform_int_distribution<int> size(2, 16);
  std::uniform_real_distribution<double> reward(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> rewards(size(rng));
    for (double& r : rewards) r = reward(rng);
    if (std::all_of(rewards.begin(), rewards.end(),
                    [&](double r) { return r == rewards.front(); })) {
      continue;
    }
    const auto adv = group_advantage(rewards);
    double mean = 0.0;
    for (double a : adv) mean += a;
    mean /= static_cast<double>(adv.size());
    double var = 0.0;
    for (double a : adv) var += (a - mean) * (a - mean);
    var /= static_cast<double>(adv.size());
    CHECK(std::abs(mean) < 1e-9);
    CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-9);
  }
}

TEST_CASE("group_advantage rejects degenerate input") {
  CHECK_THROWS_AS(group_advantage(std::vector<double>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(group_advantage(std::vector<double>{0.5, 0.5, 0.5}), DegenerateGroup);
}

TEST_CASE("dynamic sampling keeps only mixed-outcome groups") {
  GroupRollout all_correct{{1.0, 1.0, 1.0, 1.0}, {true, true, true, true}};
  GroupRollout all_wrong{{0.0, 0.0, 0.0, 0.0}, {false, false, false, false}};
  GroupRollout mixed{{1.0, 0.0, 0.0, 0.0}, {true, false, false, false}};
  CHECK(!keep_group(all_correct));
  CHECK(!keep_group(all_wrong));
  CHECK(keep_group(mixed));

  const std::vector<GroupRollout> batch{all_correct, mixed, all_wrong, mixed};
  CHECK(dynamic_sampling_filter(batch).size() == 2);
}

TEST_CASE("zero-variance soft-reward groups are dropped unless disabled") {
  // Mixed flags but identical rewards: no usable advantage signal.
  GroupRollout flat{{0.5, 0.5, 0.5}, {true, false, true}};
  CHECK(!keep_group(flat));
  CHECK(keep_group(flat, FilterOptions{.drop_zero_variance = false}));
}

TEST_CASE("filter agrees with the direct predicate on random batches") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> size(2, 8);
  std::uniform_int_distribution<int> flag(0, 1);
  std::uniform_real_distribution<double> reward(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<GroupRollout> batch(8);
    for (auto& group : batch) {
      const int g = size(rng);
      for (int k = 0; k < g; ++k) {
        group.rewards.push_back(reward(rng));
        group.success_flags.push_back(flag(rng) == 1);
      }
    }
    std::size_t expected = 0;
    for (const auto& group : batch) {
      const auto n = static_cast<std::size_t>(
          std::count(group.success_flags.begin(), group.success_flags.end(), true));
      const bool mixed = n > 0 && n < group.success_flags.size();
      bool varies = false;
      for (double r : group.rewards) varies = varies || r != group.rewards.front();
      if (mixed && varies) ++expected;
    }
    CHECK(dynamic_sampling_filter(batch).size() == expected);
  }
}

TEST_CASE("unit ratios reduce the objective to the token-weighted advantage mean") {
  TokenBatch batch;
  batch.logp_new = {{-1.0, -2.0, -0.5}, {-3.0}};
  batch.logp_old = batch.logp_new;
  const std::vector<double> advantages{0.7, -0.3};
  const DapoConfig cfg;
  // (3 * 0.7 + 1 * (-0.3)) / 4
  CHECK(dapo_objective(batch, advantages, cfg) == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("the clip branch caps a single-token objective") {
  TokenBatch batch;
  batch.logp_old = {{-1.0}};
  batch.logp_new = {{-1.0 + std::log(2.0)}};
  const std::vector<double> advantages{1.0};
  DapoConfig cfg;
  cfg.eps_high = 0.28;
  // min(2, 1.28) * 1
  CHECK(dapo_objective(batch, advantages, cfg) == doctest::Approx(1.28).epsilon(1e-12));
}

TEST_CASE("objective matches the naive double-loop oracle") {
  std::mt19937_64 rng(11);
  const DapoConfig cfg;
  for (int i = 0; i < 300; ++i) {
    const auto rb = random_batch(rng, cfg, 1e-6);
    const double expected = naive_objective(rb.batch, rb.advantages, cfg);
    CHECK(dapo_objective(rb.batch, rb.advantages, cfg) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(serial::dapo_objective(rb.batch, rb.advantages, cfg) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("objective is invariant under completion permutation") {
  std::mt19937_64 rng(17);
  const DapoConfig cfg;
  for (int i = 0; i < 100; ++i) {
    auto rb = random_batch(rng, cfg, 1e-6);
    const double before = serial::dapo_objective(rb.batch, rb.advantages, cfg);
    for (std::size_t k = rb.advantages.size(); k > 1; --k) {
      const std::size_t j = rng() % k;
      std::swap(rb.batch.logp_new[k - 1], rb.batch.logp_new[j]);
      std::swap(rb.batch.logp_old[k - 1], rb.batch.logp_old[j]);
      std::swap(rb.advantages[k - 1], rb.advantages[j]);
    }
    CHECK(serial::dapo_objective(rb.batch, rb.advantages, cfg) ==
          doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("gradient closed forms: unit ratio and clipped region") {
  TokenBatch batch;
  batch.logp_new = {{-1.0, -2.0}, {-0.5}};
  batch.logp_old = batch.logp_new;
  const std::vector<double> advantages{0.4, -0.9};
  const DapoConfig cfg;
  const auto grads = dapo_gradient(batch, advantages, cfg);
  CHECK(grads[0][0] == doctest::Approx(0.4 / 3.0).epsilon(1e-12));
  CHECK(grads[0][1] == doctest::Approx(0.4 / 3.0).epsilon(1e-12));
  CHECK(grads[1][0] == doctest::Approx(-0.9 / 3.0).epsilon(1e-12));

  TokenBatch clipped;
  clipped.logp_old = {{-1.0}};
  clipped.logp_new = {{-1.0 + std::log(2.0)}};  // r = 2 > 1 + eps_high, A > 0
  CHECK(dapo_gradient(clipped, std::vector<double>{1.0}, cfg)[0][0] == 0.0);

  TokenBatch low;
  low.logp_old = {{-1.0}};
  low.logp_new = {{-1.0 + std::log(0.5)}};  // r = 0.5 < 1 - eps_low, A < 0
  CHECK(dapo_gradient(low, std::vector<double>{-1.0}, cfg)[0][0] == 0.0);
  // Same ratio with A > 0 stays unclipped: min picks r * A.
  CHECK(dapo_gradient(low, std::vector<double>{1.0}, cfg)[0][0] ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("gradient matches central finite differences off the boundaries") {
  std::mt19937_64 rng(23);
  const DapoConfig cfg;
  const double h = 1e-5;
  for (int i = 0; i < 60; ++i) {
    auto rb = random_batch(rng, cfg, 10 * h);
    const auto grads = dapo_gradient(rb.batch, rb.advantages, cfg);
    for (std::size_t ci = 0; ci < rb.batch.logp_new.size(); ++ci) {
      for (std::size_t t = 0; t < rb.batch.logp_new[ci].size(); ++t) {
        TokenBatch plus = rb.batch, minus = rb.batch;
        plus.logp_new[ci][t] += h;
        minus.logp_new[ci][t] -= h;
        const double fd = (serial::dapo_objective(plus, rb.advantages, cfg) -
                           serial::dapo_objective(minus, rb.advantages, cfg)) /
                          (2 * h);
        const double g = grads[ci][t];
        const double rel = std::abs(fd - g) / std::max(1e-8, std::abs(g));
        CHECK(rel <= 1e-4);
      }
    }
  }
}

TEST_CASE("parallel kernels agree with the serial references") {
  std::mt19937_64 rng(29);
  const DapoConfig cfg;
  for (int i = 0; i < 50; ++i) {
    const auto rb = random_batch(rng, cfg, 1e-6);
    CHECK(dapo_objective(rb.batch, rb.advantages, cfg) ==
          doctest::Approx(serial::dapo_objective(rb.batch, rb.advantages, cfg))
              .epsilon(1e-12));
    CHECK(dapo_gradient(rb.batch, rb.advantages, cfg) ==
          serial::dapo_gradient(rb.batch, rb.advantages, cfg));
  }
}

TEST_CASE("filtering before or after batching gives the same objective") {
  // Three groups; the middle one is uniformly correct and must drop out.
  std::vector<GroupRollout> groups{
      {{1.0, 0.0}, {true, false}},
      {{1.0, 1.0}, {true, true}},
      {{0.5, 0.0}, {true, false}},
  };
  std::vector<TokenBatch> batches(3);
  for (int g = 0; g < 3; ++g) {
    batches[g].logp_old = {{-1.0, -0.7}, {-0.4}};
    batches[g].logp_new = {{-0.9, -0.8}, {-0.5}};
  }

  const auto kept = dynamic_sampling_filter(groups);
  REQUIRE(kept.size() == 2);

  const DapoConfig cfg;
  TokenBatch merged_kept;
  std::vector<double> adv_kept;
  for (const std::size_t g : {std::size_t{0}, std::size_t{2}}) {
    const auto adv = group_advantage(groups[g].rewards);
    for (std::size_t i = 0; i < batches[g].logp_new.size(); ++i) {
      merged_kept.logp_new.push_back(batches[g].logp_new[i]);
      merged_kept.logp_old.push_back(batches[g].logp_old[i]);
      adv_kept.push_back(adv[i]);
    }
  }

  TokenBatch filtered_direct;
  std::vector<double> adv_direct;
  for (std::size_t g = 0; g < kept.size(); ++g) {
    const auto adv = group_advantage(kept[g].rewards);
    const std::size_t src = g == 0 ? 0 : 2;
    for (std::size_t i = 0; i < batches[src].logp_new.size(); ++i) {
      filtered_direct.logp_new.push_back(batches[src].logp_new[i]);
      filtered_direct.logp_old.push_back(batches[src].logp_old[i]);
      adv_direct.push_back(adv[i]);
    }
  }

  CHECK(serial::dapo_objective(merged_kept, adv_kept, cfg) ==
        serial::dapo_objective(filtered_direct, adv_direct, cfg));
}

TEST_CASE("shape mismatches are rejected") {
  TokenBatch ragged;
  ragged.logp_new = {{-1.0, -2.0}};
  ragged.logp_old = {{-1.0}};
  CHECK_THROWS_AS(dapo_objective(ragged, std::vector<double>{1.0}, DapoConfig{}), ShapeMismatch);

  TokenBatch ok;
  ok.logp_new = {{-1.0}};
  ok.logp_old = {{-1.0}};
  CHECK_THROWS_AS(dapo_objective(ok, std::vector<double>{1.0, 2.0}, DapoConfig{}), ShapeMismatch);

  TokenBatch positive;
  positive.logp_new = {{0.5}};
  positive.logp_old = {{-1.0}};
  CHECK_THROWS_AS(dapo_objective(positive, std::vector<double>{1.0}, DapoConfig{}),
                  ShapeMismatch);

  DapoConfig bad;
  bad.eps_low = 1.5;
  CHECK_THROWS_AS(dapo_objective(ok, std::vector<double>{1.0}, bad), ConfigError);
}
