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

// Compares the OpenMP kernels against their serial references on synthetic
// workloads and reports timings plus the largest observed divergence.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ambigeval/dapo.hpp"
#include "ambigeval/response_parser.hpp"
#include "ambigeval/reward.hpp"
#include "ambigeval/similarity_oracle.hpp"

namespace {

using namespace ambigeval;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

template <typename F>
double best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    fn();
    best = std::min(best, ms_since(start));
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, double max_delta) {
  std::printf("%-28s %10.2f ms %10.2f ms %7.2fx %12.3g\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms, max_delta);
}

std::string random_words(std::mt19937_64& rng, int count) {
  static const char* pool[] = {"river",  "stone", "sharp",  "yellow", "march",  "seven",
                               "window", "crane", "signal", "harbor", "violet", "ember"};
  std::uniform_int_distribution<int> pick(0, 11);
  std::string out;
  for (int i = 0; i < count; ++i) {
    if (i > 0) out.push_back(' ');
    out += pool[pick(rng)];
  }
  return out;
}

void bench_dapo(bool quick) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logp(-4.0, -0.05);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);

  const int completions = quick ? 16 : 64;
  const int tokens = quick ? 512 : 2048;
  TokenBatch batch;
  std::vector<double> advantages;
  for (int i = 0; i < completions; ++i) {
    std::vector<double> lpo(tokens), lpn(tokens);
    for (int t = 0; t < tokens; ++t) {
      lpo[t] = logp(rng);
      lpn[t] = std::min(0.0, lpo[t] + jitter(rng));
    }
    batch.logp_old.push_back(std::move(lpo));
    batch.logp_new.push_back(std::move(lpn));
    advantages.push_back(i % 2 == 0 ? 1.0 : -1.0);
  }
  const DapoConfig cfg;

  const int reps = quick ? 3 : 7;
  double j_serial = 0.0, j_parallel = 0.0;
  const double t_serial =
      best_of(reps, [&] { j_serial = serial::dapo_objective(batch, advantages, cfg); });
  const double t_parallel =
      best_of(reps, [&] { j_parallel = dapo_objective(batch, advantages, cfg); });
  report("dapo_objective", t_serial, t_parallel, std::abs(j_serial - j_parallel));

  std::vector<std::vector<double>> g_serial, g_parallel;
  const double tg_serial =
      best_of(reps, [&] { g_serial = serial::dapo_gradient(batch, advantages, cfg); });
  const double tg_parallel =
      best_of(reps, [&] { g_parallel = dapo_gradient(batch, advantages, cfg); });
  double max_delta = 0.0;
  for (std::size_t i = 0; i < g_serial.size(); ++i) {
    for (std::size_t t = 0; t < g_serial[i].size(); ++t) {
      max_delta = std::max(max_delta, std::abs(g_serial[i][t] - g_parallel[i][t]));
    }
  }
  report("dapo_gradient", tg_serial, tg_parallel, max_delta);
}

void bench_reward(bool quick) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> n_golds(2, 4);
  std::uniform_int_distribution<int> n_words(2, 6);

  const int n_examples = quick ? 500 : 4000;
  std::vector<GoldExample> examples(n_examples);
  std::vector<RewardItem> items;
  for (int i = 0; i < n_examples; ++i) {
    GoldExample& ex = examples[i];
    ex.id = "bench-" + std::to_string(i);
    ex.task = TaskKind::Qa;
    ex.question = "bench question";
    const int golds = n_golds(rng);
    std::vector<InterpretationAnswerPair> pairs;
    for (int g = 0; g < golds; ++g) {
      const std::string answer = random_words(rng, n_words(rng));
      ex.gold_answers.push_back(GoldAnswer{{answer, random_words(rng, n_words(rng))}});
      pairs.push_back(InterpretationAnswerPair{g + 1, "reading " + std::to_string(g + 1),
                                               g % 2 == 0 ? answer : random_words(rng, 3)});
    }
    ex.ambiguous = ex.gold_answers.size() > 1;
    items.push_back(RewardItem{&ex, "thinking\n" + render_template(pairs, TaskKind::Qa)});
  }

  const TextOverlapOracle oracle;
  const int reps = quick ? 3 : 5;
  std::vector<RewardOutcome> serial_out, parallel_out;
  const double t_serial =
      best_of(reps, [&] { serial_out = serial::compute_reward_batch(items, oracle); });
  const double t_parallel =
      best_of(reps, [&] { parallel_out = compute_reward_batch(items, oracle); });
  double max_delta = 0.0;
  for (std::size_t i = 0; i < serial_out.size(); ++i) {
    max_delta = std::max(max_delta, std::abs(serial_out[i].reward - parallel_out[i].reward));
  }
  report("compute_reward_batch (QA)", t_serial, t_parallel, max_delta);
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %13s %13s %8s %12s\n", "kernel", "serial", "openmp", "speedup", "max |d|");
  bench_dapo(quick);
  bench_reward(quick);
  return 0;
}
