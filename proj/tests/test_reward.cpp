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

#include <random>

#include "doctest.h"
#include "test_util.hpp"

#include "ambigeval/errors.hpp"
#include "ambigeval/fixtures.hpp"

using namespace ambigeval;

namespace {

const std::string& jobs_db() {
  static const std::string path = [] {
    const std::string p = testutil::scratch_dir("reward") + "/jobs.sqlite";
    create_jobs_db(p);
    return p;
  }();
  return path;
}

GoldExample qa_example(std::vector<GoldAnswer> golds) {
  GoldExample ex;
  ex.id = "qa-test";
  ex.task = TaskKind::Qa;
  ex.question = "what is his name?";
  ex.gold_answers = std::move(golds);
  ex.ambiguous = ex.gold_answers.size() > 1;
  return ex;
}

std::string completion_for(const std::vector<std::string>& answers, TaskKind task) {
  std::vector<InterpretationAnswerPair> pairs;
  for (std::size_t k = 0; k < answers.size(); ++k) {
    pairs.push_back(InterpretationAnswerPair{static_cast<int>(k + 1),
                                             "reading " + std::to_string(k + 1), answers[k]});
  }
  return "thinking it over\n" + render_template(pairs, task);
}

}  // namespace

TEST_CASE("perfect coverage of two golds scores recall 1") {
  const auto ex = qa_example({GoldAnswer{{"Mike Comrie"}}, GoldAnswer{{"Luca"}}});
  const TextOverlapOracle oracle;
  const auto outcome =
      compute_reward(completion_for({"Mike Comrie", "Luca"}, TaskKind::Qa), ex, oracle);
  CHECK(outcome.mode == RewardMode::Recall);
  CHECK(outcome.reward == 1.0);
  CHECK(outcome.matched.size() == 2);
  CHECK(outcome.pred_count == 2);
  CHECK(outcome.gold_count == 2);
}

TEST_CASE("covering one of two golds scores recall 0.5") {
  const auto ex = qa_example({GoldAnswer{{"Mike Comrie"}}, GoldAnswer{{"Luca"}}});
  const TextOverlapOracle oracle;
  const auto outcome = compute_reward(completion_for({"Luca"}, TaskKind::Qa), ex, oracle);
  CHECK(outcome.mode == RewardMode::Recall);
  CHECK(outcome.reward == 0.5);
}

TEST_CASE("precision divides by the prediction count") {
  const auto ex = qa_example({GoldAnswer{{"Luca"}}});
  const TextOverlapOracle oracle;
  const auto exact = compute_reward(completion_for({"Luca"}, TaskKind::Qa), ex, oracle);
  CHECK(exact.mode == RewardMode::Precision);
  CHECK(exact.reward == 1.0);

  const auto padded =
      compute_reward(completion_for({"Luca", "zebra"}, TaskKind::Qa), ex, oracle);
  CHECK(padded.mode == RewardMode::Precision);
  CHECK(padded.reward == 0.5);
}

TEST_CASE("format failures score zero in both modes") {
  const TextOverlapOracle oracle;
  for (const auto& golds :
       {std::vector<GoldAnswer>{GoldAnswer{{"x"}}},
        std::vector<GoldAnswer>{GoldAnswer{{"x"}}, GoldAnswer{{"y"}}}}) {
    const auto ex = qa_example(golds);
    const auto no_block = compute_reward("no answer block here", ex, oracle);
    CHECK(no_block.mode == RewardMode::FormatFailure);
    CHECK(no_block.reward == 0.0);
    CHECK(no_block.pred_count == 0);

    const auto no_pairs = compute_reward("<answer>nothing</answer>", ex, oracle);
    CHECK(no_pairs.mode == RewardMode::FormatFailure);
    CHECK(no_pairs.reward == 0.0);
  }
}

TEST_CASE("SQL fixture: three golds plus a duplicate cannot double-match") {
  GoldExample ex;
  ex.id = "sql-test";
  ex.task = TaskKind::Sql;
  ex.question = "show the required experience for the best-paid role";
  for (const auto& q : jobs_gold_queries()) ex.gold_answers.push_back(GoldAnswer{{q}});
  ex.ambiguous = true;
  ex.db_path = jobs_db();

  ExecutionCache cache;
  const ExecutionOracle oracle(&cache);
  std::vector<std::string> preds(jobs_gold_queries().begin(), jobs_gold_queries().end());
  preds.push_back(jobs_gold_queries()[0]);  // duplicate of the first reading

  const auto outcome = compute_reward(completion_for(preds, TaskKind::Sql), ex, oracle);
  CHECK(outcome.mode == RewardMode::Recall);
  CHECK(outcome.reward == 1.0);
  CHECK(outcome.matched.size() == 3);
  CHECK(outcome.pred_count == 4);
}

TEST_CASE("gold execution faults propagate") {
  GoldExample ex;
  ex.id = "sql-bad-gold";
  ex.task = TaskKind::Sql;
  ex.question = "q";
  ex.gold_answers.push_back(GoldAnswer{{"SELECT nothing FROM nowhere"}});
  ex.db_path = jobs_db();
  const ExecutionOracle oracle;
  CHECK_THROWS_AS(compute_reward(completion_for({"SELECT 1"}, TaskKind::Sql), ex, oracle),
                  GoldExecutionFault);
}

TEST_CASE("mode dispatch depends only on the gold count") {
  const TextOverlapOracle oracle;
  const auto one = qa_example({GoldAnswer{{"only"}}});
  const auto two = qa_example({GoldAnswer{{"first"}}, GoldAnswer{{"second"}}});
  for (const auto& answers : {std::vector<std::string>{"only"},
                              std::vector<std::string>{"first", "second", "third"}}) {
    CHECK(compute_reward(completion_for(answers, TaskKind::Qa), one, oracle).mode ==
          RewardMode::Precision);
    CHECK(compute_reward(completion_for(answers, TaskKind::Qa), two, oracle).mode ==
          RewardMode::Recall);
  }
}

TEST_CASE("recall never decreases when predictions are appended") {
  std::mt19937_64 rng(404);
  const TextOverlapOracle oracle;
  for (int i = 0; i < 200; ++i) {
    std::uniform_int_distribution<int> n_golds(2, 4);
    std::vector<GoldAnswer> golds;
    const int count = n_golds(rng);
    for (int g = 0; g < count; ++g) {
      golds.push_back(GoldAnswer{{testutil::random_words(rng, 1, 5)}});
    }
    const auto ex = qa_example(golds);

    std::vector<std::string> answers{testutil::random_words(rng, 1, 5)};
    double prev = compute_reward(completion_for(answers, TaskKind::Qa), ex, oracle).reward;
    for (int step = 0; step < 3; ++step) {
      answers.push_back(testutil::random_words(rng, 1, 5));
      const double next =
          compute_reward(completion_for(answers, TaskKind::Qa), ex, oracle).reward;
      CHECK(next >= prev - 1e-12);
      prev = next;
    }
  }
}

TEST_CASE("precision strictly drops when a zero-sim prediction is appended") {
  std::mt19937_64 rng(505);
  const TextOverlapOracle oracle;
  for (int i = 0; i < 200; ++i) {
    const std::string gold_text = testutil::random_words(rng, 1, 5);
    const auto ex = qa_example({GoldAnswer{{gold_text}}});

    std::vector<std::string> answers{gold_text};  // positive matched mass
    const double before =
        compute_reward(completion_for(answers, TaskKind::Qa), ex, oracle).reward;
    answers.push_back("zzz0");  // shares no token with the pool
    const double after =
        compute_reward(completion_for(answers, TaskKind::Qa), ex, oracle).reward;
    CHECK(before > 0.0);
    CHECK(after < before);
  }
}

TEST_CASE("rewards stay in [0,1] on fuzzed completions") {
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> len(0, 300);
  std::uniform_int_distribution<int> byte(32, 126);
  const TextOverlapOracle oracle;
  const auto ex = qa_example({GoldAnswer{{"alpha beta"}}, GoldAnswer{{"gamma"}}});
  for (int i = 0; i < 300; ++i) {
    std::string text;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) text.push_back(static_cast<char>(byte(rng)));
    if (i % 3 == 0) text = "<answer>**Interpretation 1:** x\n" + text + "</answer>";
    const auto outcome = compute_reward(text, ex, oracle);
    CHECK(outcome.reward >= 0.0);
    CHECK(outcome.reward <= 1.0);
  }
}

TEST_CASE("batch kernel matches per-item calls bit for bit") {
  std::mt19937_64 rng(711);
  const TextOverlapOracle oracle;
  std::vector<GoldExample> examples;
  for (int i = 0; i < 40; ++i) {
    examples.push_back(qa_example({GoldAnswer{{testutil::random_words(rng, 1, 4)}},
                                   GoldAnswer{{testutil::random_words(rng, 1, 4)}}}));
  }
  std::vector<RewardItem> items;
  for (auto& ex : examples) {
    items.push_back(RewardItem{
        &ex, completion_for({testutil::random_words(rng, 1, 4),
                             testutil::random_words(rng, 1, 4)}, TaskKind::Qa)});
  }
  const auto parallel = compute_reward_batch(items, oracle);
  const auto serial = serial::compute_reward_batch(items, oracle);
  REQUIRE(parallel.size() == items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    CHECK(parallel[i].reward == serial[i].reward);
    CHECK(parallel[i].reward ==
          compute_reward(items[i].completion, *items[i].example, oracle).reward);
  }
}

TEST_CASE("dedupe_by_execution keeps one pair per distinct result") {
  ExecutionCache cache;
  std::vector<InterpretationAnswerPair> pairs;
  pairs.push_back({1, "a", "SELECT Position FROM Jobs ORDER BY Salary"});
  pairs.push_back({2, "b", "SELECT Position FROM Jobs ORDER BY JobID"});  // same rows
  pairs.push_back({3, "c", "SELECT Min_Years FROM Jobs"});
  const auto kept = dedupe_by_execution(pairs, jobs_db(), &cache);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].index == 1);
  CHECK(kept[1].index == 3);
}

TEST_CASE("dedupe keeps the three distinct gold readings and all failures") {
  std::vector<InterpretationAnswerPair> pairs;
  int k = 0;
  for (const auto& q : jobs_gold_queries()) pairs.push_back({++k, "r", q});
  CHECK(dedupe_by_execution(pairs, jobs_db()).size() == 3);

  pairs.push_back({++k, "bad one", "SELECT broken FROM nowhere"});
  pairs.push_back({++k, "bad two", "also not sql"});
  CHECK(dedupe_by_execution(pairs, jobs_db()).size() == 5);

  CHECK(dedupe_by_execution({}, jobs_db()).empty());
}
