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

#include "ambigeval/dataset.hpp"

#include <fstream>
#include <map>
#include <set>

#include "doctest.h"
#include "test_util.hpp"

#include "ambigeval/errors.hpp"
#include "ambigeval/fixtures.hpp"

using namespace ambigeval;

namespace {

const std::string& scratch() {
  static const std::string dir = testutil::scratch_dir("data");
  return dir;
}

std::string write_lines(const std::string& name, const std::vector<std::string>& lines) {
  const std::string path = scratch() + "/" + name;
  std::ofstream out(path);
  for (const auto& line : lines) out << line << '\n';
  return path;
}

std::vector<GoldExample> synthetic_examples(std::size_t ambiguous, std::size_t unambiguous) {
  std::vector<GoldExample> examples;
  for (std::size_t i = 0; i < ambiguous; ++i) {
    GoldExample ex;
    ex.id = "amb-" + std::to_string(i);
    ex.task = TaskKind::Qa;
    ex.question = "q";
    ex.gold_answers = {GoldAnswer{{"first " + std::to_string(i)}},
                       GoldAnswer{{"second " + std::to_string(i)}}};
    ex.ambiguous = true;
    examples.push_back(std::move(ex));
  }
  for (std::size_t i = 0; i < unambiguous; ++i) {
    GoldExample ex;
    ex.id = "una-" + std::to_string(i);
    ex.task = TaskKind::Qa;
    ex.question = "q";
    ex.gold_answers = {GoldAnswer{{"only " + std::to_string(i)}}};
    ex.ambiguous = false;
    examples.push_back(std::move(ex));
  }
  return examples;
}

}  // namespace

TEST_CASE("write then load reproduces the fixture examples") {
  const std::string db = scratch() + "/jobs.sqlite";
  create_jobs_db(db);
  const std::vector<GoldExample> original = fixture_examples(db);

  const std::string path = scratch() + "/roundtrip.jsonl";
  write_dataset(path, original);
  const std::vector<GoldExample> loaded = load_dataset(path);
  CHECK(loaded == original);
}

TEST_CASE("split counts survive a round trip") {
  const auto examples = synthetic_examples(131, 309);
  const std::string path = scratch() + "/counts.jsonl";
  write_dataset(path, examples);
  const auto loaded = load_dataset(path);
  std::size_t ambiguous = 0;
  for (const auto& ex : loaded) ambiguous += ex.ambiguous ? 1 : 0;
  CHECK(loaded.size() == 440);
  CHECK(ambiguous == 131);
  CHECK(loaded.size() - ambiguous == 309);
}

TEST_CASE("schema violations carry line numbers") {
  const std::string mismatch = write_lines("mismatch.jsonl", {
      R"({"id":"a","task":"qa","question":"q","gold_answers":[["x"]],"ambiguous":true})"});
  CHECK_THROWS_AS(load_dataset(mismatch), SchemaViolation);
  try {
    load_dataset(mismatch);
  } catch (const SchemaViolation& e) {
    CHECK(e.line() == 1);
  }

  CHECK_THROWS_AS(load_dataset(write_lines("nogold.jsonl",
      {R"({"id":"a","task":"qa","question":"q","gold_answers":[]})"})), SchemaViolation);
  CHECK_THROWS_AS(load_dataset(write_lines("badjson.jsonl", {"{not json"})), SchemaViolation);
  CHECK_THROWS_AS(load_dataset(write_lines("nodb.jsonl",
      {R"({"id":"a","task":"sql","question":"q","gold_answers":[["SELECT 1"]]})"})),
      SchemaViolation);
  CHECK_THROWS_AS(load_dataset(write_lines("dupid.jsonl",
      {R"({"id":"a","task":"qa","question":"q","gold_answers":[["x"]]})",
       R"({"id":"a","task":"qa","question":"q","gold_answers":[["y"]]})"})),
      SchemaViolation);
  CHECK_THROWS_AS(load_dataset(write_lines("dupgold.jsonl",
      {R"({"id":"a","task":"qa","question":"q","gold_answers":[["Luca"],["luca!"]]})"})),
      SchemaViolation);
}

TEST_CASE("SQL golds are executed and checked for distinct results at load") {
  const std::string db = scratch() + "/jobs2.sqlite";
  create_jobs_db(db);

  const std::string broken = write_lines("brokengold.jsonl",
      {R"({"id":"s","task":"sql","question":"q","gold_answers":[["SELECT missing FROM nowhere"]],"db_path":")" +
       db + R"("})"});
  CHECK_THROWS_AS(load_dataset(broken), GoldExecutionFault);

  const std::string same = write_lines("samegold.jsonl",
      {R"({"id":"s","task":"sql","question":"q","gold_answers":[["SELECT Position FROM Jobs ORDER BY Salary"],["SELECT Position FROM Jobs ORDER BY JobID"]],"db_path":")" +
       db + R"("})"});
  CHECK_THROWS_AS(load_dataset(same), SchemaViolation);

  LoadOptions skip;
  skip.verify_sql = false;
  CHECK(load_dataset(same, skip).size() == 1);
}

TEST_CASE("bare-string golds are accepted as one-variant answers") {
  const std::string path = write_lines("shorthand.jsonl",
      {R"({"id":"a","task":"qa","question":"q","gold_answers":["plain text"]})"});
  const auto loaded = load_dataset(path);
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].gold_answers[0].variants == std::vector<std::string>{"plain text"});
  CHECK(!loaded[0].ambiguous);
}

TEST_CASE("balanced batches have the exact 3:1 composition") {
  const auto examples = synthetic_examples(9, 5);
  BalancedStream stream(examples, RatioSpec{3, 1}, 4, 7);
  for (int b = 0; b < 50; ++b) {
    const auto batch = stream.next_batch();
    REQUIRE(batch.size() == 4);
    int ambiguous = 0;
    for (const std::size_t idx : batch) ambiguous += examples[idx].ambiguous ? 1 : 0;
    CHECK(ambiguous == 3);
  }
}

TEST_CASE("the same seed reproduces the same stream") {
  const auto examples = synthetic_examples(7, 3);
  BalancedStream a(examples, RatioSpec{3, 1}, 4, 99);
  BalancedStream b(examples, RatioSpec{3, 1}, 4, 99);
  for (int i = 0; i < 40; ++i) CHECK(a.next_batch() == b.next_batch());

  BalancedStream c(examples, RatioSpec{3, 1}, 4, 100);
  bool any_difference = false;
  BalancedStream a2(examples, RatioSpec{3, 1}, 4, 99);
  for (int i = 0; i < 40; ++i) any_difference = any_difference || a2.next_batch() != c.next_batch();
  CHECK(any_difference);
}

TEST_CASE("no class repeats an example within one reshuffle cycle") {
  const auto examples = synthetic_examples(10, 6);
  BalancedStream stream(examples, RatioSpec{3, 1}, 4, 3);

  std::vector<std::size_t> ambiguous_draws, unambiguous_draws;
  for (int b = 0; b < 60; ++b) {
    for (const std::size_t idx : stream.next_batch()) {
      (examples[idx].ambiguous ? ambiguous_draws : unambiguous_draws).push_back(idx);
    }
  }
  const auto check_cycles = [](const std::vector<std::size_t>& draws, std::size_t class_size) {
    for (std::size_t start = 0; start + class_size <= draws.size(); start += class_size) {
      std::set<std::size_t> cycle(draws.begin() + start, draws.begin() + start + class_size);
      CHECK(cycle.size() == class_size);
    }
  };
  check_cycles(ambiguous_draws, 10);
  check_cycles(unambiguous_draws, 6);
}

TEST_CASE("every drawn example exists in the source set") {
  const auto examples = synthetic_examples(4, 4);
  BalancedStream stream(examples, RatioSpec{1, 1}, 4, 5);
  for (int b = 0; b < 20; ++b) {
    for (const std::size_t idx : stream.next_batch()) CHECK(idx < examples.size());
  }
}

TEST_CASE("degenerate class splits are rejected") {
  const auto only_ambiguous = synthetic_examples(5, 0);
  CHECK_THROWS_AS(BalancedStream(only_ambiguous, RatioSpec{3, 1}, 4, 0), EmptyClass);
  const auto only_unambiguous = synthetic_examples(0, 5);
  CHECK_THROWS_AS(BalancedStream(only_unambiguous, RatioSpec{3, 1}, 4, 0), EmptyClass);
  const auto both = synthetic_examples(3, 3);
  CHECK_THROWS_AS(BalancedStream(both, RatioSpec{3, 1}, 5, 0), std::invalid_argument);
}

TEST_CASE("10k draws at 3:1 give an ambiguous fraction of exactly 0.75") {
  const auto examples = synthetic_examples(12, 5);
  BalancedStream stream(examples, RatioSpec{3, 1}, 4, 123);
  std::size_t draws = 0, ambiguous = 0;
  while (draws < 10000) {
    for (const std::size_t idx : stream.next_batch()) {
      ++draws;
      ambiguous += examples[idx].ambiguous ? 1 : 0;
    }
  }
  CHECK(draws == 10000);
  CHECK(ambiguous == 7500);
}
