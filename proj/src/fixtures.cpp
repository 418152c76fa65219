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

#include "ambigeval/fixtures.hpp"

#include <sqlite3.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "ambigeval/dataset.hpp"
#include "ambigeval/errors.hpp"
#include "ambigeval/response_parser.hpp"

namespace ambigeval {

namespace fs = std::filesystem;

namespace {

constexpr const char* kJobsSchema =
    "CREATE TABLE Jobs ("
    " JobID INTEGER PRIMARY KEY,"
    " Min_Years INTEGER,"
    " Pref_Years INTEGER,"
    " Position TEXT,"
    " Description TEXT,"
    " Salary REAL"
    ");";

// The best-paid row must have Min_Years != Pref_Years so the gold readings
// stay pairwise distinct under execution.
constexpr const char* kJobsRows =
    "INSERT INTO Jobs VALUES"
    " (1, 2, 5, 'Engineer', 'Builds the pipeline', 95000.0),"
    " (2, 3, 6, 'Manager', 'Runs the team', 120000.0),"
    " (3, 0, 2, 'Intern', 'Learns the ropes', 30000.0),"
    " (4, 5, 8, 'Architect', 'Owns the design', 110000.0);";

const char* kSchemaContext =
    "CREATE TABLE Jobs (JobID INTEGER PRIMARY KEY, Min_Years INTEGER, Pref_Years INTEGER, "
    "Position TEXT, Description TEXT, Salary REAL);";

void exec_or_throw(sqlite3* db, const char* sql) {
  char* err = nullptr;
  if (sqlite3_exec(db, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string message = err != nullptr ? err : "unknown sqlite error";
    sqlite3_free(err);
    throw Error("fixture database setup failed: " + message);
  }
}

std::string render_sql_completion(const std::vector<std::string>& queries) {
  std::vector<InterpretationAnswerPair> pairs;
  for (std::size_t k = 0; k < queries.size(); ++k) {
    pairs.push_back(InterpretationAnswerPair{
        static_cast<int>(k + 1), "Reading " + std::to_string(k + 1) + " of the question",
        queries[k]});
  }
  return "Considering which columns count as experience.\n" +
         render_template(pairs, TaskKind::Sql);
}

std::string render_qa_completion(const std::vector<std::string>& answers) {
  std::vector<InterpretationAnswerPair> pairs;
  for (std::size_t k = 0; k < answers.size(); ++k) {
    pairs.push_back(InterpretationAnswerPair{
        static_cast<int>(k + 1), "Reading " + std::to_string(k + 1) + " of the question",
        answers[k]});
  }
  return "Weighing who the pronoun could refer to.\n" + render_template(pairs, TaskKind::Qa);
}

}  // namespace

const std::array<std::string, 3>& jobs_gold_queries() {
  static const std::array<std::string, 3> queries = {
      "SELECT Min_Years FROM Jobs ORDER BY Salary DESC LIMIT 1;",
      "SELECT Pref_Years FROM Jobs ORDER BY Salary DESC LIMIT 1;",
      "SELECT Min_Years, Pref_Years FROM Jobs ORDER BY Salary DESC LIMIT 1;",
  };
  return queries;
}

void create_jobs_db(const std::string& path) {
  std::error_code ec;
  fs::remove(path, ec);
  sqlite3* raw = nullptr;
  if (sqlite3_open(path.c_str(), &raw) != SQLITE_OK) {
    std::string msg = raw != nullptr ? sqlite3_errmsg(raw) : "out of memory";
    sqlite3_close(raw);
    throw Error("cannot create fixture database '" + path + "': " + msg);
  }
  try {
    exec_or_throw(raw, kJobsSchema);
    exec_or_throw(raw, kJobsRows);
  } catch (...) {
    sqlite3_close(raw);
    throw;
  }
  sqlite3_close(raw);
}

std::vector<GoldExample> fixture_examples(const std::string& db_path) {
  std::vector<GoldExample> examples;

  GoldExample jobs;
  jobs.id = "sql-jobs-experience";
  jobs.task = TaskKind::Sql;
  jobs.context = kSchemaContext;
  jobs.question = "Show the required experience for the best-paid role.";
  for (const auto& q : jobs_gold_queries()) {
    jobs.gold_answers.push_back(GoldAnswer{{q}});
  }
  jobs.ambiguous = true;
  jobs.db_path = db_path;
  examples.push_back(jobs);

  GoldExample salary;
  salary.id = "sql-jobs-top-salary";
  salary.task = TaskKind::Sql;
  salary.context = kSchemaContext;
  salary.question = "What is the highest salary on offer?";
  salary.gold_answers.push_back(GoldAnswer{{"SELECT MAX(Salary) FROM Jobs;"}});
  salary.ambiguous = false;
  salary.db_path = db_path;
  examples.push_back(salary);

  GoldExample positions;
  positions.id = "sql-jobs-positions";
  positions.task = TaskKind::Sql;
  positions.context = kSchemaContext;
  positions.question = "List every position name.";
  positions.gold_answers.push_back(GoldAnswer{{"SELECT Position FROM Jobs;"}});
  positions.ambiguous = false;
  positions.db_path = db_path;
  examples.push_back(positions);

  GoldExample name;
  name.id = "qa-duff-name";
  name.task = TaskKind::Qa;
  name.context =
      "Hilary Duff married the hockey player Mike Comrie in 2010, three years after they "
      "started dating. Their son, Luca, was born in 2012.\n"
      "- How long were they married before they had a child?\n- 2 years";
  name.question = "What is his name?";
  name.gold_answers.push_back(GoldAnswer{{"Mike Comrie", "His name was Mike Comrie"}});
  name.gold_answers.push_back(GoldAnswer{{"Luca", "His name was Luca"}});
  name.ambiguous = true;
  examples.push_back(name);

  GoldExample born;
  born.id = "qa-duff-born";
  born.task = TaskKind::Qa;
  born.context = "Hilary Duff married Mike Comrie in 2010. Their son, Luca, was born in 2012.";
  born.question = "When was Luca born?";
  born.gold_answers.push_back(GoldAnswer{{"2012", "in 2012"}});
  born.ambiguous = false;
  examples.push_back(born);

  GoldExample married;
  married.id = "qa-duff-married";
  married.task = TaskKind::Qa;
  married.context = "Hilary Duff married Mike Comrie in 2010. Their son, Luca, was born in 2012.";
  married.question = "Who did Hilary Duff marry?";
  married.gold_answers.push_back(GoldAnswer{{"Mike Comrie", "the hockey player Mike Comrie"}});
  married.ambiguous = false;
  examples.push_back(married);

  return examples;
}

FixtureSet write_fixture_set(const std::string& directory) {
  fs::create_directories(directory);
  FixtureSet set;
  set.db_path = (fs::path(directory) / "jobs.sqlite").string();
  set.dataset_path = (fs::path(directory) / "dataset.jsonl").string();
  set.completions_full_path = (fs::path(directory) / "completions_full.jsonl").string();
  set.completions_partial_path = (fs::path(directory) / "completions_partial.jsonl").string();

  create_jobs_db(set.db_path);
  const std::vector<GoldExample> examples = fixture_examples("jobs.sqlite");
  write_dataset(set.dataset_path, examples);

  std::ofstream full(set.completions_full_path);
  std::ofstream partial(set.completions_partial_path);
  if (!full || !partial) {
    throw Error("cannot write fixture completions under '" + directory + "'");
  }
  for (const auto& ex : examples) {
    std::vector<std::string> all_answers;
    for (const auto& gold : ex.gold_answers) all_answers.push_back(gold.variants.front());
    const std::vector<std::string> first_answer{all_answers.front()};

    const auto render = ex.task == TaskKind::Sql ? render_sql_completion : render_qa_completion;
    nlohmann::json full_record{{"example_id", ex.id}, {"completion_text", render(all_answers)}};
    nlohmann::json partial_record{{"example_id", ex.id},
                                  {"completion_text", render(first_answer)}};
    full << full_record.dump() << '\n';
    partial << partial_record.dump() << '\n';
  }
  return set;
}

}  // namespace ambigeval
