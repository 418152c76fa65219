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

#include "ambigeval/sql_exec.hpp"

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "test_util.hpp"

#include "ambigeval/errors.hpp"
#include "ambigeval/fixtures.hpp"

using namespace ambigeval;

namespace {

const std::string& jobs_db() {
  static const std::string path = [] {
    const std::string p = testutil::scratch_dir("sql") + "/jobs.sqlite";
    create_jobs_db(p);
    return p;
  }();
  return path;
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

const ResultTable& table_of(const ExecResult& r) { return std::get<ResultTable>(r); }

}  // namespace

TEST_CASE("SELECT 1 produces a single cell") {
  const ExecResult r = execute_sql("SELECT 1", jobs_db());
  REQUIRE(!exec_failed(r));
  const ResultTable& t = table_of(r);
  CHECK(t.column_count == 1);
  REQUIRE(t.rows.size() == 1);
  CHECK(std::get<std::int64_t>(t.rows[0][0]) == 1);
}

TEST_CASE("schema violations and syntax errors are values, not exceptions") {
  CHECK(exec_failed(execute_sql("SELECT NoSuchCol FROM Jobs", jobs_db())));
  CHECK(exec_failed(execute_sql("SELEC wrong", jobs_db())));
  CHECK(exec_failed(execute_sql("", jobs_db())));
  CHECK(exec_failed(execute_sql("SELECT 1", jobs_db() + ".does-not-exist")));
}

TEST_CASE("the three gold readings produce three distinct tables") {
  const auto& queries = jobs_gold_queries();
  std::vector<ResultTable> tables;
  for (const auto& q : queries) {
    const ExecResult r = execute_sql(q, jobs_db());
    REQUIRE(!exec_failed(r));
    tables.push_back(table_of(r));
  }
  CHECK(!table_equal(tables[0], tables[1]));
  CHECK(!table_equal(tables[0], tables[2]));
  CHECK(!table_equal(tables[1], tables[2]));
}

TEST_CASE("row order does not affect equality") {
  const ExecResult by_salary =
      execute_sql("SELECT Position, Min_Years FROM Jobs ORDER BY Salary", jobs_db());
  const ExecResult by_name =
      execute_sql("SELECT Position, Min_Years FROM Jobs ORDER BY Position DESC", jobs_db());
  REQUIRE(!exec_failed(by_salary));
  REQUIRE(!exec_failed(by_name));
  CHECK(table_equal(table_of(by_salary), table_of(by_name)));
}

TEST_CASE("column order within a row is significant") {
  const ExecResult ab = execute_sql("SELECT Min_Years, Pref_Years FROM Jobs", jobs_db());
  const ExecResult ba = execute_sql("SELECT Pref_Years, Min_Years FROM Jobs", jobs_db());
  REQUIRE(!exec_failed(ab));
  REQUIRE(!exec_failed(ba));
  CHECK(!table_equal(table_of(ab), table_of(ba)));
}

TEST_CASE("numeric cells compare with tolerance; ints match floats") {
  CHECK(table_equal(table_of(execute_sql("SELECT 1", jobs_db())),
                    table_of(execute_sql("SELECT 1.0", jobs_db()))));
  CHECK(table_equal(table_of(execute_sql("SELECT 0.5", jobs_db())),
                    table_of(execute_sql("SELECT 0.5000000001", jobs_db()))));
  CHECK(!table_equal(table_of(execute_sql("SELECT 0.5", jobs_db())),
                     table_of(execute_sql("SELECT 0.51", jobs_db()))));
}

TEST_CASE("nulls equal only nulls; duplicates count as a multiset") {
  CHECK(table_equal(table_of(execute_sql("SELECT NULL", jobs_db())),
                    table_of(execute_sql("SELECT NULL", jobs_db()))));
  CHECK(!table_equal(table_of(execute_sql("SELECT NULL", jobs_db())),
                     table_of(execute_sql("SELECT 0", jobs_db()))));
  CHECK(!table_equal(table_of(execute_sql("SELECT 1 UNION ALL SELECT 1", jobs_db())),
                     table_of(execute_sql("SELECT 1", jobs_db()))));
}

TEST_CASE("execution is read-only: file bytes never change") {
  const std::string before = file_bytes(jobs_db());
  CHECK(exec_failed(execute_sql("INSERT INTO Jobs VALUES (9, 1, 1, 'X', 'Y', 1.0)", jobs_db())));
  CHECK(exec_failed(execute_sql("DROP TABLE Jobs", jobs_db())));
  CHECK(!exec_failed(execute_sql("SELECT * FROM Jobs", jobs_db())));
  CHECK(file_bytes(jobs_db()) == before);
}

TEST_CASE("runaway queries hit the timeout") {
  ExecOptions options;
  options.timeout = std::chrono::milliseconds(100);
  const ExecResult r = execute_sql(
      "WITH RECURSIVE cnt(x) AS (SELECT 1 UNION ALL SELECT x+1 FROM cnt) "
      "SELECT count(*) FROM cnt;",
      jobs_db(), options);
  CHECK(exec_failed(r));
}

TEST_CASE("sim_exec basics on the fixture") {
  const auto& queries = jobs_gold_queries();
  CHECK(sim_exec(queries[0], queries[0], jobs_db()) == 1);
  CHECK(sim_exec(queries[0], queries[1], jobs_db()) == 0);
  CHECK(sim_exec("SELECT garbage FROM nowhere", queries[0], jobs_db()) == 0);
  CHECK_THROWS_AS(sim_exec(queries[0], "SELECT broken FROM nowhere", jobs_db()),
                  GoldExecutionFault);
}

TEST_CASE("sim_exec is symmetric and tolerant of ORDER BY differences") {
  const std::string a = "SELECT Position FROM Jobs ORDER BY Salary";
  const std::string b = "SELECT Position FROM Jobs ORDER BY JobID";
  CHECK(sim_exec(a, b, jobs_db()) == 1);
  CHECK(sim_exec(b, a, jobs_db()) == 1);
  const std::string c = "SELECT Position FROM Jobs WHERE Min_Years > 2";
  CHECK(sim_exec(c, a, jobs_db()) == sim_exec(a, c, jobs_db()));
}

TEST_CASE("the execution cache memoizes per (db, query)") {
  ExecutionCache cache;
  CHECK(cache.size() == 0);
  CHECK(sim_exec("SELECT 1", "SELECT 1", jobs_db(), &cache) == 1);
  CHECK(cache.size() == 1);
  CHECK(sim_exec("SELECT 1", "SELECT 2", jobs_db(), &cache) == 0);
  CHECK(cache.size() == 2);
  const auto first = cache.get_or_execute("SELECT 1", jobs_db());
  const auto second = cache.get_or_execute("SELECT 1", jobs_db());
  CHECK(first.get() == second.get());
}
