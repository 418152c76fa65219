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

#ifndef AMBIGEVAL_SQL_EXEC_HPP_
#define AMBIGEVAL_SQL_EXEC_HPP_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

namespace ambigeval {

// A result cell: null, integer, float, text, or blob.
using Blob = std::vector<unsigned char>;
using Cell = std::variant<std::monostate, std::int64_t, double, std::string, Blob>;
using Row = std::vector<Cell>;

// Captured execution result. Rows are compared as a multiset: row order is
// ignored, column order within a row is significant, column names are not
// recorded at all.
struct ResultTable {
  std::size_t column_count = 0;
  std::vector<Row> rows;
};

struct ExecutionError {
  std::string message;
};

using ExecResult = std::variant<ResultTable, ExecutionError>;

inline bool exec_failed(const ExecResult& r) {
  return std::holds_alternative<ExecutionError>(r);
}

struct ExecOptions {
  // Runaway queries are interrupted and reported as ExecutionError.
  std::chrono::milliseconds timeout{5000};
};

// Runs the first SQL statement of `query` against the database file, using a
// fresh read-only session. Trailing statements are ignored. Any failure
// (open, syntax, schema, interrupt) is an ExecutionError value, never an
// exception; non-executable model queries must stay scorable.
ExecResult execute_sql(const std::string& query, const std::string& db_path,
                       const ExecOptions& options = {});

// Canonical result equality: equal column counts, equal row multisets after
// lexicographic row sorting; numeric cells compare as doubles with absolute
// tolerance 1e-6 when either side is a float, nulls equal only nulls, text
// and blob compare byte-exact.
bool table_equal(const ResultTable& a, const ResultTable& b);

// Memo of execution results keyed on (db_path, query), shared across one
// evaluation batch. Safe for concurrent use; a racing miss may execute the
// query twice but both runs see identical read-only data.
class ExecutionCache {
 public:
  std::shared_ptr<const ExecResult> get_or_execute(const std::string& query,
                                                   const std::string& db_path,
                                                   const ExecOptions& options = {});

  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, std::shared_ptr<const ExecResult>> memo_;
};

// Binary execution-match similarity: 1 iff both queries produce equal result
// tables. A failing predicted query scores 0; a failing gold query throws
// GoldExecutionFault (the benchmark data is corrupt).
int sim_exec(const std::string& pred_query, const std::string& gold_query,
             const std::string& db_path, ExecutionCache* cache = nullptr,
             const ExecOptions& options = {});

}  // namespace ambigeval

#endif  // AMBIGEVAL_SQL_EXEC_HPP_
