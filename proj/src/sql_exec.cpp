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

#include <sqlite3.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "ambigeval/errors.hpp"

namespace ambigeval {

namespace {

constexpr double kFloatTolerance = 1e-6;

struct DbCloser {
  void operator()(sqlite3* db) const {
    if (db != nullptr) sqlite3_close(db);
  }
};
using DbHandle = std::unique_ptr<sqlite3, DbCloser>;

struct StmtCloser {
  void operator()(sqlite3_stmt* stmt) const {
    if (stmt != nullptr) sqlite3_finalize(stmt);
  }
};
using StmtHandle = std::unique_ptr<sqlite3_stmt, StmtCloser>;

struct Deadline {
  std::chrono::steady_clock::time_point at;
};

extern "C" int progress_callback(void* ctx) {
  const auto* deadline = static_cast<const Deadline*>(ctx);
  return std::chrono::steady_clock::now() >= deadline->at ? 1 : 0;
}

Cell read_cell(sqlite3_stmt* stmt, int col) {
  switch (sqlite3_column_type(stmt, col)) {
    case SQLITE_NULL:
      return std::monostate{};
    case SQLITE_INTEGER:
      return static_cast<std::int64_t>(sqlite3_column_int64(stmt, col));
    case SQLITE_FLOAT:
      return sqlite3_column_double(stmt, col);
    case SQLITE_TEXT: {
      const unsigned char* text = sqlite3_column_text(stmt, col);
      const int n = sqlite3_column_bytes(stmt, col);
      return std::string(reinterpret_cast<const char*>(text), static_cast<std::size_t>(n));
    }
    case SQLITE_BLOB:
    default: {
      const auto* data = static_cast<const unsigned char*>(sqlite3_column_blob(stmt, col));
      const int n = sqlite3_column_bytes(stmt, col);
      if (data == nullptr || n <= 0) return Blob{};
      return Blob(data, data + n);
    }
  }
}

// Ordering used only to canonicalize row order before comparison:
// null < numeric < text < blob, numerics ordered by double value.
int cell_rank(const Cell& c) {
  switch (c.index()) {
    case 0:
      return 0;
    case 1:
    case 2:
      return 1;
    case 3:
      return 2;
    default:
      return 3;
  }
}

double cell_number(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::get<double>(c);
}

bool cell_less(const Cell& a, const Cell& b) {
  const int ra = cell_rank(a), rb = cell_rank(b);
  if (ra != rb) return ra < rb;
  switch (ra) {
    case 0:
      return false;
    case 1:
      return cell_number(a) < cell_number(b);
    case 2:
      return std::get<std::string>(a) < std::get<std::string>(b);
    default:
      return std::get<Blob>(a) < std::get<Blob>(b);
  }
}

bool row_less(const Row& a, const Row& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), cell_less);
}

bool cell_equal(const Cell& a, const Cell& b) {
  const bool a_int = std::holds_alternative<std::int64_t>(a);
  const bool b_int = std::holds_alternative<std::int64_t>(b);
  const bool a_num = a_int || std::holds_alternative<double>(a);
  const bool b_num = b_int || std::holds_alternative<double>(b);
  if (a_num && b_num) {
    if (a_int && b_int) return std::get<std::int64_t>(a) == std::get<std::int64_t>(b);
    return std::abs(cell_number(a) - cell_number(b)) <= kFloatTolerance;
  }
  if (a.index() != b.index()) return false;
  switch (a.index()) {
    case 0:
      return true;
    case 3:
      return std::get<std::string>(a) == std::get<std::string>(b);
    default:
      return std::get<Blob>(a) == std::get<Blob>(b);
  }
}

std::vector<Row> sorted_rows(const ResultTable& t) {
  std::vector<Row> rows = t.rows;
  std::sort(rows.begin(), rows.end(), row_less);
  return rows;
}

}  // namespace

ExecResult execute_sql(const std::string& query, const std::string& db_path,
                       const ExecOptions& options) {
  sqlite3* raw = nullptr;
  int rc = sqlite3_open_v2(db_path.c_str(), &raw, SQLITE_OPEN_READONLY, nullptr);
  DbHandle db(raw);
  if (rc != SQLITE_OK) {
    std::string msg = raw != nullptr ? sqlite3_errmsg(raw) : "out of memory";
    return ExecutionError{"cannot open database '" + db_path + "': " + msg};
  }

  Deadline deadline{std::chrono::steady_clock::now() + options.timeout};
  if (options.timeout.count() > 0) {
    sqlite3_progress_handler(db.get(), 1000, progress_callback, &deadline);
  }

  sqlite3_stmt* raw_stmt = nullptr;
  rc = sqlite3_prepare_v2(db.get(), query.c_str(), -1, &raw_stmt, nullptr);
  StmtHandle stmt(raw_stmt);
  if (rc != SQLITE_OK) {
    return ExecutionError{sqlite3_errmsg(db.get())};
  }
  if (!stmt) {
    return ExecutionError{"no SQL statement in query"};
  }

  ResultTable table;
  table.column_count = static_cast<std::size_t>(sqlite3_column_count(stmt.get()));
  while ((rc = sqlite3_step(stmt.get())) == SQLITE_ROW) {
    Row row;
    row.reserve(table.column_count);
    for (std::size_t col = 0; col < table.column_count; ++col) {
      row.push_back(read_cell(stmt.get(), static_cast<int>(col)));
    }
    table.rows.push_back(std::move(row));
  }
  if (rc != SQLITE_DONE) {
    return ExecutionError{sqlite3_errmsg(db.get())};
  }
  return table;
}

bool table_equal(const ResultTable& a, const ResultTable& b) {
  if (a.column_count != b.column_count) return false;
  if (a.rows.size() != b.rows.size()) return false;
  const std::vector<Row> ra = sorted_rows(a);
  const std::vector<Row> rb = sorted_rows(b);
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (ra[i].size() != rb[i].size()) return false;
    for (std::size_t j = 0; j < ra[i].size(); ++j) {
      if (!cell_equal(ra[i][j], rb[i][j])) return false;
    }
  }
  return true;
}

std::shared_ptr<const ExecResult> ExecutionCache::get_or_execute(const std::string& query,
                                                                 const std::string& db_path,
                                                                 const ExecOptions& options) {
  const auto key = std::make_pair(db_path, query);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  auto result = std::make_shared<const ExecResult>(execute_sql(query, db_path, options));
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = memo_.emplace(key, std::move(result));
  return it->second;
}

std::size_t ExecutionCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

int sim_exec(const std::string& pred_query, const std::string& gold_query,
             const std::string& db_path, ExecutionCache* cache, const ExecOptions& options) {
  const auto run = [&](const std::string& q) -> std::shared_ptr<const ExecResult> {
    if (cache != nullptr) return cache->get_or_execute(q, db_path, options);
    return std::make_shared<const ExecResult>(execute_sql(q, db_path, options));
  };

  const auto gold = run(gold_query);
  if (const auto* err = std::get_if<ExecutionError>(gold.get())) {
    throw GoldExecutionFault("gold query failed on '" + db_path + "': " + err->message);
  }
  const auto pred = run(pred_query);
  if (exec_failed(*pred)) return 0;
  return table_equal(std::get<ResultTable>(*pred), std::get<ResultTable>(*gold)) ? 1 : 0;
}

}  // namespace ambigeval
