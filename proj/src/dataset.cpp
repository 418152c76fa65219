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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

#include "ambigeval/errors.hpp"
#include "ambigeval/text_similarity.hpp"

namespace ambigeval {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(TaskKind task) {
  return task == TaskKind::Sql ? "sql" : "qa";
}

TaskKind task_from_string(std::string_view s) {
  if (s == "qa") return TaskKind::Qa;
  if (s == "sql") return TaskKind::Sql;
  throw SchemaViolation("unknown task kind '" + std::string(s) + "'");
}

namespace {

std::string normalized_key(const std::string& text) {
  std::string key;
  for (const auto& tok : normalize_text(text)) {
    if (!key.empty()) key.push_back(' ');
    key.append(tok);
  }
  return key;
}

GoldAnswer parse_gold_answer(const json& node, std::size_t line) {
  GoldAnswer gold;
  if (node.is_string()) {
    gold.variants.push_back(node.get<std::string>());
  } else if (node.is_array()) {
    for (const auto& variant : node) {
      if (!variant.is_string()) {
        throw SchemaViolation("gold answer variants must be strings", line);
      }
      gold.variants.push_back(variant.get<std::string>());
    }
  } else {
    throw SchemaViolation("gold answer must be a string or array of strings", line);
  }
  if (gold.variants.empty()) {
    throw SchemaViolation("gold answer has no variants", line);
  }
  std::set<std::string> seen;
  for (const auto& variant : gold.variants) {
    if (!seen.insert(normalized_key(variant)).second) {
      throw SchemaViolation("gold answer variants are not distinct after normalization", line);
    }
  }
  return gold;
}

void validate_qa_distinctness(const GoldExample& ex, std::size_t line) {
  std::set<std::string> all;
  for (const auto& gold : ex.gold_answers) {
    for (const auto& variant : gold.variants) {
      if (!all.insert(normalized_key(variant)).second) {
        throw SchemaViolation("gold answers share the normalized variant '" + variant + "'",
                              line);
      }
    }
  }
}

void validate_sql_golds(const GoldExample& ex, std::size_t line, const LoadOptions& options) {
  std::vector<ResultTable> tables;
  for (const auto& gold : ex.gold_answers) {
    ExecResult result = execute_sql(gold.variants.front(), ex.db_path, options.exec);
    if (const auto* err = std::get_if<ExecutionError>(&result)) {
      throw GoldExecutionFault("line " + std::to_string(line) + ": gold query '" +
                               gold.variants.front() + "' failed: " + err->message);
    }
    tables.push_back(std::move(std::get<ResultTable>(result)));
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    for (std::size_t j = i + 1; j < tables.size(); ++j) {
      if (table_equal(tables[i], tables[j])) {
        throw SchemaViolation("gold queries " + std::to_string(i) + " and " + std::to_string(j) +
                                  " produce identical execution results",
                              line);
      }
    }
  }
}

GoldExample parse_record(const json& record, std::size_t line, const std::string& dataset_dir,
                         const LoadOptions& options) {
  if (!record.is_object()) {
    throw SchemaViolation("record is not a JSON object", line);
  }
  GoldExample ex;
  if (!record.contains("id") || !record["id"].is_string() ||
      record["id"].get<std::string>().empty()) {
    throw SchemaViolation("missing or empty 'id'", line);
  }
  ex.id = record["id"].get<std::string>();

  if (!record.contains("task") || !record["task"].is_string()) {
    throw SchemaViolation("missing 'task'", line);
  }
  try {
    ex.task = task_from_string(record["task"].get<std::string>());
  } catch (const SchemaViolation& e) {
    throw SchemaViolation(e.what(), line);
  }

  ex.context = record.value("context", std::string{});
  if (!record.contains("question") || !record["question"].is_string()) {
    throw SchemaViolation("missing 'question'", line);
  }
  ex.question = record["question"].get<std::string>();

  if (!record.contains("gold_answers") || !record["gold_answers"].is_array() ||
      record["gold_answers"].empty()) {
    throw SchemaViolation("missing or empty 'gold_answers'", line);
  }
  for (const auto& node : record["gold_answers"]) {
    ex.gold_answers.push_back(parse_gold_answer(node, line));
  }

  ex.ambiguous = ex.gold_answers.size() > 1;
  if (record.contains("ambiguous")) {
    if (!record["ambiguous"].is_boolean()) {
      throw SchemaViolation("'ambiguous' must be a boolean", line);
    }
    if (record["ambiguous"].get<bool>() != ex.ambiguous) {
      throw SchemaViolation("'ambiguous' flag disagrees with the gold answer count", line);
    }
  }

  if (ex.task == TaskKind::Sql) {
    if (!record.contains("db_path") || !record["db_path"].is_string() ||
        record["db_path"].get<std::string>().empty()) {
      throw SchemaViolation("SQL example without 'db_path'", line);
    }
    for (const auto& gold : ex.gold_answers) {
      if (gold.variants.size() != 1) {
        throw SchemaViolation("SQL gold answers must have exactly one query variant", line);
      }
    }
    const fs::path raw = record["db_path"].get<std::string>();
    const fs::path root = options.data_root.empty() ? fs::path(dataset_dir)
                                                    : fs::path(options.data_root);
    ex.db_path = raw.is_absolute() ? raw.string() : (root / raw).string();
    if (options.verify_sql) {
      validate_sql_golds(ex, line, options);
    }
  } else {
    if (record.contains("db_path") && record["db_path"].is_string() &&
        !record["db_path"].get<std::string>().empty()) {
      throw SchemaViolation("QA example with a 'db_path'", line);
    }
    validate_qa_distinctness(ex, line);
  }
  return ex;
}

}  // namespace

std::vector<GoldExample> load_dataset(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw SchemaViolation("cannot open dataset file '" + path + "'");
  }
  const std::string dataset_dir = fs::path(path).parent_path().string();

  std::vector<GoldExample> examples;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaViolation(std::string("invalid JSON: ") + e.what(), line_no);
    }
    GoldExample ex = parse_record(record, line_no, dataset_dir, options);
    if (!ids.insert(ex.id).second) {
      throw SchemaViolation("duplicate example id '" + ex.id + "'", line_no);
    }
    examples.push_back(std::move(ex));
  }
  return examples;
}

void write_dataset(const std::string& path, std::span<const GoldExample> examples) {
  std::ofstream out(path);
  if (!out) {
    throw SchemaViolation("cannot open '" + path + "' for writing");
  }
  for (const auto& ex : examples) {
    json record;
    record["id"] = ex.id;
    record["task"] = std::string(to_string(ex.task));
    record["context"] = ex.context;
    record["question"] = ex.question;
    json golds = json::array();
    for (const auto& gold : ex.gold_answers) golds.push_back(gold.variants);
    record["gold_answers"] = std::move(golds);
    record["ambiguous"] = ex.ambiguous;
    if (ex.task == TaskKind::Sql) record["db_path"] = ex.db_path;
    out << record.dump() << '\n';
  }
}

std::size_t BalancedStream::Cycler::next(std::mt19937_64& rng) {
  if (indices_.empty()) {
    throw EmptyClass("balanced stream: drawing from an empty class");
  }
  if (!shuffled_ || pos_ == indices_.size()) {
    // Hand-rolled Fisher-Yates: std::shuffle sequences are not portable
    // across standard libraries.
    for (std::size_t i = indices_.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(indices_[i - 1], indices_[j]);
    }
    pos_ = 0;
    shuffled_ = true;
  }
  return indices_[pos_++];
}

namespace {

std::vector<std::size_t> class_indices(std::span<const GoldExample> examples, bool ambiguous) {
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (examples[i].ambiguous == ambiguous) indices.push_back(i);
  }
  return indices;
}

}  // namespace

BalancedStream::BalancedStream(std::span<const GoldExample> examples, RatioSpec ratio,
                               std::size_t batch_size, std::uint64_t seed)
    : batch_size_(batch_size),
      ambiguous_per_batch_(0),
      ambiguous_(class_indices(examples, true)),
      unambiguous_(class_indices(examples, false)),
      rng_(seed) {
  const unsigned parts = ratio.ambiguous + ratio.unambiguous;
  if (parts == 0 || batch_size == 0) {
    throw std::invalid_argument("balanced stream: ratio and batch size must be positive");
  }
  if ((batch_size * ratio.ambiguous) % parts != 0) {
    throw std::invalid_argument(
        "balanced stream: batch size cannot realize the ratio exactly");
  }
  ambiguous_per_batch_ = batch_size * ratio.ambiguous / parts;

  if (ambiguous_per_batch_ > 0 && ambiguous_.size() == 0) {
    throw EmptyClass("balanced stream: no ambiguous examples");
  }
  if (ambiguous_per_batch_ < batch_size_ && unambiguous_.size() == 0) {
    throw EmptyClass("balanced stream: no unambiguous examples");
  }
}

std::vector<std::size_t> BalancedStream::next_batch() {
  std::vector<std::size_t> batch;
  batch.reserve(batch_size_);
  for (std::size_t k = 0; k < ambiguous_per_batch_; ++k) {
    batch.push_back(ambiguous_.next(rng_));
  }
  for (std::size_t k = ambiguous_per_batch_; k < batch_size_; ++k) {
    batch.push_back(unambiguous_.next(rng_));
  }
  return batch;
}

}  // namespace ambigeval
