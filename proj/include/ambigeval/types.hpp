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

#ifndef AMBIGEVAL_TYPES_HPP_
#define AMBIGEVAL_TYPES_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace ambigeval {

enum class TaskKind { Qa, Sql };

std::string_view to_string(TaskKind task);
TaskKind task_from_string(std::string_view s);  // throws SchemaViolation

// One acceptable answer. For QA this is a set of paraphrases of a single
// interpretation; predictions are scored against the best variant. For SQL
// there is exactly one variant: the gold query string.
struct GoldAnswer {
  std::vector<std::string> variants;

  bool operator==(const GoldAnswer&) const = default;
};

// One benchmark instance.
struct GoldExample {
  std::string id;
  TaskKind task = TaskKind::Qa;
  std::string context;
  std::string question;
  std::vector<GoldAnswer> gold_answers;
  bool ambiguous = false;  // always equals gold_answers.size() > 1
  std::string db_path;     // resolved path; required when task == Sql

  bool operator==(const GoldExample&) const = default;
};

}  // namespace ambigeval

#endif  // AMBIGEVAL_TYPES_HPP_
