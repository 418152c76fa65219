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

#ifndef AMBIGEVAL_RESPONSE_PARSER_HPP_
#define AMBIGEVAL_RESPONSE_PARSER_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ambigeval/types.hpp"

namespace ambigeval {

// Completions carry free-form reasoning followed by a delimited answer block:
//
//   ...reasoning...
//   <answer>
//   **Interpretation 1:** <interpretation text>
//   <answer text, or a fenced ```sql block for SQL tasks>
//
//   **Interpretation 2:** ...
//   </answer>
//
// The answers-only variant uses "Answer k:" markers instead. Parsers are
// total: any input yields either a parsed structure or a declared status,
// never an exception.

enum class ParseStatus {
  Ok,
  NoAnswerBlock,  // <answer> delimiter absent
  NoPairs,        // block present but no markers inside
};

enum class Violation {
  PairCountExceeded,     // more than five pairs; extras are kept
  EmptyAnswer,           // marker with blank answer text
  EmptyInterpretation,   // marker line with no interpretation text
  MissingSqlBlock,       // SQL task pair without a fenced query
  MultipleSqlBlocks,     // SQL task pair with several fenced blocks; first wins
  NonContiguousIndices,  // indices as written are not 1..k
};

std::string_view to_string(ParseStatus status);
std::string_view to_string(Violation v);

struct InterpretationAnswerPair {
  int index = 0;               // as written in the source text
  std::string interpretation;  // text on the marker line, trimmed
  std::string answer;          // QA: trimmed free text; SQL: fenced query body

  bool operator==(const InterpretationAnswerPair&) const = default;
};

struct StructuredResponse {
  ParseStatus status = ParseStatus::Ok;
  std::string reasoning_text;  // everything before the answer block, verbatim
  std::vector<InterpretationAnswerPair> pairs;
  std::vector<Violation> violations;

  bool ok() const { return status == ParseStatus::Ok; }
};

struct AnswerListResponse {
  ParseStatus status = ParseStatus::Ok;
  std::string reasoning_text;
  std::vector<std::string> answers;
  std::vector<Violation> violations;

  bool ok() const { return status == ParseStatus::Ok; }
};

StructuredResponse parse_interpretation_answer(std::string_view completion,
                                               TaskKind task);

AnswerListResponse parse_answers_only(std::string_view completion,
                                      TaskKind task);

// Inverse of parse_interpretation_answer for well-formed pair lists: emits
// the answer-block syntax above, using each pair's own index. Throws
// std::invalid_argument on an empty list (EmptyPairs).
std::string render_template(const std::vector<InterpretationAnswerPair>& pairs,
                            TaskKind task);

// Split out the answer block: (prefix before "<answer>", block body). The
// body runs to "</answer>" or, for truncated completions, to end of input.
// nullopt when no "<answer>" delimiter exists.
struct AnswerBlock {
  std::string_view prefix;
  std::string_view body;
};
std::optional<AnswerBlock> find_answer_block(std::string_view completion);

}  // namespace ambigeval

#endif  // AMBIGEVAL_RESPONSE_PARSER_HPP_
