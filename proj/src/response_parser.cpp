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

#include "ambigeval/response_parser.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ambigeval {

namespace {

constexpr std::string_view kBlockOpen = "<answer>";
constexpr std::string_view kBlockClose = "</answer>";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && is_space(s[b])) ++b;
  std::size_t e = s.size();
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line =
        nl == std::string_view::npos ? text.substr(start) : text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

bool ci_starts_with(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i]))) {
      return false;
    }
  }
  return true;
}

struct Marker {
  int index = 0;
  std::string_view rest;  // text after the marker, untrimmed tail
};

// Matches one marker line:  [ws] [**] <keyword> <ws> <digits> [ws] ':' [**]
// or the bold-closes-early variant ...<digits> [ws] '**' [ws] ':'. Keyword
// matching is case-insensitive; the keyword must be followed by whitespace
// so e.g. "interpretations" does not match.
std::optional<Marker> match_marker(std::string_view line, std::string_view keyword) {
  std::size_t i = 0;
  while (i < line.size() && is_space(line[i])) ++i;
  if (line.substr(i).starts_with("**")) {
    i += 2;
    while (i < line.size() && is_space(line[i])) ++i;
  }
  if (!ci_starts_with(line.substr(i), keyword)) return std::nullopt;
  i += keyword.size();
  if (i >= line.size() || !is_space(line[i])) return std::nullopt;
  while (i < line.size() && is_space(line[i])) ++i;

  std::size_t digits_start = i;
  long index = 0;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
    index = index * 10 + (line[i] - '0');
    if (index > 1'000'000) return std::nullopt;
    ++i;
  }
  if (i == digits_start) return std::nullopt;
  while (i < line.size() && is_space(line[i])) ++i;

  bool bold_closed = false;
  if (line.substr(i).starts_with("**")) {  // "**Interpretation 1**:"
    i += 2;
    bold_closed = true;
    while (i < line.size() && is_space(line[i])) ++i;
  }
  if (i >= line.size() || line[i] != ':') return std::nullopt;
  ++i;
  if (!bold_closed && line.substr(i).starts_with("**")) i += 2;  // "...1:**"

  return Marker{static_cast<int>(index), line.substr(i)};
}

// A fence line is one whose trimmed content starts with ``` . The opening
// fence may carry an info string (```sql); the closing fence may not.
bool is_fence_line(std::string_view line) { return trim(line).starts_with("```"); }

std::string join_lines(const std::vector<std::string_view>& lines, std::size_t from,
                       std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out.push_back('\n');
    out.append(lines[i]);
  }
  return out;
}

// Extracts the body of the first fenced code block among lines [from, to).
// Returns the number of fenced blocks found.
std::size_t extract_fenced(const std::vector<std::string_view>& lines, std::size_t from,
                           std::size_t to, std::string* body) {
  std::size_t count = 0;
  bool captured = false;
  std::size_t i = from;
  while (i < to) {
    if (!is_fence_line(lines[i])) {
      ++i;
      continue;
    }
    std::size_t body_start = i + 1;
    std::size_t j = body_start;
    while (j < to && !is_fence_line(lines[j])) ++j;
    ++count;
    if (!captured) {
      *body = std::string(trim(join_lines(lines, body_start, j)));
      captured = true;
    }
    i = j < to ? j + 1 : to;  // tolerate a missing closing fence
  }
  return count;
}

void add_violation(std::vector<Violation>* violations, Violation v) {
  if (std::find(violations->begin(), violations->end(), v) == violations->end()) {
    violations->push_back(v);
  }
}

struct RawSegment {
  int index = 0;
  std::string_view marker_rest;
  std::size_t first_line = 0;  // line after the marker line
  std::size_t last_line = 0;   // exclusive
};

std::vector<RawSegment> scan_segments(const std::vector<std::string_view>& lines,
                                      std::string_view keyword) {
  std::vector<RawSegment> segs;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (auto m = match_marker(lines[i], keyword)) {
      if (!segs.empty()) segs.back().last_line = i;
      segs.push_back(RawSegment{m->index, m->rest, i + 1, lines.size()});
    }
  }
  return segs;
}

void check_indices(const std::vector<RawSegment>& segs, std::vector<Violation>* violations) {
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (segs[k].index != static_cast<int>(k) + 1) {
      add_violation(violations, Violation::NonContiguousIndices);
      return;
    }
  }
}

constexpr std::size_t kMaxPairs = 5;

}  // namespace

std::string_view to_string(ParseStatus status) {
  switch (status) {
    case ParseStatus::Ok:
      return "OK";
    case ParseStatus::NoAnswerBlock:
      return "NO_ANSWER_BLOCK";
    case ParseStatus::NoPairs:
      return "NO_PAIRS";
  }
  return "UNKNOWN";
}

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::PairCountExceeded:
      return "PAIR_COUNT_EXCEEDED";
    case Violation::EmptyAnswer:
      return "EMPTY_ANSWER";
    case Violation::EmptyInterpretation:
      return "EMPTY_INTERPRETATION";
    case Violation::MissingSqlBlock:
      return "MISSING_SQL_BLOCK";
    case Violation::MultipleSqlBlocks:
      return "MULTIPLE_SQL_BLOCKS";
    case Violation::NonContiguousIndices:
      return "NONCONTIGUOUS_INDICES";
  }
  return "UNKNOWN";
}

std::optional<AnswerBlock> find_answer_block(std::string_view completion) {
  std::size_t open = completion.find(kBlockOpen);
  if (open == std::string_view::npos) return std::nullopt;
  std::size_t body_start = open + kBlockOpen.size();
  std::size_t close = completion.find(kBlockClose, body_start);
  std::string_view body = close == std::string_view::npos
                              ? completion.substr(body_start)
                              : completion.substr(body_start, close - body_start);
  return AnswerBlock{completion.substr(0, open), body};
}

StructuredResponse parse_interpretation_answer(std::string_view completion, TaskKind task) {
  StructuredResponse resp;
  auto block = find_answer_block(completion);
  if (!block) {
    resp.status = ParseStatus::NoAnswerBlock;
    resp.reasoning_text = std::string(completion);
    return resp;
  }
  resp.reasoning_text = std::string(block->prefix);

  const std::vector<std::string_view> lines = split_lines(block->body);
  const std::vector<RawSegment> segs = scan_segments(lines, "interpretation");
  if (segs.empty()) {
    resp.status = ParseStatus::NoPairs;
    return resp;
  }

  for (const RawSegment& seg : segs) {
    InterpretationAnswerPair pair;
    pair.index = seg.index;
    pair.interpretation = std::string(trim(seg.marker_rest));
    if (pair.interpretation.empty()) {
      add_violation(&resp.violations, Violation::EmptyInterpretation);
    }
    if (task == TaskKind::Sql) {
      std::size_t blocks = extract_fenced(lines, seg.first_line, seg.last_line, &pair.answer);
      if (blocks == 0) {
        add_violation(&resp.violations, Violation::MissingSqlBlock);
      } else if (blocks > 1) {
        add_violation(&resp.violations, Violation::MultipleSqlBlocks);
      }
    } else {
      pair.answer = std::string(trim(join_lines(lines, seg.first_line, seg.last_line)));
    }
    if (pair.answer.empty()) {
      add_violation(&resp.violations, Violation::EmptyAnswer);
    }
    resp.pairs.push_back(std::move(pair));
  }

  if (resp.pairs.size() > kMaxPairs) {
    add_violation(&resp.violations, Violation::PairCountExceeded);
  }
  check_indices(segs, &resp.violations);
  return resp;
}

AnswerListResponse parse_answers_only(std::string_view completion, TaskKind task) {
  AnswerListResponse resp;
  auto block = find_answer_block(completion);
  if (!block) {
    resp.status = ParseStatus::NoAnswerBlock;
    resp.reasoning_text = std::string(completion);
    return resp;
  }
  resp.reasoning_text = std::string(block->prefix);

  const std::vector<std::string_view> lines = split_lines(block->body);
  const std::vector<RawSegment> segs = scan_segments(lines, "answer");
  if (segs.empty()) {
    resp.status = ParseStatus::NoPairs;
    return resp;
  }

  for (const RawSegment& seg : segs) {
    std::string payload;
    if (task == TaskKind::Sql) {
      std::size_t blocks = extract_fenced(lines, seg.first_line, seg.last_line, &payload);
      if (blocks == 0) {
        add_violation(&resp.violations, Violation::MissingSqlBlock);
      } else if (blocks > 1) {
        add_violation(&resp.violations, Violation::MultipleSqlBlocks);
      }
    } else {
      // The payload starts on the marker line itself and may continue below.
      std::string tail = join_lines(lines, seg.first_line, seg.last_line);
      payload = std::string(trim(seg.marker_rest));
      std::string_view extra = trim(tail);
      if (!extra.empty()) {
        if (!payload.empty()) payload.push_back('\n');
        payload.append(extra);
      }
    }
    if (payload.empty()) {
      add_violation(&resp.violations, Violation::EmptyAnswer);
    }
    resp.answers.push_back(std::move(payload));
  }

  if (resp.answers.size() > kMaxPairs) {
    add_violation(&resp.violations, Violation::PairCountExceeded);
  }
  check_indices(segs, &resp.violations);
  return resp;
}

std::string render_template(const std::vector<InterpretationAnswerPair>& pairs, TaskKind task) {
  if (pairs.empty()) {
    throw std::invalid_argument("render_template: EmptyPairs");
  }
  std::string out;
  out.append(kBlockOpen);
  out.push_back('\n');
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (k > 0) out.push_back('\n');
    out.append("**Interpretation ");
    out.append(std::to_string(pairs[k].index));
    out.append(":** ");
    out.append(pairs[k].interpretation);
    out.push_back('\n');
    if (task == TaskKind::Sql) {
      out.append("```sql\n");
      out.append(pairs[k].answer);
      out.append("\n```\n");
    } else {
      out.append(pairs[k].answer);
      out.push_back('\n');
    }
  }
  out.append(kBlockClose);
  return out;
}

}  // namespace ambigeval
