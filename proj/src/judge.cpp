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

#include "ambigeval/judge.hpp"

#include <algorithm>
#include <cctype>

#include "httplib.h"
#include "json.hpp"

#include "ambigeval/errors.hpp"
#include "ambigeval/text_similarity.hpp"

namespace ambigeval {

namespace {

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string_view trim_view(std::string_view s) {
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  std::size_t e = s.size();
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

void replace_all(std::string* text, std::string_view slot, const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text->find(slot, pos)) != std::string::npos) {
    text->replace(pos, slot.size(), value);
    pos += value.size();
  }
}

// True when `needle` occurs as a contiguous run inside `haystack`.
bool contains_run(const std::vector<std::string>& haystack,
                  const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) !=
         haystack.end();
}

}  // namespace

JudgeVerdict NormalizationStubJudge::assess(const JudgeQuery& query) {
  const std::vector<std::string> pred = normalize_text(query.prediction);
  const std::vector<std::string> gold = normalize_text(query.gold);
  if (pred.empty() || gold.empty()) return JudgeVerdict::Incorrect;
  const bool equivalent = contains_run(pred, gold) || contains_run(gold, pred);
  return equivalent ? JudgeVerdict::Correct : JudgeVerdict::Incorrect;
}

std::string render_judge_prompt(std::string_view prompt_template, const JudgeQuery& query) {
  std::string prompt(prompt_template);
  replace_all(&prompt, "{context}", query.context);
  replace_all(&prompt, "{question}", query.question);
  replace_all(&prompt, "{gold}", query.gold);
  replace_all(&prompt, "{prediction}", query.prediction);
  return prompt;
}

JudgeVerdict parse_verdict(std::string_view reply) {
  // Last non-empty line.
  std::string_view line;
  std::size_t end = reply.size();
  while (end > 0) {
    std::size_t start = reply.rfind('\n', end - 1);
    const std::size_t line_start = start == std::string_view::npos ? 0 : start + 1;
    line = trim_view(reply.substr(line_start, end - line_start));
    if (!line.empty()) break;
    if (start == std::string_view::npos) break;
    end = start;
  }
  if (line.empty()) return JudgeVerdict::Malformed;

  std::string token;
  token.reserve(line.size());
  for (char c : line) token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (!token.empty() && token.back() == '.') token.pop_back();

  if (token == "correct") return JudgeVerdict::Correct;
  if (token == "incorrect") return JudgeVerdict::Incorrect;
  return JudgeVerdict::Malformed;
}

HttpJudgeClient::HttpJudgeClient(HttpJudgeConfig config) : config_(std::move(config)) {}

std::uint64_t HttpJudgeClient::config_hash() const {
  std::uint64_t h = fnv1a(config_.url);
  h = fnv1a(config_.model, h);
  h = fnv1a(config_.prompt_template, h);
  return h;
}

JudgeVerdict HttpJudgeClient::assess(const JudgeQuery& query) {
  // Split scheme://host:port from the path.
  const std::size_t scheme_end = config_.url.find("://");
  std::size_t path_start = std::string::npos;
  if (scheme_end != std::string::npos) {
    path_start = config_.url.find('/', scheme_end + 3);
  }
  const std::string origin =
      path_start == std::string::npos ? config_.url : config_.url.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? "/v1/chat/completions" : config_.url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);
  client.set_read_timeout(config_.timeout_ms / 1000, (config_.timeout_ms % 1000) * 1000);

  nlohmann::json body;
  body["model"] = config_.model;
  body["temperature"] = 0.0;
  body["messages"] = nlohmann::json::array(
      {{{"role", "user"}, {"content", render_judge_prompt(config_.prompt_template, query)}}});

  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }

  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw JudgeUnavailable("judge endpoint unreachable: " + config_.url);
  }
  if (res->status != 200) {
    throw JudgeUnavailable("judge endpoint returned status " + std::to_string(res->status));
  }

  try {
    const auto reply = nlohmann::json::parse(res->body);
    const std::string content = reply.at("choices").at(0).at("message").at("content");
    return parse_verdict(content);
  } catch (const nlohmann::json::exception&) {
    throw JudgeUnavailable("judge reply is not a chat completion");
  }
}

JudgeVerdict CachingJudge::assess(const JudgeQuery& query) {
  const Key key{inner_.config_hash(), query.context, query.question, query.gold,
                query.prediction};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  const JudgeVerdict verdict = inner_.assess(query);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = memo_.emplace(key, verdict);
  return it->second;
}

std::size_t CachingJudge::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

}  // namespace ambigeval
