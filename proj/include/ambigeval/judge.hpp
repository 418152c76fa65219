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

#ifndef AMBIGEVAL_JUDGE_HPP_
#define AMBIGEVAL_JUDGE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <tuple>

namespace ambigeval {

struct JudgeQuery {
  std::string context;
  std::string question;
  std::string gold;
  std::string prediction;
};

// The judge must answer with one token, correct or incorrect, on the final
// line of its reply. Anything else is Malformed: scored 0 and counted.
enum class JudgeVerdict { Correct, Incorrect, Malformed };

class JudgeClient {
 public:
  virtual ~JudgeClient() = default;

  // May throw JudgeUnavailable on transport failures.
  virtual JudgeVerdict assess(const JudgeQuery& query) = 0;

  // Folded into cache keys so cached verdicts never leak across judge or
  // template configurations.
  virtual std::uint64_t config_hash() const = 0;
};

// Deterministic judge for tests and offline runs: equivalent iff one
// normalized token sequence contains the other contiguously (and neither is
// empty). "His name was Luca" vs "Luca" is Correct; disjoint strings are not.
class NormalizationStubJudge final : public JudgeClient {
 public:
  JudgeVerdict assess(const JudgeQuery& query) override;
  std::uint64_t config_hash() const override { return 0x5f3b9d; }
};

struct HttpJudgeConfig {
  std::string url;        // chat-completions endpoint, path included
  std::string model;
  std::string api_key;    // resolved from the environment by the caller
  std::string prompt_template;  // slots: {context} {question} {gold} {prediction}
  int timeout_ms = 30000;
};

// Generic chat-completion client. Builds the prompt from the template,
// posts {model, messages:[{role:"user", content}]}, and reads the verdict
// from choices[0].message.content.
class HttpJudgeClient final : public JudgeClient {
 public:
  explicit HttpJudgeClient(HttpJudgeConfig config);

  JudgeVerdict assess(const JudgeQuery& query) override;
  std::uint64_t config_hash() const override;

 private:
  HttpJudgeConfig config_;
};

// Thread-safe memo keyed on (judge config, context, question, gold,
// prediction); makes large evaluations affordable and repeatable.
class CachingJudge final : public JudgeClient {
 public:
  explicit CachingJudge(JudgeClient& inner) : inner_(inner) {}

  JudgeVerdict assess(const JudgeQuery& query) override;
  std::uint64_t config_hash() const override { return inner_.config_hash(); }

  std::size_t size() const;

 private:
  using Key = std::tuple<std::uint64_t, std::string, std::string, std::string, std::string>;
  JudgeClient& inner_;
  mutable std::mutex mu_;
  std::map<Key, JudgeVerdict> memo_;
};

// Fills the {context}/{question}/{gold}/{prediction} slots of a template.
std::string render_judge_prompt(std::string_view prompt_template, const JudgeQuery& query);

// Verdict extraction contract: final non-empty line, trimmed, lowercased,
// one trailing period tolerated.
JudgeVerdict parse_verdict(std::string_view reply);

}  // namespace ambigeval

#endif  // AMBIGEVAL_JUDGE_HPP_
