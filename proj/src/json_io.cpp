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

#include "ambigeval/json_io.hpp"

#include "ambigeval/errors.hpp"

namespace ambigeval {

using nlohmann::json;

namespace {

json violations_to_json(const std::vector<Violation>& violations) {
  json arr = json::array();
  for (Violation v : violations) arr.push_back(std::string(to_string(v)));
  return arr;
}

Violation violation_from_string(std::string_view s) {
  for (Violation v :
       {Violation::PairCountExceeded, Violation::EmptyAnswer, Violation::EmptyInterpretation,
        Violation::MissingSqlBlock, Violation::MultipleSqlBlocks,
        Violation::NonContiguousIndices}) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError("unknown violation code '" + std::string(s) + "'");
}

RewardMode mode_from_string(std::string_view s) {
  if (s == "RECALL") return RewardMode::Recall;
  if (s == "PRECISION") return RewardMode::Precision;
  if (s == "FORMAT_FAILURE") return RewardMode::FormatFailure;
  throw ConfigError("unknown reward mode '" + std::string(s) + "'");
}

}  // namespace

json to_json(const StructuredResponse& response) {
  json doc;
  doc["status"] = std::string(to_string(response.status));
  doc["reasoning_text"] = response.reasoning_text;
  json pairs = json::array();
  for (const auto& pair : response.pairs) {
    pairs.push_back({{"index", pair.index},
                     {"interpretation", pair.interpretation},
                     {"answer", pair.answer}});
  }
  doc["pairs"] = std::move(pairs);
  doc["violations"] = violations_to_json(response.violations);
  return doc;
}

json to_json(const AnswerListResponse& response) {
  json doc;
  doc["status"] = std::string(to_string(response.status));
  doc["reasoning_text"] = response.reasoning_text;
  doc["answers"] = response.answers;
  doc["violations"] = violations_to_json(response.violations);
  return doc;
}

json to_json(const RewardOutcome& outcome) {
  json doc;
  doc["reward"] = outcome.reward;
  doc["mode"] = std::string(to_string(outcome.mode));
  json matched = json::array();
  for (const auto& m : outcome.matched) {
    matched.push_back({{"pred", m.pred}, {"gold", m.gold}, {"sim", m.sim}});
  }
  doc["matched"] = std::move(matched);
  doc["pred_count"] = outcome.pred_count;
  doc["gold_count"] = outcome.gold_count;
  doc["violations"] = violations_to_json(outcome.violations);
  return doc;
}

RewardOutcome reward_outcome_from_json(const json& doc) {
  RewardOutcome outcome;
  outcome.reward = doc.at("reward").get<double>();
  outcome.mode = mode_from_string(doc.at("mode").get<std::string>());
  for (const auto& m : doc.at("matched")) {
    outcome.matched.push_back(MatchedPair{m.at("pred").get<std::size_t>(),
                                          m.at("gold").get<std::size_t>(),
                                          m.at("sim").get<double>()});
  }
  outcome.pred_count = doc.at("pred_count").get<std::size_t>();
  outcome.gold_count = doc.at("gold_count").get<std::size_t>();
  for (const auto& v : doc.at("violations")) {
    outcome.violations.push_back(violation_from_string(v.get<std::string>()));
  }
  return outcome;
}

json to_json(const SubsetReport& subset) {
  return json{{"n_examples", subset.n_examples},
              {"n_parse_failures", subset.n_parse_failures},
              {"recall", subset.recall},
              {"precision", subset.precision},
              {"full_coverage", subset.full_coverage},
              {"single_coverage", subset.single_coverage},
              {"legacy_overlap_f1", subset.legacy_overlap_f1},
              {"mean_reasoning_chars", subset.mean_reasoning_chars}};
}

json to_json(const EvalReport& report) {
  return json{{"ambiguous", to_json(report.ambiguous)},
              {"unambiguous", to_json(report.unambiguous)},
              {"malformed_verdicts", report.malformed_verdicts}};
}

json to_json(const ExampleEval& eval) {
  return json{{"example_id", eval.example_id},
              {"ambiguous", eval.ambiguous},
              {"task", std::string(to_string(eval.task))},
              {"recall", eval.recall},
              {"precision", eval.precision},
              {"full_coverage", eval.full_coverage},
              {"single_coverage", eval.single_coverage},
              {"legacy_overlap_f1", eval.legacy_overlap_f1},
              {"reasoning_chars", eval.reasoning_chars},
              {"parse_failed", eval.parse_failed},
              {"malformed_verdicts", eval.malformed_verdicts}};
}

}  // namespace ambigeval
