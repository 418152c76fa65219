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

#ifndef AMBIGEVAL_JSON_IO_HPP_
#define AMBIGEVAL_JSON_IO_HPP_

#include "json.hpp"

#include "ambigeval/eval.hpp"
#include "ambigeval/response_parser.hpp"
#include "ambigeval/reward.hpp"

namespace ambigeval {

// Wire encodings shared by the CLI and the HTTP service. Doubles are emitted
// with nlohmann's shortest round-trip representation, so values survive the
// wire bit-exactly.

nlohmann::json to_json(const StructuredResponse& response);
nlohmann::json to_json(const AnswerListResponse& response);
nlohmann::json to_json(const RewardOutcome& outcome);
nlohmann::json to_json(const SubsetReport& subset);
nlohmann::json to_json(const EvalReport& report);
nlohmann::json to_json(const ExampleEval& eval);

RewardOutcome reward_outcome_from_json(const nlohmann::json& doc);

}  // namespace ambigeval

#endif  // AMBIGEVAL_JSON_IO_HPP_
