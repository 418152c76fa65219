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

#ifndef AMBIGEVAL_TEXT_SIMILARITY_HPP_
#define AMBIGEVAL_TEXT_SIMILARITY_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "ambigeval/types.hpp"

namespace ambigeval {

// Extractive-QA answer normalization: lowercase, delete ASCII punctuation,
// drop the articles a/an/the, split on whitespace. Non-ASCII bytes are kept
// as-is. Idempotent over re-joined token lists.
std::vector<std::string> normalize_text(std::string_view s);

// Multiset token-overlap F1 over normalized tokens. Both sides empty after
// normalization scores 1.0, exactly one empty scores 0.0. Symmetric and
// bounded in [0, 1].
double f1_overlap(std::string_view pred, std::string_view gold);

// Best f1_overlap of the prediction against any paraphrase variant of the
// gold answer. Throws std::invalid_argument on an empty variant list.
double sim_text(std::string_view pred, const GoldAnswer& gold);

}  // namespace ambigeval

#endif  // AMBIGEVAL_TEXT_SIMILARITY_HPP_
