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

#ifndef AMBIGEVAL_FIXTURES_HPP_
#define AMBIGEVAL_FIXTURES_HPP_

#include <array>
#include <string>
#include <vector>

#include "ambigeval/types.hpp"

namespace ambigeval {

// Desk-scale, self-contained fixtures: a small Jobs database whose schema
// mirrors the ambiguous "required experience" example (Min_Years and
// Pref_Years columns both plausible), plus QA and SQL examples built on it.

// The three gold readings of "Show the required experience for the best-paid
// role": minimum years, preferred years, or both.
const std::array<std::string, 3>& jobs_gold_queries();

// Creates (or overwrites) the Jobs database. Rows are seeded so the three
// gold queries produce three distinct result tables.
void create_jobs_db(const std::string& path);

// Examples referencing the database at db_path.
std::vector<GoldExample> fixture_examples(const std::string& db_path);

struct FixtureSet {
  std::string db_path;
  std::string dataset_path;
  std::string completions_full_path;     // gold-derived pairs for every example
  std::string completions_partial_path;  // first gold only, per example
};

// Materializes the database, the dataset JSONL, and two mock-policy
// completion dumps under the given directory.
FixtureSet write_fixture_set(const std::string& directory);

}  // namespace ambigeval

#endif  // AMBIGEVAL_FIXTURES_HPP_
