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

#include "ambigeval/text_similarity.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

namespace ambigeval {

namespace {

bool is_ascii_punct(unsigned char c) {
  return std::ispunct(c) != 0 && c < 0x80;
}

bool is_article(std::string_view tok) {
  return tok == "a" || tok == "an" || tok == "the";
}

}  // namespace

std::vector<std::string> normalize_text(std::string_view s) {
  std::string cleaned;
  cleaned.reserve(s.size());
  for (unsigned char c : s) {
    if (is_ascii_punct(c)) continue;
    cleaned.push_back(static_cast<char>(std::tolower(c)));
  }

  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < cleaned.size()) {
    while (i < cleaned.size() && std::isspace(static_cast<unsigned char>(cleaned[i]))) ++i;
    std::size_t start = i;
    while (i < cleaned.size() && !std::isspace(static_cast<unsigned char>(cleaned[i]))) ++i;
    if (i > start) {
      std::string tok = cleaned.substr(start, i - start);
      if (!is_article(tok)) tokens.push_back(std::move(tok));
    }
  }
  return tokens;
}

double f1_overlap(std::string_view pred, std::string_view gold) {
  const std::vector<std::string> p = normalize_text(pred);
  const std::vector<std::string> g = normalize_text(gold);
  if (p.empty() && g.empty()) return 1.0;
  if (p.empty() || g.empty()) return 0.0;

  std::unordered_map<std::string, int> gold_counts;
  for (const auto& tok : g) ++gold_counts[tok];

  int common = 0;
  for (const auto& tok : p) {
    auto it = gold_counts.find(tok);
    if (it != gold_counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;

  const double precision = static_cast<double>(common) / static_cast<double>(p.size());
  const double recall = static_cast<double>(common) / static_cast<double>(g.size());
  return 2.0 * precision * recall / (precision + recall);
}

double sim_text(std::string_view pred, const GoldAnswer& gold) {
  if (gold.variants.empty()) {
    throw std::invalid_argument("sim_text: gold answer has no variants");
  }
  double best = 0.0;
  for (const auto& variant : gold.variants) {
    best = std::max(best, f1_overlap(pred, variant));
  }
  return best;
}

}  // namespace ambigeval
