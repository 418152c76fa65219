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

#ifndef AMBIGEVAL_DATASET_HPP_
#define AMBIGEVAL_DATASET_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ambigeval/sql_exec.hpp"
#include "ambigeval/types.hpp"

namespace ambigeval {

// Dataset files are UTF-8 line-delimited JSON, one GoldExample per line:
//
//   {"id": "...", "task": "qa"|"sql", "context": "...", "question": "...",
//    "gold_answers": [...], "ambiguous": bool, "db_path": "relative.sqlite"}
//
// Each gold answer is a paraphrase array (or a bare string shorthand); SQL
// golds must hold exactly one query. db_path is resolved against data_root,
// or against the dataset file's directory when data_root is empty.

struct LoadOptions {
  std::string data_root;
  // Execute every SQL gold once at load time: catches non-executable golds
  // (GoldExecutionFault) and duplicate execution results (SchemaViolation).
  bool verify_sql = true;
  ExecOptions exec;
};

std::vector<GoldExample> load_dataset(const std::string& path, const LoadOptions& options = {});

// Writes examples in the format above; db_path is emitted as stored.
void write_dataset(const std::string& path, std::span<const GoldExample> examples);

struct RatioSpec {
  unsigned ambiguous = 3;
  unsigned unambiguous = 1;
};

// Infinite batch stream with an exact per-batch class composition (for the
// default 3:1 ratio and batch size 4: three ambiguous plus one unambiguous
// per batch, ambiguous first). Within each class, examples cycle without
// replacement and reshuffle on exhaustion, so coverage per epoch is uniform.
// Deterministic for a fixed seed, including across platforms. Single
// consumer per instance.
class BalancedStream {
 public:
  BalancedStream(std::span<const GoldExample> examples, RatioSpec ratio = {},
                 std::size_t batch_size = 4, std::uint64_t seed = 0);

  // Indices into the constructor's example span.
  std::vector<std::size_t> next_batch();

  std::size_t ambiguous_per_batch() const { return ambiguous_per_batch_; }
  std::size_t batch_size() const { return batch_size_; }

 private:
  class Cycler {
   public:
    explicit Cycler(std::vector<std::size_t> indices) : indices_(std::move(indices)) {}
    std::size_t next(std::mt19937_64& rng);
    std::size_t size() const { return indices_.size(); }

   private:
    std::vector<std::size_t> indices_;
    std::size_t pos_ = 0;
    bool shuffled_ = false;
  };

  std::size_t batch_size_;
  std::size_t ambiguous_per_batch_;
  Cycler ambiguous_;
  Cycler unambiguous_;
  std::mt19937_64 rng_;
};

}  // namespace ambigeval

#endif  // AMBIGEVAL_DATASET_HPP_
