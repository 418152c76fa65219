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

#ifndef AMBIGEVAL_ERRORS_HPP_
#define AMBIGEVAL_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ambigeval {

// Base class for all engine faults that are not plain precondition bugs.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dataset record breaks a GoldExample invariant. Carries the 1-based line
// number of the offending JSONL record when known.
class SchemaViolation : public Error {
 public:
  explicit SchemaViolation(const std::string& message, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A gold SQL query failed to execute. The benchmark data itself is broken,
// so this is never folded into a score.
class GoldExecutionFault : public Error {
 public:
  using Error::Error;
};

// Token batch / advantage dimensions disagree.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

// A rollout group has zero reward variance; the caller should have filtered
// it with dynamic_sampling_filter before asking for advantages.
class DegenerateGroup : public Error {
 public:
  using Error::Error;
};

// binary_match_count was handed a matrix with entries outside {0, 1}.
class NonBinaryMatrix : public Error {
 public:
  using Error::Error;
};

// balanced_stream needs examples from a class that is empty.
class EmptyClass : public Error {
 public:
  using Error::Error;
};

// The judge endpoint could not be reached or replied with garbage transport.
class JudgeUnavailable : public Error {
 public:
  using Error::Error;
};

// A config file is missing, unreadable, or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ambigeval

#endif  // AMBIGEVAL_ERRORS_HPP_
