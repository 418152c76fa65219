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

#ifndef AMBIGEVAL_CONFIG_HPP_
#define AMBIGEVAL_CONFIG_HPP_

#include <string>

#include "ambigeval/dapo.hpp"
#include "ambigeval/dataset.hpp"

namespace ambigeval {

// Declarative service configuration. Secrets never live in the file: the
// judge API key is read from the environment variable named by
// judge.api_key_env.
//
// {
//   "dataset": "data/train.jsonl",
//   "data_root": "data",
//   "ratio": {"ambiguous": 3, "unambiguous": 1},
//   "batch_size": 4,
//   "dapo": {"eps_low": 0.2, "eps_high": 0.28, "group_size": 16,
//            "max_completion_tokens": 2500},
//   "sql_timeout_ms": 5000,
//   "server": {"host": "127.0.0.1", "port": 8080},
//   "judge": {"url": "http://localhost:9000/v1/chat/completions",
//             "model": "judge-model", "api_key_env": "JUDGE_API_KEY",
//             "template_path": "templates/judge_prompt.txt",
//             "timeout_ms": 30000}
// }
struct ServiceConfig {
  std::string dataset_path;
  std::string data_root;
  RatioSpec ratio;
  std::size_t batch_size = 4;
  DapoConfig dapo;
  int sql_timeout_ms = 5000;
  std::string host = "127.0.0.1";
  int port = 8080;

  std::string judge_url;
  std::string judge_model;
  std::string judge_api_key_env = "JUDGE_API_KEY";
  std::string judge_template_path;
  int judge_timeout_ms = 30000;

  bool has_judge() const { return !judge_url.empty(); }

  // Throws ConfigError on unreadable or inconsistent files.
  static ServiceConfig from_file(const std::string& path);
};

}  // namespace ambigeval

#endif  // AMBIGEVAL_CONFIG_HPP_
