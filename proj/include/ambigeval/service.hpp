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

#ifndef AMBIGEVAL_SERVICE_HPP_
#define AMBIGEVAL_SERVICE_HPP_

#include <memory>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "ambigeval/config.hpp"
#include "ambigeval/judge.hpp"
#include "ambigeval/types.hpp"

namespace httplib {
class Server;
}

namespace ambigeval {

// JSON-over-HTTP reward endpoint for RL trainers.
//
//   GET  /v1/health    -> {"status":"ok", "examples":N, "ambiguous":A,
//                          "unambiguous":U}
//   POST /v1/reward    -> {"example_id", "completions":[...], "task"?,
//                          "want_dapo"?} to per-completion outcomes, plus a
//                          "dapo" block (keep flag; advantages iff kept)
//   POST /v1/evaluate  -> {"records":[{example_id, completion_text}...],
//                          "sim":"overlap"|"exec"|"judge"} to an EvalReport
//
// Requests are stateless with respect to each other; the dataset is
// read-only after startup and the judge verdict cache is the only shared
// mutable structure.
class RewardService {
 public:
  // Loads and validates the dataset; throws on startup failure.
  explicit RewardService(ServiceConfig config);
  ~RewardService();

  RewardService(const RewardService&) = delete;
  RewardService& operator=(const RewardService&) = delete;

  // Binds to config.host:config.port (an ephemeral port when config.port is
  // zero) and serves on a background thread. Returns the bound port.
  int start();

  // Blocks until stop() is called from elsewhere.
  void wait();

  void stop();

  int port() const { return port_; }
  std::size_t example_count() const { return examples_.size(); }

 private:
  void install_routes();

  ServiceConfig config_;
  std::vector<GoldExample> examples_;
  std::unordered_map<std::string, const GoldExample*> by_id_;
  std::unique_ptr<JudgeClient> judge_;        // nullptr when not configured
  std::unique_ptr<CachingJudge> judge_cache_;
  std::unique_ptr<httplib::Server> server_;
  std::thread worker_;
  int port_ = 0;
};

}  // namespace ambigeval

#endif  // AMBIGEVAL_SERVICE_HPP_
