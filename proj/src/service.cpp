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

#include "ambigeval/service.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

#include "ambigeval/dapo.hpp"
#include "ambigeval/errors.hpp"
#include "ambigeval/eval.hpp"
#include "ambigeval/json_io.hpp"
#include "ambigeval/reward.hpp"
#include "ambigeval/similarity_oracle.hpp"

namespace ambigeval {

using nlohmann::json;

namespace {

void reply_error(httplib::Response& res, int status, const std::string& kind,
                 const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", kind}, {"message", message}}.dump(), "application/json");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

RewardService::RewardService(ServiceConfig config) : config_(std::move(config)) {
  LoadOptions load;
  load.data_root = config_.data_root;
  load.exec.timeout = std::chrono::milliseconds(config_.sql_timeout_ms);
  examples_ = load_dataset(config_.dataset_path, load);
  for (const auto& ex : examples_) by_id_.emplace(ex.id, &ex);

  if (config_.has_judge()) {
    HttpJudgeConfig judge_config;
    judge_config.url = config_.judge_url;
    judge_config.model = config_.judge_model;
    judge_config.timeout_ms = config_.judge_timeout_ms;
    if (const char* key = std::getenv(config_.judge_api_key_env.c_str())) {
      judge_config.api_key = key;
    }
    if (!config_.judge_template_path.empty()) {
      judge_config.prompt_template = read_file(config_.judge_template_path);
    }
    judge_ = std::make_unique<HttpJudgeClient>(std::move(judge_config));
    judge_cache_ = std::make_unique<CachingJudge>(*judge_);
  }

  server_ = std::make_unique<httplib::Server>();
  server_->set_logger([](const httplib::Request& req, const httplib::Response& res) {
    const std::string line = json{{"event", "request"},
                                  {"method", req.method},
                                  {"path", req.path},
                                  {"status", res.status}}
                                 .dump();
    std::fprintf(stderr, "%s\n", line.c_str());
  });
  install_routes();
}

RewardService::~RewardService() { stop(); }

void RewardService::install_routes() {
  server_->Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
    std::size_t ambiguous = 0;
    for (const auto& ex : examples_) {
      if (ex.ambiguous) ++ambiguous;
    }
    res.set_content(json{{"status", "ok"},
                         {"examples", examples_.size()},
                         {"ambiguous", ambiguous},
                         {"unambiguous", examples_.size() - ambiguous}}
                        .dump(),
                    "application/json");
  });

  server_->Post("/v1/reward", [this](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception& e) {
      return reply_error(res, 400, "malformed_body", e.what());
    }
    try {
      if (!body.contains("example_id") || !body.contains("completions") ||
          !body["completions"].is_array() || body["completions"].empty()) {
        return reply_error(res, 400, "malformed_body",
                           "need example_id and a non-empty completions array");
      }
      const std::string example_id = body["example_id"].get<std::string>();
      auto it = by_id_.find(example_id);
      if (it == by_id_.end()) {
        return reply_error(res, 404, "unknown_example", example_id);
      }
      const GoldExample& example = *it->second;
      if (body.contains("task") &&
          task_from_string(body["task"].get<std::string>()) != example.task) {
        return reply_error(res, 400, "task_mismatch",
                           "request task disagrees with the dataset record");
      }

      std::vector<RewardItem> items;
      for (const auto& completion : body["completions"]) {
        items.push_back(RewardItem{&example, completion.get<std::string>()});
      }

      ExecutionCache exec_cache;  // per-request, per spec's per-batch scope
      ExecOptions exec_options{std::chrono::milliseconds(config_.sql_timeout_ms)};
      const TextOverlapOracle text;
      const ExecutionOracle exec(&exec_cache, exec_options);
      const SimilarityOracle& oracle = training_oracle(example.task, exec, text);

      const std::vector<RewardOutcome> outcomes = compute_reward_batch(items, oracle);

      json results = json::array();
      for (const auto& outcome : outcomes) results.push_back(to_json(outcome));
      json reply{{"example_id", example_id}, {"results", std::move(results)}};

      if (body.value("want_dapo", false)) {
        GroupRollout group;
        for (const auto& outcome : outcomes) {
          group.rewards.push_back(outcome.reward);
          group.success_flags.push_back(success_from_reward(outcome.reward));
        }
        const bool keep = keep_group(group);
        json dapo{{"keep", keep}};
        if (keep) {
          dapo["advantages"] = group_advantage(group.rewards);
        }
        reply["dapo"] = std::move(dapo);
      }
      res.set_content(reply.dump(), "application/json");
    } catch (const GoldExecutionFault& e) {
      reply_error(res, 500, "gold_execution_fault", e.what());
    } catch (const json::exception& e) {
      reply_error(res, 400, "malformed_body", e.what());
    } catch (const Error& e) {
      reply_error(res, 400, "bad_request", e.what());
    }
  });

  server_->Post("/v1/evaluate", [this](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception& e) {
      return reply_error(res, 400, "malformed_body", e.what());
    }
    try {
      if (!body.contains("records") || !body["records"].is_array()) {
        return reply_error(res, 400, "malformed_body", "need a records array");
      }
      const SimMode mode = sim_mode_from_string(body.value("sim", "overlap"));
      if (mode == SimMode::Judge && judge_cache_ == nullptr) {
        return reply_error(res, 400, "no_judge", "no judge endpoint configured");
      }

      std::vector<DumpRecord> records;
      for (const auto& record : body["records"]) {
        records.push_back(DumpRecord{record.at("example_id").get<std::string>(),
                                     record.at("completion_text").get<std::string>()});
      }

      Evaluator::Options options;
      options.mode = mode;
      options.exec.timeout = std::chrono::milliseconds(config_.sql_timeout_ms);
      Evaluator evaluator(options, judge_cache_.get());
      const std::vector<ExampleEval> results = evaluator.evaluate_dump(examples_, records);
      res.set_content(to_json(aggregate(results)).dump(), "application/json");
    } catch (const GoldExecutionFault& e) {
      reply_error(res, 500, "gold_execution_fault", e.what());
    } catch (const JudgeUnavailable& e) {
      reply_error(res, 502, "judge_unavailable", e.what());
    } catch (const json::exception& e) {
      reply_error(res, 400, "malformed_body", e.what());
    } catch (const Error& e) {
      reply_error(res, 400, "bad_request", e.what());
    }
  });
}

int RewardService::start() {
  if (config_.port == 0) {
    port_ = server_->bind_to_any_port(config_.host);
    if (port_ <= 0) throw ConfigError("cannot bind to an ephemeral port on " + config_.host);
  } else {
    if (!server_->bind_to_port(config_.host, config_.port)) {
      throw ConfigError("cannot bind to " + config_.host + ":" + std::to_string(config_.port));
    }
    port_ = config_.port;
  }
  worker_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void RewardService::wait() {
  if (worker_.joinable()) worker_.join();
}

void RewardService::stop() {
  if (server_) server_->stop();
  if (worker_.joinable()) worker_.join();
}

}  // namespace ambigeval
