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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ambigeval/config.hpp"
#include "ambigeval/dataset.hpp"
#include "ambigeval/errors.hpp"
#include "ambigeval/eval.hpp"
#include "ambigeval/fixtures.hpp"
#include "ambigeval/json_io.hpp"
#include "ambigeval/reward.hpp"
#include "ambigeval/service.hpp"
#include "ambigeval/similarity_oracle.hpp"

namespace {

using namespace ambigeval;
using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

RatioSpec parse_ratio(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("ratio must look like 3:1");
  RatioSpec ratio;
  ratio.ambiguous = static_cast<unsigned>(std::stoul(text.substr(0, colon)));
  ratio.unambiguous = static_cast<unsigned>(std::stoul(text.substr(colon + 1)));
  return ratio;
}

int run_parse(const std::string& in_path, const std::string& task_name,
              const std::string& format) {
  const TaskKind task = task_from_string(task_name);
  const std::string completion = read_file(in_path);
  json doc;
  if (format == "answers") {
    doc = to_json(parse_answers_only(completion, task));
  } else {
    doc = to_json(parse_interpretation_answer(completion, task));
  }
  std::cout << doc.dump(2) << '\n';
  return 0;
}

int run_reward(const std::string& dataset_path, const std::string& completions_path,
               const std::string& data_root, int timeout_ms) {
  LoadOptions load;
  load.data_root = data_root;
  load.exec.timeout = std::chrono::milliseconds(timeout_ms);
  const std::vector<GoldExample> dataset = load_dataset(dataset_path, load);
  std::unordered_map<std::string, const GoldExample*> by_id;
  for (const auto& ex : dataset) by_id.emplace(ex.id, &ex);

  const std::vector<DumpRecord> records = load_dump(completions_path);
  std::vector<RewardItem> items;
  for (const auto& record : records) {
    auto it = by_id.find(record.example_id);
    if (it == by_id.end()) {
      throw SchemaViolation("completions reference unknown example id '" + record.example_id +
                            "'");
    }
    items.push_back(RewardItem{it->second, record.completion_text});
  }

  ExecutionCache cache;
  ExecOptions exec_options{std::chrono::milliseconds(timeout_ms)};
  const TextOverlapOracle text;
  const ExecutionOracle exec(&cache, exec_options);

  // The batch kernel takes one oracle, so mixed-task dumps are scored as two
  // sub-batches and stitched back in input order.
  std::vector<RewardOutcome> outcomes(items.size());
  std::vector<std::size_t> qa_idx, sql_idx;
  for (std::size_t i = 0; i < items.size(); ++i) {
    (items[i].example->task == TaskKind::Sql ? sql_idx : qa_idx).push_back(i);
  }
  const auto score_subset = [&](const std::vector<std::size_t>& indices,
                                const SimilarityOracle& oracle) {
    std::vector<RewardItem> subset;
    for (std::size_t i : indices) subset.push_back(items[i]);
    const std::vector<RewardOutcome> sub_outcomes = compute_reward_batch(subset, oracle);
    for (std::size_t k = 0; k < indices.size(); ++k) outcomes[indices[k]] = sub_outcomes[k];
  };
  score_subset(qa_idx, text);
  score_subset(sql_idx, exec);

  for (std::size_t i = 0; i < items.size(); ++i) {
    json line = to_json(outcomes[i]);
    line["example_id"] = records[i].example_id;
    std::cout << line.dump() << '\n';
  }
  return 0;
}

int run_eval(const std::string& dataset_path, const std::string& completions_path,
             const std::string& sim, const std::string& data_root, bool judge_stub,
             const std::string& json_out, const std::string& per_example_out, int timeout_ms) {
  LoadOptions load;
  load.data_root = data_root;
  load.exec.timeout = std::chrono::milliseconds(timeout_ms);
  const std::vector<GoldExample> dataset = load_dataset(dataset_path, load);
  const std::vector<DumpRecord> records = load_dump(completions_path);

  Evaluator::Options options;
  options.mode = sim_mode_from_string(sim);
  options.exec.timeout = std::chrono::milliseconds(timeout_ms);

  NormalizationStubJudge stub;
  JudgeClient* judge = nullptr;
  if (options.mode == SimMode::Judge) {
    if (!judge_stub) {
      throw ConfigError(
          "judge mode on the CLI requires --judge-stub; point a live endpoint at the service "
          "instead");
    }
    judge = &stub;
  }

  Evaluator evaluator(options, judge);
  const std::vector<ExampleEval> results = evaluator.evaluate_dump(dataset, records);
  const EvalReport report = aggregate(results);

  std::cout << format_report(report);
  if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) throw ConfigError("cannot write '" + json_out + "'");
    out << to_json(report).dump(2) << '\n';
  }
  if (!per_example_out.empty()) {
    std::ofstream out(per_example_out);
    if (!out) throw ConfigError("cannot write '" + per_example_out + "'");
    for (const auto& r : results) out << to_json(r).dump() << '\n';
  }
  return 0;
}

int run_balance(const std::string& dataset_path, const std::string& ratio_text,
                std::size_t batch_size, std::uint64_t seed, std::size_t batches,
                const std::string& data_root) {
  LoadOptions load;
  load.data_root = data_root;
  load.verify_sql = false;  // sampling does not execute anything
  const std::vector<GoldExample> dataset = load_dataset(dataset_path, load);

  BalancedStream stream(dataset, parse_ratio(ratio_text), batch_size, seed);
  for (std::size_t b = 0; b < batches; ++b) {
    const std::vector<std::size_t> batch = stream.next_batch();
    for (std::size_t k = 0; k < batch.size(); ++k) {
      if (k > 0) std::cout << ' ';
      std::cout << dataset[batch[k]].id;
    }
    std::cout << '\n';
  }
  return 0;
}

int run_serve(const std::string& config_path) {
  RewardService service(ServiceConfig::from_file(config_path));
  const int port = service.start();
  std::cerr << json{{"event", "listening"}, {"port", port}}.dump() << '\n';
  service.wait();
  return 0;
}

int run_fixtures(const std::string& out_dir) {
  const FixtureSet set = write_fixture_set(out_dir);
  std::cout << json{{"db", set.db_path},
                    {"dataset", set.dataset_path},
                    {"completions_full", set.completions_full_path},
                    {"completions_partial", set.completions_partial_path}}
                   .dump(2)
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reward and evaluation engine for interpretation-answer responses"};
  app.require_subcommand(1);

  std::string in_path, task_name = "qa", format = "pairs";
  auto* parse_cmd = app.add_subcommand("parse", "Parse a completion file into a structured dump");
  parse_cmd->add_option("--in", in_path, "Completion text file")->required();
  parse_cmd->add_option("--task", task_name, "Task kind: qa or sql");
  parse_cmd->add_option("--format", format, "Output grammar: pairs or answers")
      ->check(CLI::IsMember({"pairs", "answers"}));

  std::string dataset_path, completions_path, data_root;
  int timeout_ms = 5000;
  auto* reward_cmd = app.add_subcommand("reward", "Score completions against the dataset");
  reward_cmd->add_option("--dataset", dataset_path, "Dataset JSONL")->required();
  reward_cmd->add_option("--completions", completions_path, "Completions dump JSONL")->required();
  reward_cmd->add_option("--data-root", data_root, "Root for relative db paths");
  reward_cmd->add_option("--sql-timeout-ms", timeout_ms, "Per-query execution timeout");

  std::string sim = "overlap", json_out, per_example_out;
  bool judge_stub = false;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate completions and print a report");
  eval_cmd->add_option("--dataset", dataset_path, "Dataset JSONL")->required();
  eval_cmd->add_option("--completions", completions_path, "Completions dump JSONL")->required();
  eval_cmd->add_option("--sim", sim, "Similarity: judge, overlap, or exec")
      ->check(CLI::IsMember({"judge", "overlap", "exec"}));
  eval_cmd->add_option("--data-root", data_root, "Root for relative db paths");
  eval_cmd->add_flag("--judge-stub", judge_stub, "Use the deterministic normalization stub judge");
  eval_cmd->add_option("--json", json_out, "Write the report as JSON");
  eval_cmd->add_option("--per-example", per_example_out, "Write per-example results as JSONL");
  eval_cmd->add_option("--sql-timeout-ms", timeout_ms, "Per-query execution timeout");

  std::string ratio_text = "3:1";
  std::size_t batch_size = 4, batches = 10;
  std::uint64_t seed = 0;
  auto* balance_cmd = app.add_subcommand("balance", "Print balanced batches of example ids");
  balance_cmd->add_option("--dataset", dataset_path, "Dataset JSONL")->required();
  balance_cmd->add_option("--ratio", ratio_text, "Ambiguous:unambiguous ratio");
  balance_cmd->add_option("--batch-size", batch_size, "Examples per batch");
  balance_cmd->add_option("--seed", seed, "Stream seed");
  balance_cmd->add_option("--batches", batches, "Number of batches to emit");
  balance_cmd->add_option("--data-root", data_root, "Root for relative db paths");

  std::string config_path;
  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP reward service");
  serve_cmd->add_option("--config", config_path, "Service config JSON")->required();

  std::string out_dir = "fixtures";
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Generate the desk-scale fixture set");
  fixtures_cmd->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
    return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
  }

  try {
    if (parse_cmd->parsed()) return run_parse(in_path, task_name, format);
    if (reward_cmd->parsed())
      return run_reward(dataset_path, completions_path, data_root, timeout_ms);
    if (eval_cmd->parsed())
      return run_eval(dataset_path, completions_path, sim, data_root, judge_stub, json_out,
                      per_example_out, timeout_ms);
    if (balance_cmd->parsed())
      return run_balance(dataset_path, ratio_text, batch_size, seed, batches, data_root);
    if (serve_cmd->parsed()) return run_serve(config_path);
    if (fixtures_cmd->parsed()) return run_fixtures(out_dir);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "failure"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
