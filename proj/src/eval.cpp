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

#include "ambigeval/eval.hpp"

#include <omp.h>

#include <cstdio>
#include <exception>
#include <fstream>
#include <unordered_map>

#include "json.hpp"

#include "ambigeval/errors.hpp"
#include "ambigeval/response_parser.hpp"
#include "ambigeval/similarity_oracle.hpp"
#include "ambigeval/text_similarity.hpp"

namespace ambigeval {

namespace {

constexpr double kFullCoverageEps = 1e-9;
constexpr double kSingleCoverageSim = 0.999;

}  // namespace

std::string_view to_string(SimMode mode) {
  switch (mode) {
    case SimMode::Judge:
      return "judge";
    case SimMode::Overlap:
      return "overlap";
    case SimMode::Exec:
      return "exec";
  }
  return "unknown";
}

SimMode sim_mode_from_string(std::string_view s) {
  if (s == "judge") return SimMode::Judge;
  if (s == "overlap") return SimMode::Overlap;
  if (s == "exec") return SimMode::Exec;
  throw ConfigError("unknown similarity mode '" + std::string(s) + "'");
}

JudgeMatrix judge_matrix(const GoldExample& example, std::span<const std::string> predictions,
                         JudgeClient& judge) {
  JudgeMatrix out;
  out.matrix = SimilarityMatrix(predictions.size(), example.gold_answers.size());
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    for (std::size_t j = 0; j < example.gold_answers.size(); ++j) {
      int equivalent = 0;
      for (const auto& variant : example.gold_answers[j].variants) {
        const JudgeVerdict verdict = judge.assess(
            JudgeQuery{example.context, example.question, variant, predictions[i]});
        if (verdict == JudgeVerdict::Malformed) ++out.malformed_verdicts;
        if (verdict == JudgeVerdict::Correct) {
          equivalent = 1;
          break;
        }
      }
      out.matrix.at(i, j) = static_cast<double>(equivalent);
    }
  }
  return out;
}

double legacy_overlap_f1(const GoldExample& example, const std::string& completion) {
  if (example.task != TaskKind::Qa) {
    throw std::invalid_argument("legacy_overlap_f1 is defined for QA examples only");
  }
  const StructuredResponse parsed = parse_interpretation_answer(completion, example.task);
  double total = 0.0;
  for (const auto& gold : example.gold_answers) {
    double best = 0.0;
    for (const auto& pair : parsed.pairs) {
      for (const auto& variant : gold.variants) {
        best = std::max(best, f1_overlap(pair.answer, variant));
      }
    }
    total += best;
  }
  return total / static_cast<double>(example.gold_answers.size());
}

std::size_t reasoning_length(std::string_view completion) {
  if (auto block = find_answer_block(completion)) {
    return block->prefix.size();
  }
  return completion.size();
}

Evaluator::Evaluator(Options options, JudgeClient* judge)
    : options_(options), judge_(judge) {
  if (options_.mode == SimMode::Judge) {
    if (judge_ == nullptr) {
      throw ConfigError("judge similarity mode requires a judge client");
    }
    cache_ = std::make_unique<CachingJudge>(*judge_);
  }
}

ExampleEval Evaluator::evaluate_example(const GoldExample& example,
                                        const std::string& completion) {
  ExampleEval eval;
  eval.example_id = example.id;
  eval.ambiguous = example.ambiguous;
  eval.task = example.task;
  eval.reasoning_chars = reasoning_length(completion);
  if (example.task == TaskKind::Qa) {
    eval.legacy_overlap_f1 = legacy_overlap_f1(example, completion);
  }

  const StructuredResponse parsed = parse_interpretation_answer(completion, example.task);
  if (!parsed.ok() || parsed.pairs.empty()) {
    eval.parse_failed = true;
    return eval;
  }

  std::vector<std::string> predictions;
  predictions.reserve(parsed.pairs.size());
  for (const auto& pair : parsed.pairs) predictions.push_back(pair.answer);

  SimilarityMatrix s;
  switch (options_.mode) {
    case SimMode::Judge: {
      JudgeMatrix jm = judge_matrix(example, predictions, *cache_);
      s = std::move(jm.matrix);
      eval.malformed_verdicts = jm.malformed_verdicts;
      break;
    }
    case SimMode::Overlap: {
      s = build_similarity_matrix(predictions, example, TextOverlapOracle{});
      break;
    }
    case SimMode::Exec: {
      // Execution match is defined for SQL only; QA examples in a mixed
      // dataset fall back to the overlap oracle.
      if (example.task == TaskKind::Sql) {
        ExecutionOracle oracle(&exec_cache_, options_.exec);
        s = build_similarity_matrix(predictions, example, oracle);
      } else {
        s = build_similarity_matrix(predictions, example, TextOverlapOracle{});
      }
      break;
    }
  }

  const Assignment assignment = optimal_assignment(s);
  eval.recall = assignment.value / static_cast<double>(example.gold_answers.size());
  eval.precision = assignment.value / static_cast<double>(predictions.size());
  eval.full_coverage = eval.recall >= 1.0 - kFullCoverageEps;
  for (const auto& [p, g] : assignment.matches) {
    if (s.at(p, g) >= kSingleCoverageSim) {
      eval.single_coverage = true;
      break;
    }
  }
  return eval;
}

std::vector<ExampleEval> Evaluator::evaluate_dump(std::span<const GoldExample> dataset,
                                                  std::span<const DumpRecord> records) {
  std::unordered_map<std::string, const GoldExample*> by_id;
  for (const auto& ex : dataset) by_id.emplace(ex.id, &ex);

  std::vector<const GoldExample*> examples(records.size());
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto it = by_id.find(records[i].example_id);
    if (it == by_id.end()) {
      throw SchemaViolation("dump references unknown example id '" + records[i].example_id + "'");
    }
    if (!seen.emplace(records[i].example_id, i).second) {
      throw SchemaViolation("dump contains duplicate example id '" + records[i].example_id + "'");
    }
    examples[i] = it->second;
  }

  std::vector<ExampleEval> results(records.size());
  std::vector<std::exception_ptr> failures(records.size());
  const int nthreads = options_.threads > 0 ? options_.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(records.size()); ++i) {
    try {
      results[i] = evaluate_example(*examples[i], records[i].completion_text);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return results;
}

namespace {

void accumulate(SubsetReport* report, std::span<const ExampleEval> results, bool ambiguous) {
  double recall = 0.0, precision = 0.0, full = 0.0, single = 0.0, legacy = 0.0, chars = 0.0;
  std::size_t n = 0, qa = 0, failures = 0;
  for (const auto& r : results) {
    if (r.ambiguous != ambiguous) continue;
    ++n;
    recall += r.recall;
    precision += r.precision;
    full += r.full_coverage ? 1.0 : 0.0;
    single += r.single_coverage ? 1.0 : 0.0;
    chars += static_cast<double>(r.reasoning_chars);
    if (r.parse_failed) ++failures;
    if (r.task == TaskKind::Qa) {
      legacy += r.legacy_overlap_f1;
      ++qa;
    }
  }
  report->n_examples = n;
  report->n_parse_failures = failures;
  if (n > 0) {
    report->recall = 100.0 * recall / static_cast<double>(n);
    report->precision = 100.0 * precision / static_cast<double>(n);
    report->full_coverage = 100.0 * full / static_cast<double>(n);
    report->single_coverage = 100.0 * single / static_cast<double>(n);
    report->mean_reasoning_chars = chars / static_cast<double>(n);
  }
  if (qa > 0) {
    report->legacy_overlap_f1 = 100.0 * legacy / static_cast<double>(qa);
  }
}

}  // namespace

EvalReport aggregate(std::span<const ExampleEval> results) {
  EvalReport report;
  accumulate(&report.ambiguous, results, true);
  accumulate(&report.unambiguous, results, false);
  for (const auto& r : results) report.malformed_verdicts += r.malformed_verdicts;
  return report;
}

std::vector<DumpRecord> load_dump(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SchemaViolation("cannot open completions dump '" + path + "'");
  }
  std::vector<DumpRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto record = nlohmann::json::parse(line);
      records.push_back(DumpRecord{record.at("example_id").get<std::string>(),
                                   record.at("completion_text").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw SchemaViolation(std::string("invalid dump record: ") + e.what(), line_no);
    }
  }
  return records;
}

std::string format_report(const EvalReport& report) {
  const auto row = [](const char* name, const SubsetReport& s) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "%-12s %6zu %8zu %8.1f %10.1f %7.1f %8.1f %10.1f %10.1f\n", name,
                  s.n_examples, s.n_parse_failures, s.recall, s.precision, s.full_coverage,
                  s.single_coverage, s.legacy_overlap_f1, s.mean_reasoning_chars);
    return std::string(buf);
  };
  std::string out;
  out += "subset             n  parse_f   recall  precision    full   single  overlapF1  "
         "reason_chars\n";
  out += row("ambiguous", report.ambiguous);
  out += row("unambiguous", report.unambiguous);
  if (report.malformed_verdicts > 0) {
    out += "malformed judge verdicts: " + std::to_string(report.malformed_verdicts) + "\n";
  }
  return out;
}

}  // namespace ambigeval
