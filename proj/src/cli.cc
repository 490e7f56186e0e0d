// Copyright 2026 The tsaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tsaug/cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "tsaug/augment.h"
#include "tsaug/dataset.h"
#include "tsaug/errors.h"
#include "tsaug/preservation.h"
#include "tsaug/simplifier.h"
#include "tsaug/text_metrics.h"

namespace tsaug {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";
constexpr const char* kBackendEnv = "TSAUG_BACKEND";
constexpr const char* kManifestSuffix = ".manifest";

struct BackendOptions {
  std::string spec;
  std::size_t batch_size = 32;
  long long timeout_ms = 30000;
  std::size_t max_concurrency = 4;
};

struct DatasetOptions {
  std::string task;
  std::string input;
  std::string output;
  std::vector<std::string> fields;
  bool force = false;
};

void AddBackendOptions(CLI::App* cmd, BackendOptions* opts) {
  cmd->add_option("--backend,-b", opts->spec,
                  "echo | rules[:LEXICON] | proc:CMD | http:URL (default: $TSAUG_BACKEND)");
  cmd->add_option("--batch-size", opts->batch_size, "Texts per backend request")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--timeout-ms", opts->timeout_ms, "Backend startup/stall timeout")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-concurrency", opts->max_concurrency,
                  "Concurrent requests for http backends")
      ->check(CLI::PositiveNumber);
}

void AddDatasetOptions(CLI::App* cmd, DatasetOptions* opts) {
  cmd->add_option("--task,-t", opts->task, "relation | nli | generic")
      ->required()
      ->check(CLI::IsMember({"relation", "nli", "generic"}));
  cmd->add_option("--input,-i", opts->input, "Input dataset")->required();
  cmd->add_option("--output,-o", opts->output, "Output dataset")->required();
  cmd->add_option("--fields", opts->fields, "Text fields to simplify (comma-separated)")
      ->delimiter(',');
  cmd->add_flag("--force", opts->force, "Overwrite existing output and manifest");
}

std::unique_ptr<Simplifier> OpenBackend(const BackendOptions& opts) {
  std::string text = opts.spec;
  if (text.empty()) {
    if (const char* env = std::getenv(kBackendEnv)) text = env;
  }
  if (text.empty()) {
    throw ConfigError(fmt::format("no backend given (use --backend or set {})", kBackendEnv));
  }
  BackendSpec spec = ParseBackendSpec(text);
  spec.batch_size = opts.batch_size;
  spec.timeout = std::chrono::milliseconds(opts.timeout_ms);
  spec.max_concurrency = opts.max_concurrency;
  try {
    return MakeSimplifier(spec);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
}

Task RequireTask(const std::string& name) {
  auto task = ParseTask(name);
  if (!task) throw ConfigError("unknown task " + name);
  return *task;
}

Dataset LoadInput(Task task, const std::string& path) {
  try {
    return ReadDataset(task, path);
  } catch (const IoError& e) {
    throw ValidationError(e.what());
  }
}

void CheckOverwrite(const std::string& output, bool force) {
  if (force) return;
  for (const fs::path& p : {fs::path(output), fs::path(output + kManifestSuffix)}) {
    if (fs::exists(p)) {
      throw ConfigError(fmt::format("{} exists (pass --force to overwrite)", p.string()));
    }
  }
}

// Runs the backend and always releases it; a failed close is a backend error.
template <typename Fn>
auto WithBackend(Simplifier& backend, Fn&& fn) {
  try {
    auto result = fn();
    backend.Close();
    return result;
  } catch (...) {
    try {
      backend.Close();
    } catch (...) {
    }
    throw;
  }
}

ojson ManifestHeader(const char* command, Task task, const DatasetOptions& d,
                     const std::string& backend_id) {
  ojson m;
  m["tool"] = "tsaug";
  m["version"] = kVersion;
  m["command"] = command;
  m["task"] = std::string(TaskName(task));
  m["input"] = d.input;
  m["output"] = d.output;
  m["backend"] = backend_id;
  return m;
}

void WriteOutputs(const Dataset& dataset, const std::string& output, const ojson& manifest) {
  WriteDataset(dataset, output);
  WriteFile(output + kManifestSuffix, manifest.dump(2) + "\n");
}

int CmdSimplify(const BackendOptions& b, const std::string& input, const std::string& output) {
  std::string content;
  if (input == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    content = buf.str();
  } else {
    try {
      content = ReadFile(input);
    } catch (const IoError& e) {
      throw ValidationError(e.what());
    }
  }
  std::vector<std::string> lines;
  std::istringstream in(content);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }

  std::vector<std::string> texts;
  std::vector<std::size_t> where;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (NormalizeWhitespace(lines[i]).empty()) continue;
    texts.push_back(lines[i]);
    where.push_back(i);
  }
  auto backend = OpenBackend(b);
  const auto outcomes = WithBackend(*backend, [&] { return backend->SimplifyBatch(texts); });
  std::size_t failed = 0;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (outcomes[k].error) ++failed;
    std::string text = outcomes[k].simplified;
    for (char& c : text) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    lines[where[k]] = std::move(text);
  }
  std::string rendered;
  for (const auto& l : lines) rendered += l + "\n";
  if (output == "-") {
    std::cout << rendered << std::flush;
  } else {
    WriteFile(output, rendered);
  }
  if (failed > 0) spdlog::warn("{} of {} texts failed and were kept as is", failed, texts.size());
  return kExitOk;
}

struct AugmentOptions {
  std::string strategy = "append";
  double fraction = 0.0;
  bool fraction_given = false;
  std::uint64_t seed = 0;
  std::string filter = "none";
  std::string id_suffix = "-simp";
};

int CmdAugment(const DatasetOptions& d, const BackendOptions& b, const AugmentOptions& a) {
  const Task task = RequireTask(d.task);
  AugmentationPlan plan;
  plan.strategy = *ParseStrategy(a.strategy);
  if (a.fraction_given) plan.fraction = a.fraction;
  plan.seed = a.seed;
  plan.filter = *ParseFilterMode(a.filter);
  plan.fields = d.fields;
  plan.id_suffix = a.id_suffix;
  ValidatePlan(plan, task);
  CheckOverwrite(d.output, d.force);

  const Dataset input = LoadInput(task, d.input);
  auto backend = OpenBackend(b);
  const AugmentResult result =
      WithBackend(*backend, [&] { return Augment(input, *backend, plan); });

  ojson manifest = ManifestHeader("augment", task, d, backend->id());
  manifest["plan"] = PlanToJson(plan, task);
  manifest["counts"] = CountsToJson(result.counts);
  WriteOutputs(result.dataset, d.output, manifest);

  const auto& c = result.counts;
  std::cout << fmt::format(
      "input={} output={} selected={} appended={} swapped={} unchanged={} failed={} "
      "filtered={}\n",
      c.input, c.output, c.selected, c.appended, c.swapped, c.unchanged, c.failed,
      c.filtered);
  return kExitOk;
}

int CmdPrepareEval(const DatasetOptions& d, const BackendOptions& b, const std::string& mode_name) {
  const Task task = RequireTask(d.task);
  const EvalMode mode = *ParseEvalMode(mode_name);
  if (mode == EvalMode::kSimplifiedComplement && task != Task::kRelation) {
    throw ConfigError("simplified-complement needs a relation dataset");
  }
  ResolveFields(task, d.fields);
  CheckOverwrite(d.output, d.force);

  const Dataset input = LoadInput(task, d.input);
  std::unique_ptr<Simplifier> backend;
  if (mode == EvalMode::kOriginal) {
    backend = std::make_unique<EchoSimplifier>();
  } else {
    backend = OpenBackend(b);
  }
  const AugmentResult result =
      WithBackend(*backend, [&] { return PrepareEval(input, *backend, mode, d.fields); });

  ojson manifest = ManifestHeader("prepare-eval", task, d,
                                  mode == EvalMode::kOriginal ? "none" : backend->id());
  manifest["eval_mode"] = std::string(EvalModeName(mode));
  manifest["fields"] = ResolveFields(task, d.fields);
  manifest["counts"] = CountsToJson(result.counts);
  WriteOutputs(result.dataset, d.output, manifest);
  std::cout << fmt::format("input={} output={} simplified={} unchanged={} failed={} filtered={}\n",
                           result.counts.input, result.counts.output, result.counts.swapped,
                           result.counts.unchanged, result.counts.failed,
                           result.counts.filtered);
  return kExitOk;
}

struct ReportOptions {
  std::string task;
  std::string original;
  std::string simplified;
  std::string manifest;
  std::vector<std::string> fields;
  std::string json_out;
  int max_order = 4;
  std::string zero_policy = "cap-order";
  bool no_lowercase = false;
  bool changed_only = false;
};

std::vector<TextPair> PairRecords(const Record& original, const Record& simplified,
                                  const std::vector<std::string>& fields, bool changed_only) {
  const auto orig = RecordTextFields(original, fields);
  const auto simp = RecordTextFields(simplified, fields);
  std::unordered_map<std::string, std::string> simp_by_field(simp.begin(), simp.end());
  std::vector<TextPair> pairs;
  bool any_changed = false;
  for (const auto& [field, text] : orig) {
    auto it = simp_by_field.find(field);
    if (it == simp_by_field.end()) continue;
    any_changed |= NormalizeWhitespace(text) != NormalizeWhitespace(it->second);
    pairs.push_back({field, text, it->second});
  }
  if (changed_only && !any_changed) return {};
  return pairs;
}

std::vector<TextPair> AlignedPairs(const Dataset& original, const Dataset& simplified,
                                   const std::vector<std::string>& fields, bool changed_only) {
  if (original.size() != simplified.size()) {
    throw ValidationError(fmt::format("datasets are not aligned: {} vs {} records",
                                      original.size(), simplified.size()));
  }
  std::vector<TextPair> pairs;
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (RecordId(original.records[i]) != RecordId(simplified.records[i])) {
      throw ValidationError(fmt::format("datasets are not aligned at record {}", i));
    }
    auto p = PairRecords(original.records[i], simplified.records[i], fields, changed_only);
    std::move(p.begin(), p.end(), std::back_inserter(pairs));
  }
  return pairs;
}

// Pairs each appended record with the source record its id was derived from.
std::vector<TextPair> AppendedPairs(const Dataset& original, const Dataset& output,
                                    const std::string& suffix,
                                    const std::vector<std::string>& fields) {
  if (output.size() < original.size()) {
    throw ValidationError("augmented dataset is shorter than its input");
  }
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (RecordId(original.records[i]) != RecordId(output.records[i])) {
      throw ValidationError(fmt::format("augmented dataset differs from input at record {}", i));
    }
    by_id.emplace(RecordId(original.records[i]), i);
  }
  std::vector<TextPair> pairs;
  for (std::size_t i = original.size(); i < output.size(); ++i) {
    const std::string& id = RecordId(output.records[i]);
    if (!id.ends_with(suffix)) {
      throw ValidationError(fmt::format("appended record {} lacks the id suffix", i));
    }
    auto it = by_id.find(id.substr(0, id.size() - suffix.size()));
    if (it == by_id.end()) {
      throw ValidationError(fmt::format("appended record {} has no source record", i));
    }
    auto p = PairRecords(original.records[it->second], output.records[i], fields, false);
    std::move(p.begin(), p.end(), std::back_inserter(pairs));
  }
  return pairs;
}

int CmdReport(const ReportOptions& r) {
  BleuConfig cfg;
  cfg.max_order = r.max_order;
  cfg.zero_policy = *ParseZeroPolicy(r.zero_policy);
  cfg.lowercase = !r.no_lowercase;

  std::vector<TextPair> pairs;
  std::vector<std::string> fields;
  if (!r.manifest.empty()) {
    ojson m;
    try {
      m = ojson::parse(ReadFile(r.manifest));
    } catch (const std::exception& e) {
      throw ValidationError(fmt::format("cannot read manifest: {}", e.what()));
    }
    if (!m.contains("task") || !m.contains("input") || !m.contains("output")) {
      throw ValidationError("manifest lacks task/input/output");
    }
    const Task task = RequireTask(m["task"].get<std::string>());
    fields = ResolveFields(task, r.fields);
    const Dataset original = LoadInput(task, m["input"].get<std::string>());
    const Dataset output = LoadInput(task, m["output"].get<std::string>());
    const bool appended = m.contains("plan") && m["plan"]["strategy"] == "append";
    pairs = appended ? AppendedPairs(original, output,
                                     m["plan"]["id_suffix"].get<std::string>(), fields)
                     : AlignedPairs(original, output, fields, r.changed_only);
  } else {
    if (r.task.empty() || r.original.empty() || r.simplified.empty()) {
      throw ConfigError("report needs --task, --original and --simplified, or --manifest");
    }
    const Task task = RequireTask(r.task);
    fields = ResolveFields(task, r.fields);
    const Dataset original = LoadInput(task, r.original);
    const Dataset simplified = LoadInput(task, r.simplified);
    pairs = AlignedPairs(original, simplified, fields, r.changed_only);
  }

  const DivergenceReport report = ComputeDivergence(pairs, cfg, fields);
  std::cout << RenderReportText(report);
  if (!r.json_out.empty()) WriteFile(r.json_out, ReportToJson(report).dump(2) + "\n");
  return kExitOk;
}

int CmdFilterStats(const std::string& input, const BackendOptions& b, const std::string& json_out) {
  const Dataset dataset = LoadInput(Task::kRelation, input);
  std::vector<std::string> texts;
  texts.reserve(dataset.size());
  for (const auto& r : dataset.records) {
    texts.push_back(RelationText(std::get<RelationExample>(r)));
  }
  auto backend = OpenBackend(b);
  const auto outcomes = WithBackend(*backend, [&] { return backend->SimplifyBatch(texts); });
  const FilterStats stats = ComputeFilterStats(dataset, outcomes);
  std::cout << RenderFilterStats(stats) << "\n"
            << fmt::format("changed={} changed_passed={} changed_rate={:.2f}% errors={}\n",
                           stats.changed, stats.changed_passed,
                           stats.changed_pass_rate * 100.0, stats.errors);
  if (!json_out.empty()) {
    ojson j = FilterStatsToJson(stats);
    j["backend"] = backend->id();
    j["input"] = input;
    WriteFile(json_out, j.dump(2) + "\n");
  }
  return kExitOk;
}

void ConfigureLogging(const std::string& level) {
  auto logger = spdlog::get("tsaug");
  if (!logger) logger = spdlog::stderr_logger_mt("tsaug");
  logger->set_pattern("tsaug: %l: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(level));
}

}  // namespace

int RunCli(int argc, const char* const* argv) {
  CLI::App app{"Text simplification for NLP data pipelines: prediction-time "
               "simplification, training-set augmentation, and BLEU divergence "
               "reports."};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "debug | info | warn | error | off")
      ->check(CLI::IsMember({"debug", "info", "warn", "error", "off"}));

  BackendOptions backend_opts;

  auto* simplify = app.add_subcommand("simplify", "Simplify raw text lines");
  std::string simplify_in = "-";
  std::string simplify_out = "-";
  simplify->add_option("--input,-i", simplify_in, "Text file, one text per line ('-' = stdin)");
  simplify->add_option("--output,-o", simplify_out, "Destination ('-' = stdout)");
  AddBackendOptions(simplify, &backend_opts);

  auto* augment = app.add_subcommand("augment", "Build an augmented training set");
  DatasetOptions augment_data;
  AugmentOptions augment_opts;
  AddDatasetOptions(augment, &augment_data);
  AddBackendOptions(augment, &backend_opts);
  augment->add_option("--strategy", augment_opts.strategy, "append | swap | replace-if-preserved")
      ->check(CLI::IsMember({"append", "swap", "replace-if-preserved"}));
  auto* fraction_opt = augment->add_option("--fraction", augment_opts.fraction,
                                           "Fraction of examples to simplify")
                           ->check(CLI::Range(0.0, 1.0));
  augment->add_option("--seed", augment_opts.seed, "Sampling seed")->required();
  augment->add_option("--filter", augment_opts.filter, "entity-preservation | none")
      ->check(CLI::IsMember({"entity-preservation", "none"}));
  augment->add_option("--id-suffix", augment_opts.id_suffix, "Suffix for appended ids");

  auto* prepare = app.add_subcommand("prepare-eval", "Simplify evaluation data");
  DatasetOptions prepare_data;
  std::string eval_mode;
  AddDatasetOptions(prepare, &prepare_data);
  AddBackendOptions(prepare, &backend_opts);
  prepare->add_option("--mode", eval_mode, "original | simplified | simplified-complement")
      ->required()
      ->check(CLI::IsMember({"original", "simplified", "simplified-complement"}));

  auto* report = app.add_subcommand("report", "BLEU divergence between original and simplified data");
  ReportOptions report_opts;
  report->add_option("--task,-t", report_opts.task, "relation | nli | generic")
      ->check(CLI::IsMember({"relation", "nli", "generic"}));
  report->add_option("--original", report_opts.original, "Original dataset");
  report->add_option("--simplified", report_opts.simplified, "Simplified dataset, aligned by id");
  report->add_option("--manifest", report_opts.manifest, "Manifest of an augment/prepare-eval run");
  report->add_option("--fields", report_opts.fields, "Fields to report")->delimiter(',');
  report->add_option("--json", report_opts.json_out, "Write the structured report here");
  report->add_option("--max-order", report_opts.max_order, "Maximum n-gram order")
      ->check(CLI::PositiveNumber);
  report->add_option("--zero-policy", report_opts.zero_policy, "cap-order | score-zero")
      ->check(CLI::IsMember({"cap-order", "score-zero"}));
  report->add_flag("--no-lowercase", report_opts.no_lowercase, "Score case-sensitively");
  report->add_flag("--changed-only", report_opts.changed_only,
                   "Skip aligned records whose text did not change");

  auto* filter = app.add_subcommand("filter-stats", "Entity preservation rate of a backend");
  std::string filter_in;
  std::string filter_json;
  filter->add_option("--input,-i", filter_in, "Relation dataset")->required();
  filter->add_option("--json", filter_json, "Write the structured record here");
  AddBackendOptions(filter, &backend_opts);

  try {
    app.parse(argc, argv);
    augment_opts.fraction_given = fraction_opt->count() > 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "tsaug: " << e.what() << "\n";
    const CLI::App* failing = &app;
    for (const auto* sub : app.get_subcommands()) failing = sub;
    std::cerr << failing->help();
    return kExitConfig;
  }
  ConfigureLogging(log_level);

  try {
    if (*simplify) return CmdSimplify(backend_opts, simplify_in, simplify_out);
    if (*augment) return CmdAugment(augment_data, backend_opts, augment_opts);
    if (*prepare) return CmdPrepareEval(prepare_data, backend_opts, eval_mode);
    if (*report) return CmdReport(report_opts);
    if (*filter) return CmdFilterStats(filter_in, backend_opts, filter_json);
  } catch (const ConfigError& e) {
    std::cerr << "tsaug: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::cerr << "tsaug: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BackendError& e) {
    std::cerr << "tsaug: backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const std::exception& e) {
    std::cerr << "tsaug: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitConfig;
}

}  // namespace tsaug
