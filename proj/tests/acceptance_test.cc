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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.h"
#include "oracles.h"
#include "tsaug/augment.h"
#include "tsaug/errors.h"
#include "tsaug/preservation.h"
#include "tsaug/proc_backend.h"
#include "tsaug/rules.h"
#include "tsaug/text_metrics.h"

namespace tsaug {
namespace {

using namespace std::chrono_literals;

// Collects failed expectations for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void Near(double got, double want, double tol, const std::string& what) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": got " << got << " want " << want;
    Expect(std::fabs(got - want) <= tol, msg.str());
  }
  bool ok() const { return failed_ == 0; }
  std::string Summary() const {
    std::string s;
    for (const auto& f : failures_) s += "\n    " + f;
    if (failed_ > failures_.size()) s += "\n    ...";
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t failed_ = 0;
};

std::string Mock(const std::string& mode) {
  return std::string(TSAUG_MOCK_SIMPLIFIER) + " " + mode;
}

void BleuOracleSuite(Check& c) {
  const auto start = std::chrono::steady_clock::now();
  BleuConfig two;
  two.max_order = 2;
  BleuConfig three;
  three.max_order = 3;
  const BleuConfig four;
  c.Near(SentenceBleu({"the", "cat"}, {"the", "cat", "sat"}, two), std::exp(-0.5), 1e-6,
         "two-token candidate");
  c.Near(SentenceBleu({"a", "b", "c"}, {"a", "b", "c", "a", "b", "c"}, four), std::exp(-1.0),
         1e-6, "brevity penalty case");
  c.Near(SentenceBleu({"the", "cat", "sat", "on", "mat"},
                      {"the", "cat", "sat", "on", "the", "mat"}, four),
         std::exp(-0.2) * std::pow(1.0 * 0.75 * (2.0 / 3.0) * 0.5, 0.25), 1e-6,
         "five-token candidate");
  c.Near(SentenceBleu({"a", "b", "c", "d"}, {"a", "b", "c", "e", "d"}, three),
         std::exp(-0.25) * std::cbrt(1.0 * (2.0 / 3.0) * 0.5), 1e-6, "order three");
  c.Near(SentenceBleu({"The", "Cat"}, {"the", "cat"}, four), 1.0, 1e-6, "case folding");
  const TokenSeq cfo = Tokenize(testing::kCfoSentence);
  c.Near(SentenceBleu(cfo, cfo, four), 1.0, 0.0, "identity");
  c.Near(SentenceBleu({"x", "y", "z"}, {"a", "b", "c"}, four), 0.0, 0.0, "disjoint");

  std::mt19937 rng(11);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
  std::uniform_int_distribution<std::size_t> len(1, 12);
  std::uniform_int_distribution<std::size_t> tok(0, vocab.size() - 1);
  BleuConfig cased;
  cased.lowercase = false;
  for (int i = 0; i < 200; ++i) {
    TokenSeq a, b;
    for (std::size_t k = len(rng); k > 0; --k) a.push_back(vocab[tok(rng)]);
    for (std::size_t k = len(rng); k > 0; --k) b.push_back(vocab[tok(rng)]);
    c.Near(SentenceBleu(a, b, cased), oracle::CapOrderBleu(a, b, 4), 1e-6, "random pair");
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.Expect(secs < 1.0, "runtime over one second");
}

void DivergenceReportSuite(Check& c) {
  std::mt19937 rng(23);
  const std::vector<std::string> vocab = {"the", "council", "will", "buy", "purchase",
                                          "land", "near", "river", "this", "year", "."};
  std::uniform_int_distribution<std::size_t> len(1, 15);
  std::uniform_int_distribution<std::size_t> tok(0, vocab.size() - 1);
  std::vector<TextPair> pairs;
  std::map<std::string, std::vector<double>> naive;
  for (int i = 0; i < 50; ++i) {
    std::string orig, simp;
    for (std::size_t k = len(rng); k > 0; --k) orig += vocab[tok(rng)] + " ";
    for (std::size_t k = len(rng); k > 0; --k) simp += vocab[tok(rng)] + " ";
    const std::string field = i % 2 ? "premise" : "hypothesis";
    pairs.push_back({field, orig, simp});
    naive[field].push_back(oracle::CapOrderBleu(Tokenize(simp), Tokenize(orig), 4));
  }
  const DivergenceReport report = ComputeDivergence(pairs);
  c.Expect(report.fields.size() == 2, "two fields");
  c.Expect(report.fields.size() == 2 && report.fields[0].field == "hypothesis",
           "first-seen field order");
  for (const auto& f : report.fields) {
    const auto [mean, sd] = oracle::MeanStd(naive[f.field]);
    c.Near(f.mean.value_or(-1), mean, 1e-9, f.field + " mean");
    c.Near(f.std.value_or(-1), sd, 1e-9, f.field + " std");
    char expected[64];
    std::snprintf(expected, sizeof expected, "%.2f ± %.2f", mean, sd);
    c.Expect(FormatMeanStd(f) == expected, "rendering " + FormatMeanStd(f));
  }
  FieldDivergence table_style{"premise", 1, 0.6712, 0.1648};
  c.Expect(FormatMeanStd(table_style) == "0.67 ± 0.16", "two-decimal style");
}

void PreservationIdentitySuite(Check& c) {
  std::mt19937 rng(1000);
  std::size_t passed = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const RelationExample ex = testing::RandomRelation(rng, i);
    const PreservationVerdict v = CheckPreservation(ex, RelationText(ex));
    if (!v.passed) {
      c.Expect(false, "example " + std::to_string(i) + " failed");
      continue;
    }
    const RelationExample out = ApplyVerdict(ex, v);
    const bool same =
        Tokenize(JoinTokens(Surface(out, EntityRole::kSubject))) ==
            Tokenize(JoinTokens(Surface(ex, EntityRole::kSubject))) &&
        Tokenize(JoinTokens(Surface(out, EntityRole::kObject))) ==
            Tokenize(JoinTokens(Surface(ex, EntityRole::kObject)));
    c.Expect(same, "example " + std::to_string(i) + " surfaces differ");
    if (same) ++passed;
  }
  c.Expect(passed == 1000, "pass count " + std::to_string(passed));
}

std::multiset<std::string> Labels(const Dataset& ds) {
  std::multiset<std::string> labels;
  for (const auto& r : ds.records) labels.insert(RecordLabel(r));
  return labels;
}

void SizeDeterminismSuite(Check& c) {
  const Dataset ds = testing::GenericFixture(10000);
  ProcSimplifier mark(Mock("mark"), 256, 30s);
  AugmentationPlan plan;
  plan.fraction = 0.05;
  plan.seed = 7;
  const AugmentResult first = Augment(ds, mark, plan);
  c.Expect(first.dataset.size() == 10500,
           "append size " + std::to_string(first.dataset.size()));
  const AugmentResult second = Augment(ds, mark, plan);
  c.Expect(SerializeDataset(first.dataset) == SerializeDataset(second.dataset),
           "seed 7 append runs differ");

  plan.strategy = Strategy::kSwap;
  const AugmentResult swap = Augment(ds, mark, plan);
  c.Expect(swap.dataset.size() == ds.size(), "swap size");
  c.Expect(swap.counts.swapped == 500, "swap count");
  c.Expect(Labels(swap.dataset) == Labels(ds), "swap labels");
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (RecordId(swap.dataset.records[i]) != RecordId(ds.records[i]) ||
        RecordLabel(swap.dataset.records[i]) != RecordLabel(ds.records[i])) {
      c.Expect(false, "swap changed id or label at " + std::to_string(i));
      break;
    }
  }
  c.Expect(SerializeDataset(swap.dataset) == SerializeDataset(Augment(ds, mark, plan).dataset),
           "seed 7 swap runs differ");

  plan.seed = 8;
  const AugmentResult other = Augment(ds, mark, plan);
  c.Expect(SerializeDataset(other.dataset) != SerializeDataset(swap.dataset),
           "seeds 7 and 8 produce the same output");
  c.Expect(SelectIndices(10000, 0.05, 7) != SelectIndices(10000, 0.05, 8),
           "seeds 7 and 8 select the same indices");
  mark.Close();
}

void StrategyFixtureSuite(Check& c) {
  const Dataset ds = testing::ThreeRelationFixture();
  RulesSimplifier rules(Lexicon::Parse(testing::kThreeFixtureLexicon));

  AugmentationPlan plan;
  plan.fraction = 1.0;
  plan.seed = 1;
  plan.filter = FilterMode::kEntityPreservation;
  const AugmentResult app = Augment(ds, rules, plan);
  c.Expect(app.dataset.size() == 5, "append size");
  if (app.dataset.size() == 5) {
    c.Expect(RecordId(app.dataset.records[3]) == "r1-simp", "fourth record id");
    c.Expect(RecordId(app.dataset.records[4]) == "r3-simp", "fifth record id");
  }

  const AugmentResult rip = ReplaceIfPreserved(ds, rules);
  std::size_t simplified = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) simplified += rip.dataset.records[i] != ds.records[i];
  c.Expect(simplified == 2, "replace-if-preserved simplified " + std::to_string(simplified));
  c.Expect(rip.dataset.records[1] == ds.records[1], "second example kept");

  std::vector<std::string> texts;
  for (const auto& r : ds.records) texts.push_back(RelationText(std::get<RelationExample>(r)));
  const FilterStats stats = ComputeFilterStats(ds, rules.SimplifyBatch(texts));
  c.Expect(stats.attempted == 3 && stats.passed == 2, "filter counts");
  c.Near(stats.pass_rate, 2.0 / 3.0, 1e-12, "filter rate");
}

void RoundTripSuite(Check& c) {
  testing::TempDir dir;
  RulesSimplifier rules(Lexicon::Load(std::string(TSAUG_TEST_DATA) + "/lexicon.tsv"));
  struct Case {
    Task task;
    std::string file;
    FilterMode filter;
  };
  for (const Case& k : {Case{Task::kRelation, "tacred_sample.json", FilterMode::kEntityPreservation},
                        Case{Task::kNli, "mnli_sample.jsonl", FilterMode::kNone}}) {
    const std::string path = std::string(TSAUG_TEST_DATA) + "/" + k.file;
    const Dataset input = ReadDataset(k.task, path);
    const std::string name(TaskName(k.task));
    c.Expect(ReadFile(path) == SerializeDataset(input), name + " reread differs");

    AugmentationPlan plan;
    plan.fraction = 1.0;
    plan.seed = 3;
    plan.filter = k.filter;
    const AugmentResult app = Augment(input, rules, plan);
    c.Expect(app.counts.appended > 0, name + " appended nothing");
    const auto out = dir / (name + ".out");
    WriteDataset(app.dataset, out);
    const Dataset back = ReadDataset(k.task, out);
    c.Expect(back.records == app.dataset.records, name + " round trip");
    for (std::size_t i = 0; i < input.size(); ++i) {
      c.Expect(SerializeRecord(back.records[i]) == SerializeRecord(input.records[i]),
               name + " prefix record " + std::to_string(i));
    }
    const std::string written = ReadFile(out);
    const std::string original = ReadFile(path);
    const std::size_t cut = k.task == Task::kRelation ? original.rfind("\n]") : original.size();
    c.Expect(written.compare(0, cut, original, 0, cut) == 0, name + " byte prefix");

    plan.strategy = Strategy::kSwap;
    plan.filter = FilterMode::kNone;
    const AugmentResult sw = Augment(input, rules, plan);
    WriteDataset(sw.dataset, out);
    c.Expect(ReadDataset(k.task, out).records == sw.dataset.records, name + " swap round trip");
  }
  const Dataset tsv = ReadNli(std::string(TSAUG_TEST_DATA) + "/mnli_sample.tsv");
  const Dataset jsonl = ReadNli(std::string(TSAUG_TEST_DATA) + "/mnli_sample.jsonl");
  c.Expect(tsv.records == jsonl.records, "tsv and jsonl agree");
}

void BackendConformanceSuite(Check& c) {
  std::vector<std::unique_ptr<Simplifier>> backends;
  backends.push_back(std::make_unique<RulesSimplifier>(
      Lexicon::Load(std::string(TSAUG_TEST_DATA) + "/lexicon.tsv")));
  backends.push_back(std::make_unique<EchoSimplifier>());
  backends.push_back(std::make_unique<ProcSimplifier>(Mock("mark"), 32, 10s));
  for (auto& backend : backends) {
    for (std::size_t n : {1u, 32u, 1000u}) {
      std::vector<std::string> texts;
      for (std::size_t i = 0; i < n; ++i) {
        texts.push_back("item " + std::to_string(i) + " will purchase (soon) a thing");
      }
      const auto out = backend->SimplifyBatch(texts);
      bool ok = out.size() == n;
      for (std::size_t i = 0; ok && i < n; ++i) {
        ok = out[i].original == texts[i] &&
             out[i].simplified.find("item " + std::to_string(i) + " ") != std::string::npos;
      }
      c.Expect(ok, backend->id() + " on " + std::to_string(n) + " texts");
    }
    try {
      backend->Close();
    } catch (const std::exception& e) {
      c.Expect(false, std::string("close: ") + e.what());
    }
  }
  ProcSimplifier drop(Mock("drop 10"), 32, 500ms);
  bool detected = false;
  try {
    std::vector<std::string> texts(100, "some text");
    drop.SimplifyBatch(texts);
  } catch (const BackendError&) {
    detected = true;
  }
  c.Expect(detected, "dropped response not reported");
}

}  // namespace
}  // namespace tsaug

int main() {
  using tsaug::Check;
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"BLEU oracle suite", tsaug::BleuOracleSuite},
      {"divergence report", tsaug::DivergenceReportSuite},
      {"preservation identity law", tsaug::PreservationIdentitySuite},
      {"size and determinism laws", tsaug::SizeDeterminismSuite},
      {"strategy semantics fixture", tsaug::StrategyFixtureSuite},
      {"format round-trip", tsaug::RoundTripSuite},
      {"backend conformance", tsaug::BackendConformanceSuite},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check check;
    try {
      run(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (check.ok() ? "PASS  " : "FAIL  ") << name
              << (check.ok() ? "" : check.Summary()) << "\n";
    failed += !check.ok();
  }
  std::cout << (failed == 0 ? "all acceptance criteria passed"
                            : std::to_string(failed) + " acceptance criteria failed")
            << "\n";
  return failed == 0 ? 0 : 1;
}
