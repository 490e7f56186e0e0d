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

#include "tsaug/preservation.h"

#include <fmt/format.h>

#include "tsaug/errors.h"

namespace tsaug {
namespace {

std::vector<Span> ScanOccurrences(const TokenSeq& haystack, const TokenSeq& needle) {
  std::vector<Span> hits;
  if (needle.empty() || needle.size() > haystack.size()) return hits;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool match = true;
    for (std::size_t k = 0; k < needle.size() && match; ++k) {
      match = haystack[i + k] == needle[k];
    }
    if (match) hits.push_back({i, i + needle.size() - 1});
  }
  return hits;
}

TokenSeq Folded(const TokenSeq& tokens) {
  TokenSeq out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(FoldCase(t));
  return out;
}

PreservationVerdict Fail(PreservationFailure reason, TokenSeq tokens) {
  PreservationVerdict v;
  v.reason = reason;
  v.tokens = std::move(tokens);
  return v;
}

}  // namespace

std::string_view PreservationFailureName(PreservationFailure reason) {
  switch (reason) {
    case PreservationFailure::kSubjectMissing:
      return "subject-missing";
    case PreservationFailure::kObjectMissing:
      return "object-missing";
    case PreservationFailure::kSpansOverlap:
      return "spans-overlap";
  }
  return "spans-overlap";
}

std::vector<Span> FindOccurrences(const TokenSeq& haystack, const TokenSeq& needle) {
  auto exact = ScanOccurrences(haystack, needle);
  if (!exact.empty()) return exact;
  return ScanOccurrences(Folded(haystack), Folded(needle));
}

std::optional<Span> RelocateSpan(const TokenSeq& haystack, const TokenSeq& needle) {
  const auto hits = FindOccurrences(haystack, needle);
  if (hits.empty()) return std::nullopt;
  return hits.front();
}

PreservationVerdict CheckPreservation(const RelationExample& example,
                                      std::string_view simplified) {
  TokenSeq tokens = Tokenize(simplified);
  const TokenSeq subj_needle =
      Tokenize(JoinTokens(Surface(example, EntityRole::kSubject)));
  const TokenSeq obj_needle =
      Tokenize(JoinTokens(Surface(example, EntityRole::kObject)));

  const auto subjects = FindOccurrences(tokens, subj_needle);
  if (subjects.empty()) {
    return Fail(PreservationFailure::kSubjectMissing, std::move(tokens));
  }
  const auto objects = FindOccurrences(tokens, obj_needle);
  if (objects.empty()) {
    return Fail(PreservationFailure::kObjectMissing, std::move(tokens));
  }
  for (const Span& s : subjects) {
    for (const Span& o : objects) {
      if (!s.Overlaps(o)) {
        PreservationVerdict v;
        v.passed = true;
        v.subj = s;
        v.obj = o;
        v.tokens = std::move(tokens);
        return v;
      }
    }
  }
  return Fail(PreservationFailure::kSpansOverlap, std::move(tokens));
}

std::string RelationText(const RelationExample& example) {
  return JoinTokens(example.tokens);
}

RelationExample ApplyVerdict(const RelationExample& example,
                             const PreservationVerdict& verdict) {
  RelationExample out = example;
  out.tokens = verdict.tokens;
  out.subj = verdict.subj;
  out.obj = verdict.obj;
  out.pos.reset();
  out.ner.reset();
  return out;
}

FilterStats ComputeFilterStats(const Dataset& dataset,
                               const std::vector<SimplifyOutcome>& outcomes) {
  if (dataset.task != Task::kRelation) {
    throw ConfigError("filter statistics need a relation dataset");
  }
  if (outcomes.size() != dataset.records.size()) {
    throw ValidationError(fmt::format("{} outcomes for {} examples", outcomes.size(),
                                      dataset.records.size()));
  }
  FilterStats stats;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& ex = std::get<RelationExample>(dataset.records[i]);
    const bool passed = CheckPreservation(ex, outcomes[i].simplified).passed;
    ++stats.attempted;
    if (passed) ++stats.passed;
    if (outcomes[i].error) ++stats.errors;
    if (outcomes[i].changed) {
      ++stats.changed;
      if (passed) ++stats.changed_passed;
    }
  }
  if (stats.attempted > 0) {
    stats.pass_rate = static_cast<double>(stats.passed) / static_cast<double>(stats.attempted);
  }
  if (stats.changed > 0) {
    stats.changed_pass_rate =
        static_cast<double>(stats.changed_passed) / static_cast<double>(stats.changed);
  }
  return stats;
}

std::string RenderFilterStats(const FilterStats& stats) {
  return fmt::format("attempted={} passed={} rate={:.2f}%", stats.attempted,
                     stats.passed, stats.pass_rate * 100.0);
}

nlohmann::ordered_json FilterStatsToJson(const FilterStats& stats) {
  return {
      {"attempted", stats.attempted},
      {"passed", stats.passed},
      {"pass_rate", stats.pass_rate},
      {"changed", stats.changed},
      {"changed_passed", stats.changed_passed},
      {"changed_pass_rate", stats.changed_pass_rate},
      {"errors", stats.errors},
  };
}

}  // namespace tsaug
