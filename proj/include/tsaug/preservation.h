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

#ifndef TSAUG_PRESERVATION_H_
#define TSAUG_PRESERVATION_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tsaug/dataset.h"
#include "tsaug/simplifier.h"

namespace tsaug {

enum class PreservationFailure { kSubjectMissing, kObjectMissing, kSpansOverlap };

std::string_view PreservationFailureName(PreservationFailure reason);

struct PreservationVerdict {
  bool passed = false;
  // Set when passed. Index into `tokens`.
  Span subj;
  Span obj;
  // Set when !passed.
  std::optional<PreservationFailure> reason;
  // Tokenized simplified text.
  TokenSeq tokens;
};

// First contiguous exact occurrence of `needle`, or failing that the first
// case-folded occurrence. `needle` must be non-empty.
std::optional<Span> RelocateSpan(const TokenSeq& haystack, const TokenSeq& needle);

// Every start of `needle` under the same policy as RelocateSpan: all exact
// occurrences if there is at least one, else all case-folded occurrences.
std::vector<Span> FindOccurrences(const TokenSeq& haystack, const TokenSeq& needle);

// Decides whether `simplified` still contains both entities of `example`.
// Entity surfaces are re-tokenized with the shared tokenizer before matching.
// Subject occurrences are tried in order; the first one with a non-overlapping
// object occurrence wins, taking that object's first such occurrence.
PreservationVerdict CheckPreservation(const RelationExample& example,
                                      std::string_view simplified);

// Text handed to simplifiers for a relation example.
std::string RelationText(const RelationExample& example);

// The simplified record for a passing verdict: tokens and spans replaced,
// per-token annotations dropped, every other field copied.
RelationExample ApplyVerdict(const RelationExample& example,
                             const PreservationVerdict& verdict);

struct FilterStats {
  std::size_t attempted = 0;
  std::size_t passed = 0;
  double pass_rate = 0.0;
  // Outcomes with changed == true, and how many of those passed.
  std::size_t changed = 0;
  std::size_t changed_passed = 0;
  double changed_pass_rate = 0.0;
  std::size_t errors = 0;
};

// Counts pass verdicts over aligned outcomes. Unchanged and error outcomes are
// judged like any other (their text is the original, so they pass); errors
// are also tallied separately.
FilterStats ComputeFilterStats(const Dataset& dataset,
                               const std::vector<SimplifyOutcome>& outcomes);

// "attempted=N passed=M rate=P%"
std::string RenderFilterStats(const FilterStats& stats);
nlohmann::ordered_json FilterStatsToJson(const FilterStats& stats);

}  // namespace tsaug

#endif  // TSAUG_PRESERVATION_H_
