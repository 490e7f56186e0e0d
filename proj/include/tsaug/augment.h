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

#ifndef TSAUG_AUGMENT_H_
#define TSAUG_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tsaug/dataset.h"
#include "tsaug/simplifier.h"

namespace tsaug {

enum class Strategy { kAppend, kSwap, kReplaceIfPreserved };
enum class FilterMode { kNone, kEntityPreservation };
enum class EvalMode { kOriginal, kSimplified, kSimplifiedComplement };

std::string_view StrategyName(Strategy s);
std::optional<Strategy> ParseStrategy(std::string_view name);
std::string_view FilterModeName(FilterMode f);
std::optional<FilterMode> ParseFilterMode(std::string_view name);
std::string_view EvalModeName(EvalMode m);
std::optional<EvalMode> ParseEvalMode(std::string_view name);

struct AugmentationPlan {
  Strategy strategy = Strategy::kAppend;
  // Required for append and swap; must be absent for replace-if-preserved.
  std::optional<double> fraction;
  std::uint64_t seed = 0;
  FilterMode filter = FilterMode::kNone;
  // Text fields to simplify. Empty selects the task default: "sentence" for
  // relation, "premise" and "hypothesis" for nli, every field for generic.
  std::vector<std::string> fields;
  std::string id_suffix = "-simp";
};

// Throws ConfigError when the plan is inconsistent or does not fit `task`.
void ValidatePlan(const AugmentationPlan& plan, Task task);

// Resolved field selection for `task`, validated against its field names.
std::vector<std::string> ResolveFields(Task task, const std::vector<std::string>& fields);

// Named text fields of `record` restricted to `fields` (already resolved with
// ResolveFields; empty means every field of a generic record).
std::vector<std::pair<std::string, std::string>> RecordTextFields(
    const Record& record, const std::vector<std::string>& fields);

// floor(fraction * n) indices taken as the prefix of a seed-keyed permutation
// of 0..n-1, returned ascending. Same arguments give the same set on every
// platform.
std::vector<std::size_t> SelectIndices(std::size_t n, double fraction,
                                       std::uint64_t seed);

struct AugmentCounts {
  std::size_t input = 0;
  std::size_t output = 0;
  std::size_t selected = 0;
  std::size_t appended = 0;
  // Records replaced in place by their simplified form.
  std::size_t swapped = 0;
  // Selected records whose simplification left every field unchanged.
  std::size_t unchanged = 0;
  // Selected records with a per-text backend failure.
  std::size_t failed = 0;
  // Relation records whose entities could not be found after simplification.
  std::size_t filtered = 0;
};

struct AugmentResult {
  Dataset dataset;
  AugmentCounts counts;
};

AugmentResult AugmentAppend(const Dataset& dataset, Simplifier& backend,
                            const AugmentationPlan& plan);
AugmentResult AugmentSwap(const Dataset& dataset, Simplifier& backend,
                          const AugmentationPlan& plan);
// Relation datasets only: simplified record where entities survive, original
// record otherwise.
AugmentResult ReplaceIfPreserved(const Dataset& dataset, Simplifier& backend);

// Dispatches on plan.strategy after ValidatePlan.
AugmentResult Augment(const Dataset& dataset, Simplifier& backend,
                      const AugmentationPlan& plan);

AugmentResult PrepareEval(const Dataset& dataset, Simplifier& backend,
                          EvalMode mode, const std::vector<std::string>& fields = {});

nlohmann::ordered_json CountsToJson(const AugmentCounts& counts);
nlohmann::ordered_json PlanToJson(const AugmentationPlan& plan, Task task);

}  // namespace tsaug

#endif  // TSAUG_AUGMENT_H_
