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

#include "tsaug/augment.h"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "tsaug/errors.h"
#include "tsaug/preservation.h"

namespace tsaug {
namespace {

enum class CandidateStatus { kApplied, kUnchanged, kFailed, kFiltered };

struct Candidate {
  CandidateStatus status = CandidateStatus::kUnchanged;
  std::optional<Record> simplified;
};

// (record position in the request list, field name) for each dispatched text.
struct TextSlot {
  std::size_t request;
  std::string field;
};

// Dispatchable text fields: blank texts are left as they are.
std::vector<std::pair<std::string, std::string>> TextFields(
    const Record& record, const std::vector<std::string>& fields) {
  auto out = RecordTextFields(record, fields);
  std::erase_if(out, [](const auto& f) { return NormalizeWhitespace(f.second).empty(); });
  return out;
}

Record WithTexts(const Record& record,
                 const std::vector<std::pair<std::string, std::string>>& texts) {
  Record out = record;
  if (auto* n = std::get_if<NliExample>(&out)) {
    for (const auto& [field, text] : texts) {
      if (field == "premise") n->premise = text;
      if (field == "hypothesis") n->hypothesis = text;
    }
  } else if (auto* g = std::get_if<GenericExample>(&out)) {
    for (const auto& [field, text] : texts) {
      for (auto& [name, value] : g->fields) {
        if (name == field) value = text;
      }
    }
  }
  return out;
}

// Simplifies the selected fields of dataset.records[indices[k]] for every k.
// Result k is the candidate replacement for indices[k].
std::vector<Candidate> SimplifyRecords(const Dataset& dataset,
                                       const std::vector<std::size_t>& indices,
                                       Simplifier& backend,
                                       const std::vector<std::string>& fields) {
  std::vector<std::string> texts;
  std::vector<TextSlot> slots;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    for (auto& [field, text] : TextFields(dataset.records[indices[k]], fields)) {
      slots.push_back({k, field});
      texts.push_back(std::move(text));
    }
  }
  const std::vector<SimplifyOutcome> outcomes = backend.SimplifyBatch(texts);

  std::vector<std::vector<std::size_t>> per_request(indices.size());
  for (std::size_t s = 0; s < slots.size(); ++s) per_request[slots[s].request].push_back(s);

  std::vector<Candidate> candidates(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    Candidate& c = candidates[k];
    const Record& source = dataset.records[indices[k]];
    bool any_error = false;
    bool any_changed = false;
    for (std::size_t s : per_request[k]) {
      any_error |= outcomes[s].error.has_value();
      any_changed |= outcomes[s].changed;
    }
    if (any_error) {
      c.status = CandidateStatus::kFailed;
      spdlog::warn("record {}: simplification failed, left unaugmented", indices[k]);
      continue;
    }
    if (!any_changed) {
      c.status = CandidateStatus::kUnchanged;
      continue;
    }
    if (const auto* rel = std::get_if<RelationExample>(&source)) {
      const auto& outcome = outcomes[per_request[k].front()];
      const PreservationVerdict verdict = CheckPreservation(*rel, outcome.simplified);
      if (!verdict.passed) {
        c.status = CandidateStatus::kFiltered;
        spdlog::debug("record {}: preservation failed ({})", indices[k],
                      PreservationFailureName(*verdict.reason));
        continue;
      }
      c.simplified = Record(ApplyVerdict(*rel, verdict));
    } else {
      std::vector<std::pair<std::string, std::string>> replaced;
      for (std::size_t s : per_request[k]) {
        if (outcomes[s].changed) replaced.emplace_back(slots[s].field, outcomes[s].simplified);
      }
      c.simplified = WithTexts(source, replaced);
    }
    c.status = CandidateStatus::kApplied;
  }
  return candidates;
}

void Tally(const std::vector<Candidate>& candidates, AugmentCounts* counts) {
  for (const auto& c : candidates) {
    switch (c.status) {
      case CandidateStatus::kApplied:
        break;
      case CandidateStatus::kUnchanged:
        ++counts->unchanged;
        break;
      case CandidateStatus::kFailed:
        ++counts->failed;
        break;
      case CandidateStatus::kFiltered:
        ++counts->filtered;
        break;
    }
  }
}

void SetId(Record& record, std::string id) {
  if (auto* n = std::get_if<NliExample>(&record)) {
    n->pair_id = std::move(id);
  } else if (auto* r = std::get_if<RelationExample>(&record)) {
    r->id = std::move(id);
  } else {
    std::get<GenericExample>(record).id = std::move(id);
  }
}

// Replaces each selected record that simplified successfully, in place.
AugmentResult SwapSelected(const Dataset& dataset, Simplifier& backend,
                           const std::vector<std::size_t>& indices,
                           const std::vector<std::string>& fields) {
  AugmentResult result;
  result.dataset = dataset;
  result.counts.input = dataset.size();
  result.counts.selected = indices.size();
  auto candidates = SimplifyRecords(dataset, indices, backend, fields);
  Tally(candidates, &result.counts);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (candidates[k].status != CandidateStatus::kApplied) continue;
    result.dataset.records[indices[k]] = std::move(*candidates[k].simplified);
    ++result.counts.swapped;
  }
  result.counts.output = result.dataset.size();
  return result;
}

std::vector<std::size_t> AllIndices(std::size_t n) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  return all;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> RecordTextFields(
    const Record& record, const std::vector<std::string>& fields) {
  std::vector<std::pair<std::string, std::string>> out;
  if (const auto* r = std::get_if<RelationExample>(&record)) {
    out.emplace_back("sentence", RelationText(*r));
  } else if (const auto* n = std::get_if<NliExample>(&record)) {
    for (const auto& f : fields) {
      if (f == "premise") out.emplace_back(f, n->premise);
      if (f == "hypothesis") out.emplace_back(f, n->hypothesis);
    }
  } else {
    const auto& g = std::get<GenericExample>(record);
    for (const auto& [name, text] : g.fields) {
      if (std::find(fields.begin(), fields.end(), name) != fields.end() ||
          fields.empty()) {
        out.emplace_back(name, text);
      }
    }
  }
  return out;
}

std::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kAppend:
      return "append";
    case Strategy::kSwap:
      return "swap";
    case Strategy::kReplaceIfPreserved:
      return "replace-if-preserved";
  }
  return "append";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  if (name == "append") return Strategy::kAppend;
  if (name == "swap") return Strategy::kSwap;
  if (name == "replace-if-preserved") return Strategy::kReplaceIfPreserved;
  return std::nullopt;
}

std::string_view FilterModeName(FilterMode f) {
  return f == FilterMode::kEntityPreservation ? "entity-preservation" : "none";
}

std::optional<FilterMode> ParseFilterMode(std::string_view name) {
  if (name == "entity-preservation") return FilterMode::kEntityPreservation;
  if (name == "none") return FilterMode::kNone;
  return std::nullopt;
}

std::string_view EvalModeName(EvalMode m) {
  switch (m) {
    case EvalMode::kOriginal:
      return "original";
    case EvalMode::kSimplified:
      return "simplified";
    case EvalMode::kSimplifiedComplement:
      return "simplified-complement";
  }
  return "original";
}

std::optional<EvalMode> ParseEvalMode(std::string_view name) {
  if (name == "original") return EvalMode::kOriginal;
  if (name == "simplified") return EvalMode::kSimplified;
  if (name == "simplified-complement") return EvalMode::kSimplifiedComplement;
  return std::nullopt;
}

std::vector<std::string> ResolveFields(Task task, const std::vector<std::string>& fields) {
  switch (task) {
    case Task::kRelation:
      for (const auto& f : fields) {
        if (f != "sentence") {
          throw ConfigError(fmt::format("relation datasets have one text field "
                                        "'sentence', not '{}'",
                                        f));
        }
      }
      return {"sentence"};
    case Task::kNli: {
      if (fields.empty()) return {"premise", "hypothesis"};
      std::vector<std::string> out;
      for (const auto& f : fields) {
        if (f != "premise" && f != "hypothesis") {
          throw ConfigError(fmt::format("nli text fields are 'premise' and "
                                        "'hypothesis', not '{}'",
                                        f));
        }
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
      }
      return out;
    }
    case Task::kGeneric: {
      std::vector<std::string> out;
      for (const auto& f : fields) {
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
      }
      return out;
    }
  }
  return fields;
}

void ValidatePlan(const AugmentationPlan& plan, Task task) {
  if (plan.strategy == Strategy::kReplaceIfPreserved) {
    if (plan.fraction) {
      throw ConfigError("replace-if-preserved applies to every example; fraction is not allowed");
    }
    if (task != Task::kRelation) {
      throw ConfigError("replace-if-preserved needs a relation dataset");
    }
  } else {
    if (!plan.fraction) {
      throw ConfigError(fmt::format("{} needs a fraction", StrategyName(plan.strategy)));
    }
    if (!(*plan.fraction >= 0.0 && *plan.fraction <= 1.0)) {
      throw ConfigError("fraction must lie in [0, 1]");
    }
  }
  if (plan.filter == FilterMode::kEntityPreservation && task != Task::kRelation) {
    throw ConfigError("entity-preservation filtering needs a relation dataset");
  }
  if (plan.strategy == Strategy::kAppend && plan.id_suffix.empty()) {
    throw ConfigError("append needs a non-empty id suffix");
  }
  ResolveFields(task, plan.fields);
}

AugmentResult AugmentAppend(const Dataset& dataset, Simplifier& backend,
                            const AugmentationPlan& plan) {
  if (plan.strategy != Strategy::kAppend) throw ConfigError("plan strategy is not append");
  ValidatePlan(plan, dataset.task);
  const auto fields = ResolveFields(dataset.task, plan.fields);
  const auto indices = SelectIndices(dataset.size(), *plan.fraction, plan.seed);

  AugmentResult result;
  result.dataset = dataset;
  result.counts.input = dataset.size();
  result.counts.selected = indices.size();
  auto candidates = SimplifyRecords(dataset, indices, backend, fields);
  Tally(candidates, &result.counts);

  std::unordered_set<std::string> ids;
  for (const auto& r : dataset.records) ids.insert(RecordId(r));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (candidates[k].status != CandidateStatus::kApplied) continue;
    Record added = std::move(*candidates[k].simplified);
    std::string new_id = RecordId(dataset.records[indices[k]]) + plan.id_suffix;
    if (!ids.insert(new_id).second) {
      throw ValidationError(fmt::format(
          "augmented id for record {} collides with an existing id", indices[k]));
    }
    SetId(added, std::move(new_id));
    result.dataset.records.push_back(std::move(added));
    ++result.counts.appended;
  }
  result.counts.output = result.dataset.size();
  return result;
}

AugmentResult AugmentSwap(const Dataset& dataset, Simplifier& backend,
                          const AugmentationPlan& plan) {
  if (plan.strategy != Strategy::kSwap) throw ConfigError("plan strategy is not swap");
  ValidatePlan(plan, dataset.task);
  return SwapSelected(dataset, backend,
                      SelectIndices(dataset.size(), *plan.fraction, plan.seed),
                      ResolveFields(dataset.task, plan.fields));
}

AugmentResult ReplaceIfPreserved(const Dataset& dataset, Simplifier& backend) {
  if (dataset.task != Task::kRelation) {
    throw ConfigError("replace-if-preserved needs a relation dataset");
  }
  return SwapSelected(dataset, backend, AllIndices(dataset.size()), {"sentence"});
}

AugmentResult Augment(const Dataset& dataset, Simplifier& backend,
                      const AugmentationPlan& plan) {
  ValidatePlan(plan, dataset.task);
  switch (plan.strategy) {
    case Strategy::kAppend:
      return AugmentAppend(dataset, backend, plan);
    case Strategy::kSwap:
      return AugmentSwap(dataset, backend, plan);
    case Strategy::kReplaceIfPreserved:
      return ReplaceIfPreserved(dataset, backend);
  }
  throw ConfigError("unknown strategy");
}

AugmentResult PrepareEval(const Dataset& dataset, Simplifier& backend, EvalMode mode,
                          const std::vector<std::string>& fields) {
  const auto resolved = ResolveFields(dataset.task, fields);
  switch (mode) {
    case EvalMode::kOriginal: {
      AugmentResult result;
      result.dataset = dataset;
      result.counts.input = result.counts.output = dataset.size();
      return result;
    }
    case EvalMode::kSimplified:
      // Relation records that lose an entity keep their original text, since
      // a record without both spans is not valid input for the task.
      return SwapSelected(dataset, backend, AllIndices(dataset.size()), resolved);
    case EvalMode::kSimplifiedComplement:
      if (dataset.task != Task::kRelation) {
        throw ConfigError("simplified-complement needs a relation dataset");
      }
      return ReplaceIfPreserved(dataset, backend);
  }
  throw ConfigError("unknown eval mode");
}

nlohmann::ordered_json CountsToJson(const AugmentCounts& c) {
  return {{"input", c.input},       {"output", c.output},
          {"selected", c.selected}, {"appended", c.appended},
          {"swapped", c.swapped},   {"unchanged", c.unchanged},
          {"failed", c.failed},     {"filtered", c.filtered}};
}

nlohmann::ordered_json PlanToJson(const AugmentationPlan& plan, Task task) {
  nlohmann::ordered_json j;
  j["strategy"] = std::string(StrategyName(plan.strategy));
  j["fraction"] = plan.fraction ? nlohmann::ordered_json(*plan.fraction) : nullptr;
  j["seed"] = plan.seed;
  j["filter"] = std::string(FilterModeName(plan.filter));
  j["fields"] = ResolveFields(task, plan.fields);
  j["id_suffix"] = plan.id_suffix;
  return j;
}

}  // namespace tsaug
