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

#ifndef TSAUG_DATASET_H_
#define TSAUG_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tsaug/text_metrics.h"

namespace tsaug {

// Inclusive token range [start, end].
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  bool Overlaps(const Span& other) const {
    return start <= other.end && other.start <= end;
  }
  std::size_t length() const { return end - start + 1; }

  friend bool operator==(const Span&, const Span&) = default;
};

enum class EntityRole { kSubject, kObject };

// One TACRED-style relation extraction record.
struct RelationExample {
  std::string id;
  TokenSeq tokens;
  Span subj;
  Span obj;
  std::string subj_type;
  std::string obj_type;
  std::string relation;
  // Same length as tokens when present.
  std::optional<std::vector<std::string>> pos;
  std::optional<std::vector<std::string>> ner;

  friend bool operator==(const RelationExample&,
                         const RelationExample&) = default;
};

enum class NliLabel { kEntailment, kContradiction, kNeutral };

std::string_view NliLabelName(NliLabel label);
std::optional<NliLabel> ParseNliLabel(std::string_view name);

struct NliExample {
  std::string pair_id;
  std::string premise;
  std::string hypothesis;
  NliLabel label = NliLabel::kNeutral;
  std::string genre;

  friend bool operator==(const NliExample&, const NliExample&) = default;
};

// Labeled record with an ordered set of named text fields.
struct GenericExample {
  std::string id;
  std::vector<std::pair<std::string, std::string>> fields;
  std::string label;

  friend bool operator==(const GenericExample&,
                         const GenericExample&) = default;
};

enum class Task { kRelation, kNli, kGeneric };

std::string_view TaskName(Task task);
std::optional<Task> ParseTask(std::string_view name);

using Record = std::variant<RelationExample, NliExample, GenericExample>;

struct Dataset {
  Task task = Task::kGeneric;
  std::vector<Record> records;
  std::string provenance;

  std::size_t size() const { return records.size(); }
};

// Id of any record kind.
const std::string& RecordId(const Record& record);
// Label of any record kind (relation label, NLI gold label, generic label).
std::string RecordLabel(const Record& record);

// tokens[start..=end] for the requested entity.
TokenSeq Surface(const RelationExample& example, EntityRole which);

// Throw ValidationError naming `where` on the first invariant violation.
void ValidateRelation(const RelationExample& example, const std::string& where);
void ValidateNli(const NliExample& example, const std::string& where);
void ValidateGeneric(const GenericExample& example, const std::string& where);
// Checks every record, homogeneity with `task`, and id uniqueness.
void ValidateDataset(const Dataset& dataset);

// Relation files: a JSON array of TACRED records.
Dataset ParseRelation(std::string_view content);
Dataset ReadRelation(const std::filesystem::path& path);
// NLI files: JSON lines with MNLI keys, or the MNLI tab-separated layout.
Dataset ParseNli(std::string_view content);
Dataset ReadNli(const std::filesystem::path& path);
// Generic files: JSON lines with id, label, and string fields.
Dataset ParseGeneric(std::string_view content);
Dataset ReadGeneric(const std::filesystem::path& path);

Dataset ReadDataset(Task task, const std::filesystem::path& path);

// Canonical serialization of one record. Writers emit exactly these bytes per
// record, so equal records always serialize identically.
std::string SerializeRecord(const Record& record);

// Full file content in the canonical format for `dataset.task`.
std::string SerializeDataset(const Dataset& dataset);

// Validates, then writes. Throws IoError on write failure.
void WriteDataset(const Dataset& dataset, const std::filesystem::path& path);
void WriteRelation(const Dataset& dataset, const std::filesystem::path& path);
void WriteNli(const Dataset& dataset, const std::filesystem::path& path);
void WriteGeneric(const Dataset& dataset, const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

}  // namespace tsaug

#endif  // TSAUG_DATASET_H_
