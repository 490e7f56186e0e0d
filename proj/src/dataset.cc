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

#include "tsaug/dataset.h"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "tsaug/errors.h"

namespace tsaug {
namespace {

using ojson = nlohmann::ordered_json;

bool HasWhitespace(std::string_view token) {
  const std::string norm = NormalizeWhitespace(token);
  return norm != token || norm.find(' ') != std::string::npos;
}

std::vector<std::string_view> SplitLines(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

const ojson& RequireKey(const ojson& obj, const char* key,
                        const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(fmt::format("{}: missing key '{}'", where, key));
  }
  return *it;
}

std::string RequireString(const ojson& obj, const char* key,
                          const std::string& where) {
  const ojson& v = RequireKey(obj, key, where);
  if (!v.is_string()) {
    throw ValidationError(fmt::format("{}: key '{}' must be a string", where, key));
  }
  return v.get<std::string>();
}

std::size_t RequireIndex(const ojson& obj, const char* key,
                         const std::string& where) {
  const ojson& v = RequireKey(obj, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ValidationError(
        fmt::format("{}: key '{}' must be a non-negative integer", where, key));
  }
  return v.get<std::size_t>();
}

std::vector<std::string> RequireStringList(const ojson& obj, const char* key,
                                           const std::string& where) {
  const ojson& v = RequireKey(obj, key, where);
  if (!v.is_array()) {
    throw ValidationError(fmt::format("{}: key '{}' must be a list", where, key));
  }
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& item : v) {
    if (!item.is_string()) {
      throw ValidationError(
          fmt::format("{}: key '{}' must contain only strings", where, key));
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

ojson ParseJson(std::string_view text, const std::string& where) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(fmt::format("{}: parse error: {}", where, e.what()));
  }
}

RelationExample RelationFromJson(const ojson& obj, const std::string& where) {
  if (!obj.is_object()) {
    throw ValidationError(where + ": record must be an object");
  }
  RelationExample ex;
  ex.id = RequireString(obj, "id", where);
  ex.tokens = RequireStringList(obj, "token", where);
  ex.subj = {RequireIndex(obj, "subj_start", where),
             RequireIndex(obj, "subj_end", where)};
  ex.obj = {RequireIndex(obj, "obj_start", where),
            RequireIndex(obj, "obj_end", where)};
  ex.subj_type = RequireString(obj, "subj_type", where);
  ex.obj_type = RequireString(obj, "obj_type", where);
  ex.relation = RequireString(obj, "relation", where);
  if (obj.contains("stanford_pos")) {
    ex.pos = RequireStringList(obj, "stanford_pos", where);
  }
  if (obj.contains("stanford_ner")) {
    ex.ner = RequireStringList(obj, "stanford_ner", where);
  }
  ValidateRelation(ex, where);
  return ex;
}

ojson RelationToJson(const RelationExample& ex) {
  ojson obj;
  obj["id"] = ex.id;
  obj["token"] = ex.tokens;
  obj["subj_start"] = ex.subj.start;
  obj["subj_end"] = ex.subj.end;
  obj["obj_start"] = ex.obj.start;
  obj["obj_end"] = ex.obj.end;
  obj["subj_type"] = ex.subj_type;
  obj["obj_type"] = ex.obj_type;
  obj["relation"] = ex.relation;
  if (ex.pos) obj["stanford_pos"] = *ex.pos;
  if (ex.ner) obj["stanford_ner"] = *ex.ner;
  return obj;
}

NliExample NliFromFields(std::string pair_id, std::string premise,
                         std::string hypothesis, std::string_view label,
                         std::string genre, const std::string& where) {
  auto parsed = ParseNliLabel(label);
  if (!parsed) {
    throw ValidationError(
        fmt::format("{}: unknown gold_label (expected entailment, "
                    "contradiction or neutral)",
                    where));
  }
  NliExample ex{std::move(pair_id), std::move(premise), std::move(hypothesis),
                *parsed, std::move(genre)};
  ValidateNli(ex, where);
  return ex;
}

ojson NliToJson(const NliExample& ex) {
  ojson obj;
  obj["pairID"] = ex.pair_id;
  obj["sentence1"] = ex.premise;
  obj["sentence2"] = ex.hypothesis;
  obj["gold_label"] = std::string(NliLabelName(ex.label));
  obj["genre"] = ex.genre;
  return obj;
}

Dataset ParseNliTsv(const std::vector<std::string_view>& lines,
                    std::size_t header_index) {
  auto split = [](std::string_view line) {
    std::vector<std::string_view> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string_view::npos
                                            ? std::string_view::npos
                                            : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    return cols;
  };
  const auto header = split(lines[header_index]);
  auto column = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw ValidationError(
        fmt::format("line {}: header lacks column '{}'", header_index + 1, name));
  };
  const std::size_t c_id = column("pairID");
  const std::size_t c_s1 = column("sentence1");
  const std::size_t c_s2 = column("sentence2");
  const std::size_t c_label = column("gold_label");
  const std::size_t c_genre = column("genre");

  Dataset ds;
  ds.task = Task::kNli;
  for (std::size_t i = header_index + 1; i < lines.size(); ++i) {
    if (IsBlank(lines[i])) continue;
    const std::string where = fmt::format("line {}", i + 1);
    const auto cols = split(lines[i]);
    const std::size_t needed =
        std::max({c_id, c_s1, c_s2, c_label, c_genre}) + 1;
    if (cols.size() < needed) {
      throw ValidationError(where + ": too few columns");
    }
    ds.records.emplace_back(NliFromFields(
        std::string(cols[c_id]), std::string(cols[c_s1]),
        std::string(cols[c_s2]), cols[c_label], std::string(cols[c_genre]),
        where));
  }
  return ds;
}

std::string ArrayDocument(const Dataset& dataset) {
  if (dataset.records.empty()) return "[]\n";
  std::string out = "[\n";
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    out += SerializeRecord(dataset.records[i]);
    out += i + 1 < dataset.records.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

std::string LinesDocument(const Dataset& dataset) {
  std::string out;
  for (const auto& r : dataset.records) {
    out += SerializeRecord(r);
    out.push_back('\n');
  }
  return out;
}

void RequireTask(const Dataset& dataset, Task task) {
  if (dataset.task != task) {
    throw ConfigError(fmt::format("expected a {} dataset, got {}",
                                  TaskName(task), TaskName(dataset.task)));
  }
}

}  // namespace

std::string_view NliLabelName(NliLabel label) {
  switch (label) {
    case NliLabel::kEntailment:
      return "entailment";
    case NliLabel::kContradiction:
      return "contradiction";
    case NliLabel::kNeutral:
      return "neutral";
  }
  return "neutral";
}

std::optional<NliLabel> ParseNliLabel(std::string_view name) {
  if (name == "entailment") return NliLabel::kEntailment;
  if (name == "contradiction") return NliLabel::kContradiction;
  if (name == "neutral") return NliLabel::kNeutral;
  return std::nullopt;
}

std::string_view TaskName(Task task) {
  switch (task) {
    case Task::kRelation:
      return "relation";
    case Task::kNli:
      return "nli";
    case Task::kGeneric:
      return "generic";
  }
  return "generic";
}

std::optional<Task> ParseTask(std::string_view name) {
  if (name == "relation") return Task::kRelation;
  if (name == "nli") return Task::kNli;
  if (name == "generic") return Task::kGeneric;
  return std::nullopt;
}

const std::string& RecordId(const Record& record) {
  return std::visit(
      [](const auto& r) -> const std::string& {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, NliExample>) {
          return r.pair_id;
        } else {
          return r.id;
        }
      },
      record);
}

std::string RecordLabel(const Record& record) {
  if (const auto* r = std::get_if<RelationExample>(&record)) return r->relation;
  if (const auto* n = std::get_if<NliExample>(&record)) {
    return std::string(NliLabelName(n->label));
  }
  return std::get<GenericExample>(record).label;
}

TokenSeq Surface(const RelationExample& example, EntityRole which) {
  const Span& s = which == EntityRole::kSubject ? example.subj : example.obj;
  return TokenSeq(example.tokens.begin() + s.start,
                  example.tokens.begin() + s.end + 1);
}

void ValidateRelation(const RelationExample& ex, const std::string& where) {
  if (ex.id.empty()) throw ValidationError(where + ": empty id");
  if (ex.relation.empty()) throw ValidationError(where + ": empty relation");
  for (std::size_t i = 0; i < ex.tokens.size(); ++i) {
    if (ex.tokens[i].empty() || HasWhitespace(ex.tokens[i])) {
      throw ValidationError(fmt::format(
          "{}: token {} is empty or contains whitespace", where, i));
    }
  }
  auto check_span = [&](const Span& s, const char* name) {
    if (s.start > s.end || s.end >= ex.tokens.size()) {
      throw ValidationError(fmt::format(
          "{}: {} span [{}, {}] out of range for {} tokens", where, name,
          s.start, s.end, ex.tokens.size()));
    }
  };
  check_span(ex.subj, "subject");
  check_span(ex.obj, "object");
  if (ex.subj.Overlaps(ex.obj)) {
    throw ValidationError(where + ": subject and object spans overlap");
  }
  if (ex.pos && ex.pos->size() != ex.tokens.size()) {
    throw ValidationError(where + ": stanford_pos length differs from token");
  }
  if (ex.ner && ex.ner->size() != ex.tokens.size()) {
    throw ValidationError(where + ": stanford_ner length differs from token");
  }
}

void ValidateNli(const NliExample& ex, const std::string& where) {
  if (ex.pair_id.empty()) throw ValidationError(where + ": empty pairID");
  if (NormalizeWhitespace(ex.premise).empty()) {
    throw ValidationError(where + ": empty premise");
  }
  if (NormalizeWhitespace(ex.hypothesis).empty()) {
    throw ValidationError(where + ": empty hypothesis");
  }
}

void ValidateGeneric(const GenericExample& ex, const std::string& where) {
  if (ex.id.empty()) throw ValidationError(where + ": empty id");
  if (ex.fields.empty()) throw ValidationError(where + ": no text fields");
  std::unordered_set<std::string> seen;
  for (const auto& [name, text] : ex.fields) {
    if (name == "id" || name == "label") {
      throw ValidationError(
          fmt::format("{}: field name '{}' is reserved", where, name));
    }
    if (!seen.insert(name).second) {
      throw ValidationError(
          fmt::format("{}: duplicate field '{}'", where, name));
    }
  }
}

void ValidateDataset(const Dataset& dataset) {
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    const Record& r = dataset.records[i];
    const std::string where = fmt::format("record {}", i);
    const bool kind_ok =
        (dataset.task == Task::kRelation && std::holds_alternative<RelationExample>(r)) ||
        (dataset.task == Task::kNli && std::holds_alternative<NliExample>(r)) ||
        (dataset.task == Task::kGeneric && std::holds_alternative<GenericExample>(r));
    if (!kind_ok) {
      throw ValidationError(fmt::format("{}: not a {} record", where,
                                        TaskName(dataset.task)));
    }
    std::visit(
        [&](const auto& ex) {
          using T = std::decay_t<decltype(ex)>;
          if constexpr (std::is_same_v<T, RelationExample>) {
            ValidateRelation(ex, where);
          } else if constexpr (std::is_same_v<T, NliExample>) {
            ValidateNli(ex, where);
          } else {
            ValidateGeneric(ex, where);
          }
        },
        r);
    if (!ids.insert(RecordId(r)).second) {
      throw ValidationError(where + ": duplicate id");
    }
  }
}

Dataset ParseRelation(std::string_view content) {
  const ojson doc = ParseJson(content, "relation file");
  if (!doc.is_array()) {
    throw ValidationError("relation file: top level must be an array");
  }
  Dataset ds;
  ds.task = Task::kRelation;
  ds.records.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    ds.records.emplace_back(RelationFromJson(doc[i], fmt::format("record {}", i)));
  }
  ValidateDataset(ds);
  return ds;
}

Dataset ParseNli(std::string_view content) {
  const auto lines = SplitLines(content);
  std::size_t first = 0;
  while (first < lines.size() && IsBlank(lines[first])) ++first;
  if (first == lines.size()) return Dataset{Task::kNli, {}, {}};

  Dataset ds;
  if (lines[first].find_first_not_of(" \t") != std::string_view::npos &&
      lines[first][lines[first].find_first_not_of(" \t")] != '{') {
    ds = ParseNliTsv(lines, first);
  } else {
    ds.task = Task::kNli;
    for (std::size_t i = first; i < lines.size(); ++i) {
      if (IsBlank(lines[i])) continue;
      const std::string where = fmt::format("line {}", i + 1);
      const ojson obj = ParseJson(lines[i], where);
      if (!obj.is_object()) throw ValidationError(where + ": not an object");
      ds.records.emplace_back(NliFromFields(
          RequireString(obj, "pairID", where),
          RequireString(obj, "sentence1", where),
          RequireString(obj, "sentence2", where),
          RequireString(obj, "gold_label", where),
          obj.contains("genre") ? RequireString(obj, "genre", where) : "",
          where));
    }
  }
  ValidateDataset(ds);
  return ds;
}

Dataset ParseGeneric(std::string_view content) {
  const auto lines = SplitLines(content);
  Dataset ds;
  ds.task = Task::kGeneric;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (IsBlank(lines[i])) continue;
    const std::string where = fmt::format("line {}", i + 1);
    const ojson obj = ParseJson(lines[i], where);
    if (!obj.is_object()) throw ValidationError(where + ": not an object");
    GenericExample ex;
    ex.id = RequireString(obj, "id", where);
    ex.label = RequireString(obj, "label", where);
    for (const auto& [key, value] : obj.items()) {
      if (key == "id" || key == "label") continue;
      if (!value.is_string()) {
        throw ValidationError(
            fmt::format("{}: field '{}' must be a string", where, key));
      }
      ex.fields.emplace_back(key, value.get<std::string>());
    }
    ValidateGeneric(ex, where);
    ds.records.emplace_back(std::move(ex));
  }
  ValidateDataset(ds);
  return ds;
}

Dataset ReadRelation(const std::filesystem::path& path) {
  Dataset ds = ParseRelation(ReadFile(path));
  ds.provenance = path.string();
  return ds;
}

Dataset ReadNli(const std::filesystem::path& path) {
  Dataset ds = ParseNli(ReadFile(path));
  ds.provenance = path.string();
  return ds;
}

Dataset ReadGeneric(const std::filesystem::path& path) {
  Dataset ds = ParseGeneric(ReadFile(path));
  ds.provenance = path.string();
  return ds;
}

Dataset ReadDataset(Task task, const std::filesystem::path& path) {
  switch (task) {
    case Task::kRelation:
      return ReadRelation(path);
    case Task::kNli:
      return ReadNli(path);
    case Task::kGeneric:
      return ReadGeneric(path);
  }
  return ReadGeneric(path);
}

std::string SerializeRecord(const Record& record) {
  ojson obj;
  if (const auto* r = std::get_if<RelationExample>(&record)) {
    obj = RelationToJson(*r);
  } else if (const auto* n = std::get_if<NliExample>(&record)) {
    obj = NliToJson(*n);
  } else {
    const auto& g = std::get<GenericExample>(record);
    obj["id"] = g.id;
    obj["label"] = g.label;
    for (const auto& [name, text] : g.fields) obj[name] = text;
  }
  return obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

std::string SerializeDataset(const Dataset& dataset) {
  return dataset.task == Task::kRelation ? ArrayDocument(dataset)
                                         : LinesDocument(dataset);
}

void WriteDataset(const Dataset& dataset, const std::filesystem::path& path) {
  ValidateDataset(dataset);
  WriteFile(path, SerializeDataset(dataset));
}

void WriteRelation(const Dataset& dataset, const std::filesystem::path& path) {
  RequireTask(dataset, Task::kRelation);
  WriteDataset(dataset, path);
}

void WriteNli(const Dataset& dataset, const std::filesystem::path& path) {
  RequireTask(dataset, Task::kNli);
  WriteDataset(dataset, path);
}

void WriteGeneric(const Dataset& dataset, const std::filesystem::path& path) {
  RequireTask(dataset, Task::kGeneric);
  WriteDataset(dataset, path);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace tsaug
