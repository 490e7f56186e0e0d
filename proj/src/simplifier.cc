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

#include "tsaug/simplifier.h"

#include <algorithm>

#include <fmt/format.h>

#include "tsaug/errors.h"
#include "tsaug/http_backend.h"
#include "tsaug/proc_backend.h"
#include "tsaug/rules.h"
#include "tsaug/text_metrics.h"

namespace tsaug {
namespace {

std::string FlattenNewlines(const std::string& text) {
  std::string out = text;
  std::size_t pos = 0;
  while ((pos = out.find_first_of("\r\n", pos)) != std::string::npos) {
    // "\r\n" collapses into one space.
    std::size_t len = (out[pos] == '\r' && pos + 1 < out.size() && out[pos + 1] == '\n') ? 2 : 1;
    out.replace(pos, len, " ");
    ++pos;
  }
  return out;
}

}  // namespace

BackendSpec ParseBackendSpec(std::string_view text) {
  BackendSpec spec;
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view locator =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (kind == "echo") {
    spec.kind = BackendKind::kEcho;
  } else if (kind == "rules") {
    spec.kind = BackendKind::kRules;
  } else if (kind == "proc") {
    spec.kind = BackendKind::kProc;
  } else if (kind == "http") {
    spec.kind = BackendKind::kHttp;
  } else {
    throw ConfigError(fmt::format(
        "unknown backend '{}' (expected echo, rules[:LEXICON], proc:CMD or http:URL)",
        kind));
  }
  spec.locator = std::string(locator);
  if (spec.kind == BackendKind::kHttp) {
    if (spec.locator.starts_with("//")) spec.locator = "http:" + spec.locator;
    if (!spec.locator.empty() && !spec.locator.starts_with("http://") &&
        !spec.locator.starts_with("https://")) {
      spec.locator = "http://" + spec.locator;
    }
  }
  if ((spec.kind == BackendKind::kProc || spec.kind == BackendKind::kHttp) &&
      spec.locator.empty()) {
    throw ConfigError(fmt::format("backend '{}' needs a locator", kind));
  }
  return spec;
}

std::string BackendSpecString(const BackendSpec& spec) {
  switch (spec.kind) {
    case BackendKind::kEcho:
      return "echo";
    case BackendKind::kRules:
      return spec.locator.empty() ? "rules" : "rules:" + spec.locator;
    case BackendKind::kProc:
      return "proc:" + spec.locator;
    case BackendKind::kHttp:
      return "http:" + spec.locator;
  }
  return "echo";
}

Simplifier::Simplifier(std::size_t batch_size) : batch_size_(batch_size) {
  if (batch_size_ == 0) throw ConfigError("batch_size must be at least 1");
}

std::vector<SimplifyOutcome> Simplifier::SimplifyBatch(
    const std::vector<std::string>& texts) {
  std::vector<std::string> dispatched;
  dispatched.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (NormalizeWhitespace(texts[i]).empty()) {
      throw ValidationError(fmt::format("text {} is empty after trimming", i));
    }
    dispatched.push_back(FlattenNewlines(texts[i]));
  }
  if (dispatched.empty()) return {};

  std::vector<RawSimplification> raw = RunAll(dispatched);
  if (raw.size() != texts.size()) {
    throw BackendError(fmt::format("{} returned {} results for {} texts", id(),
                                   raw.size(), texts.size()));
  }

  const std::string backend = id();
  std::vector<SimplifyOutcome> outcomes;
  outcomes.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    SimplifyOutcome out;
    out.original = texts[i];
    out.backend_id = backend;
    if (raw[i].error) {
      out.simplified = texts[i];
      out.error = std::move(raw[i].error);
    } else {
      out.simplified = std::move(raw[i].text);
      out.changed =
          NormalizeWhitespace(out.simplified) != NormalizeWhitespace(out.original);
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

std::vector<RawSimplification> Simplifier::RunAll(
    std::span<const std::string> texts) {
  std::vector<RawSimplification> all;
  all.reserve(texts.size());
  for (std::size_t start = 0; start < texts.size(); start += batch_size_) {
    const std::size_t len = std::min(batch_size_, texts.size() - start);
    auto chunk = RunChunk(texts.subspan(start, len));
    if (chunk.size() != len) {
      throw BackendError(fmt::format("{} returned {} results for a chunk of {}",
                                     id(), chunk.size(), len));
    }
    std::move(chunk.begin(), chunk.end(), std::back_inserter(all));
  }
  return all;
}

std::vector<RawSimplification> EchoSimplifier::RunChunk(
    std::span<const std::string> texts) {
  std::vector<RawSimplification> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back({t, std::nullopt});
  return out;
}

std::unique_ptr<Simplifier> MakeSimplifier(const BackendSpec& spec) {
  switch (spec.kind) {
    case BackendKind::kEcho:
      return std::make_unique<EchoSimplifier>(spec.batch_size);
    case BackendKind::kRules:
      return std::make_unique<RulesSimplifier>(
          spec.locator.empty() ? Lexicon{} : Lexicon::Load(spec.locator),
          spec.locator, spec.batch_size);
    case BackendKind::kProc:
      return std::make_unique<ProcSimplifier>(spec.locator, spec.batch_size,
                                              spec.timeout);
    case BackendKind::kHttp:
      return std::make_unique<HttpSimplifier>(spec.locator, spec.batch_size,
                                              spec.timeout, spec.max_concurrency);
  }
  throw ConfigError("unknown backend kind");
}

}  // namespace tsaug
