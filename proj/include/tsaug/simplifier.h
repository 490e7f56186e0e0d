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

#ifndef TSAUG_SIMPLIFIER_H_
#define TSAUG_SIMPLIFIER_H_

#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsaug {

struct SimplifyOutcome {
  std::string original;
  std::string simplified;
  std::string backend_id;
  // simplified != original after whitespace normalization.
  bool changed = false;
  // Per-text model failure. When set, simplified == original and !changed.
  std::optional<std::string> error;
};

enum class BackendKind { kEcho, kRules, kProc, kHttp };

struct BackendSpec {
  BackendKind kind = BackendKind::kEcho;
  // Lexicon path for rules (may be empty), command line for proc, URL for
  // http. Unused for echo.
  std::string locator;
  std::size_t batch_size = 32;
  std::chrono::milliseconds timeout{30000};
  // Concurrent in-flight requests for http.
  std::size_t max_concurrency = 4;
};

// Parses "echo", "rules", "rules:LEXICON", "proc:CMD" or "http:URL".
BackendSpec ParseBackendSpec(std::string_view text);
std::string BackendSpecString(const BackendSpec& spec);

// Result of one text as returned by a transport, before outcome bookkeeping.
struct RawSimplification {
  std::string text;
  std::optional<std::string> error;
};

// Uniform simplification interface. Implementations only provide the
// transport; SimplifyBatch enforces the length/order law and builds outcomes.
class Simplifier {
 public:
  explicit Simplifier(std::size_t batch_size = 32);
  virtual ~Simplifier() = default;

  Simplifier(const Simplifier&) = delete;
  Simplifier& operator=(const Simplifier&) = delete;

  virtual std::string id() const = 0;

  // One outcome per input, in input order. Every input must be non-empty
  // after trimming. Internal newlines are replaced by spaces before dispatch.
  // Throws BackendError when the transport fails or breaks the protocol.
  std::vector<SimplifyOutcome> SimplifyBatch(const std::vector<std::string>& texts);

  // Releases transport resources. Throws BackendError if a child process
  // exits abnormally. Safe to call more than once.
  virtual void Close() {}

  std::size_t batch_size() const { return batch_size_; }

 protected:
  // Default: splits into batch_size chunks and calls RunChunk on each.
  virtual std::vector<RawSimplification> RunAll(std::span<const std::string> texts);
  virtual std::vector<RawSimplification> RunChunk(std::span<const std::string> texts) = 0;

 private:
  std::size_t batch_size_;
};

// Returns every text unchanged.
class EchoSimplifier : public Simplifier {
 public:
  using Simplifier::Simplifier;
  std::string id() const override { return "echo"; }

 protected:
  std::vector<RawSimplification> RunChunk(std::span<const std::string> texts) override;
};

std::unique_ptr<Simplifier> MakeSimplifier(const BackendSpec& spec);

}  // namespace tsaug

#endif  // TSAUG_SIMPLIFIER_H_
