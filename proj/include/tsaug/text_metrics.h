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

#ifndef TSAUG_TEXT_METRICS_H_
#define TSAUG_TEXT_METRICS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"

namespace tsaug {

// Ordered tokens. No token is empty and no token contains whitespace.
using TokenSeq = std::vector<std::string>;

// Splits on unicode whitespace and detaches the characters . , ; : ! ? " ( )
// when they prefix or suffix a token. Deterministic; "" yields no tokens.
TokenSeq Tokenize(std::string_view text);

// Joins tokens with single spaces.
std::string JoinTokens(const TokenSeq& tokens);

// Lowercases ASCII and Latin-1 letters; other code points pass through.
std::string FoldCase(std::string_view text);

// True for the unicode White_Space code points.
bool IsUnicodeSpace(char32_t cp);

// Collapses runs of unicode whitespace into one ASCII space and trims.
std::string NormalizeWhitespace(std::string_view text);

enum class ZeroPolicy {
  // Any zero n-gram precision up to max_order makes the score 0.
  kScoreZero,
  // Orders beyond the candidate length are not scored.
  kCapOrder,
};

struct BleuConfig {
  int max_order = 4;
  ZeroPolicy zero_policy = ZeroPolicy::kCapOrder;
  bool lowercase = true;
};

std::string_view ZeroPolicyName(ZeroPolicy policy);
std::optional<ZeroPolicy> ParseZeroPolicy(std::string_view name);

struct NgramMatch {
  std::size_t clipped = 0;
  std::size_t total = 0;

  friend bool operator==(const NgramMatch&, const NgramMatch&) = default;
};

// Clipped n-gram counts of `candidate` against `reference`. n must be >= 1.
NgramMatch ModifiedPrecision(const TokenSeq& candidate,
                             const TokenSeq& reference, int n);

double BrevityPenalty(std::size_t candidate_len, std::size_t reference_len);

// Sentence-level BLEU in [0, 1]. Both sequences empty scores 1.
double SentenceBleu(const TokenSeq& candidate, const TokenSeq& reference,
                    const BleuConfig& cfg = {});

struct TextPair {
  std::string field;
  std::string original;
  std::string simplified;
};

struct FieldDivergence {
  std::string field;
  std::size_t count = 0;
  // Absent when count == 0.
  std::optional<double> mean;
  // Population standard deviation. Absent when count == 0.
  std::optional<double> std;
};

struct DivergenceReport {
  std::vector<FieldDivergence> fields;
  BleuConfig config;
};

// Scores SentenceBleu(tokenize(simplified), tokenize(original)) for every pair
// and summarizes per field. Fields listed in `requested` come first, in that
// order, and are reported even when no pair names them; remaining fields
// follow in first-seen order.
DivergenceReport ComputeDivergence(const std::vector<TextPair>& pairs,
                                   const BleuConfig& cfg = {},
                                   const std::vector<std::string>& requested = {});

// "0.67 ± 0.16", or "n/a" when the entry is empty.
std::string FormatMeanStd(const FieldDivergence& entry);

// Text table, one row per field, with mean and std at two decimals.
std::string RenderReportText(const DivergenceReport& report);

// One record per field with full-precision mean/std and the config echo.
nlohmann::ordered_json ReportToJson(const DivergenceReport& report);

}  // namespace tsaug

#endif  // TSAUG_TEXT_METRICS_H_
