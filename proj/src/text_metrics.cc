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

#include "tsaug/text_metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

namespace tsaug {
namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;
};

// Decodes one UTF-8 sequence at `pos`. Malformed bytes decode as themselves
// with length 1 so that no input byte is ever lost.
CodePoint DecodeAt(std::string_view s, std::size_t pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {b0, 1};
  }
  if (pos + len > s.size()) return {b0, 1};
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return {b0, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

bool IsDetachable(char c) {
  switch (c) {
    case '.':
    case ',':
    case ';':
    case ':':
    case '!':
    case '?':
    case '"':
    case '(':
    case ')':
      return true;
    default:
      return false;
  }
}

void SplitWord(std::string_view word, TokenSeq* out) {
  std::size_t begin = 0;
  std::size_t end = word.size();
  while (begin < end && IsDetachable(word[begin])) {
    out->emplace_back(1, word[begin]);
    ++begin;
  }
  std::vector<char> suffix;
  while (end > begin && IsDetachable(word[end - 1])) {
    suffix.push_back(word[end - 1]);
    --end;
  }
  if (end > begin) out->emplace_back(word.substr(begin, end - begin));
  for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) {
    out->emplace_back(1, *it);
  }
}

// Visits the maximal non-whitespace runs of `text`.
template <typename Fn>
void ForEachWord(std::string_view text, Fn&& fn) {
  std::size_t pos = 0;
  std::size_t word_start = std::string_view::npos;
  while (pos < text.size()) {
    const CodePoint cp = DecodeAt(text, pos);
    if (IsUnicodeSpace(cp.value)) {
      if (word_start != std::string_view::npos) {
        fn(text.substr(word_start, pos - word_start));
        word_start = std::string_view::npos;
      }
    } else if (word_start == std::string_view::npos) {
      word_start = pos;
    }
    pos += cp.length;
  }
  if (word_start != std::string_view::npos) fn(text.substr(word_start));
}

std::string NgramKey(const TokenSeq& tokens, std::size_t start, int n) {
  std::string key;
  for (int i = 0; i < n; ++i) {
    if (i > 0) key.push_back(' ');
    key += tokens[start + i];
  }
  return key;
}

std::unordered_map<std::string, std::size_t> CountNgrams(const TokenSeq& tokens,
                                                         int n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[NgramKey(tokens, i, n)];
  }
  return counts;
}

}  // namespace

bool IsUnicodeSpace(char32_t cp) {
  switch (cp) {
    case 0x09:
    case 0x0A:
    case 0x0B:
    case 0x0C:
    case 0x0D:
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

TokenSeq Tokenize(std::string_view text) {
  TokenSeq tokens;
  ForEachWord(text, [&tokens](std::string_view word) { SplitWord(word, &tokens); });
  return tokens;
}

std::string JoinTokens(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string NormalizeWhitespace(std::string_view text) {
  std::string out;
  ForEachWord(text, [&out](std::string_view word) {
    if (!out.empty()) out.push_back(' ');
    out.append(word);
  });
  return out;
}

std::string FoldCase(std::string_view text) {
  std::string out(text);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto b = static_cast<unsigned char>(out[i]);
    if (b >= 'A' && b <= 'Z') {
      out[i] = static_cast<char>(b + ('a' - 'A'));
    } else if (b == 0xC3 && i + 1 < out.size()) {
      // U+00C0..U+00DE map to U+00E0..U+00FE, except U+00D7 (multiplication).
      const auto next = static_cast<unsigned char>(out[i + 1]);
      if (next >= 0x80 && next <= 0x9E && next != 0x97) {
        out[i + 1] = static_cast<char>(next + 0x20);
      }
      ++i;
    }
  }
  return out;
}

std::string_view ZeroPolicyName(ZeroPolicy policy) {
  return policy == ZeroPolicy::kScoreZero ? "score-zero" : "cap-order";
}

std::optional<ZeroPolicy> ParseZeroPolicy(std::string_view name) {
  if (name == "score-zero") return ZeroPolicy::kScoreZero;
  if (name == "cap-order") return ZeroPolicy::kCapOrder;
  return std::nullopt;
}

NgramMatch ModifiedPrecision(const TokenSeq& candidate,
                             const TokenSeq& reference, int n) {
  NgramMatch match;
  if (n < 1 || candidate.size() < static_cast<std::size_t>(n)) return match;
  match.total = candidate.size() - n + 1;
  const auto cand_counts = CountNgrams(candidate, n);
  const auto ref_counts = CountNgrams(reference, n);
  for (const auto& [gram, count] : cand_counts) {
    auto it = ref_counts.find(gram);
    if (it != ref_counts.end()) match.clipped += std::min(count, it->second);
  }
  return match;
}

double BrevityPenalty(std::size_t candidate_len, std::size_t reference_len) {
  if (candidate_len >= reference_len) return 1.0;
  if (candidate_len == 0) return 0.0;
  return std::exp(1.0 - static_cast<double>(reference_len) /
                            static_cast<double>(candidate_len));
}

double SentenceBleu(const TokenSeq& candidate, const TokenSeq& reference,
                    const BleuConfig& cfg) {
  const int max_order = std::max(cfg.max_order, 1);
  TokenSeq cand = candidate;
  TokenSeq ref = reference;
  if (cfg.lowercase) {
    for (auto& t : cand) t = FoldCase(t);
    for (auto& t : ref) t = FoldCase(t);
  }
  if (cand.empty()) return ref.empty() ? 1.0 : 0.0;

  int order = max_order;
  if (cfg.zero_policy == ZeroPolicy::kCapOrder) {
    order = static_cast<int>(std::min<std::size_t>(max_order, cand.size()));
  }

  double log_sum = 0.0;
  for (int n = 1; n <= order; ++n) {
    const NgramMatch m = ModifiedPrecision(cand, ref, n);
    if (m.total == 0) {
      // Candidate too short for this order. Vacuous match only if the
      // reference has no n-grams of this order either.
      if (ref.size() < static_cast<std::size_t>(n)) continue;
      return 0.0;
    }
    if (m.clipped == 0) return 0.0;
    log_sum += std::log(static_cast<double>(m.clipped) /
                        static_cast<double>(m.total));
  }
  const double score =
      std::exp(log_sum / order) * BrevityPenalty(cand.size(), ref.size());
  return std::clamp(score, 0.0, 1.0);
}

DivergenceReport ComputeDivergence(const std::vector<TextPair>& pairs,
                                   const BleuConfig& cfg,
                                   const std::vector<std::string>& requested) {
  std::vector<std::string> order = requested;
  for (const auto& p : pairs) {
    if (std::find(order.begin(), order.end(), p.field) == order.end()) {
      order.push_back(p.field);
    }
  }

  std::vector<std::vector<double>> scores(order.size());
  for (const auto& p : pairs) {
    const auto idx = static_cast<std::size_t>(
        std::find(order.begin(), order.end(), p.field) - order.begin());
    scores[idx].push_back(
        SentenceBleu(Tokenize(p.simplified), Tokenize(p.original), cfg));
  }

  DivergenceReport report;
  report.config = cfg;
  for (std::size_t i = 0; i < order.size(); ++i) {
    FieldDivergence entry;
    entry.field = order[i];
    entry.count = scores[i].size();
    if (entry.count > 0) {
      const double n = static_cast<double>(entry.count);
      const double mean =
          std::accumulate(scores[i].begin(), scores[i].end(), 0.0) / n;
      double sq = 0.0;
      for (double s : scores[i]) sq += (s - mean) * (s - mean);
      entry.mean = mean;
      entry.std = entry.count == 1 ? 0.0 : std::sqrt(sq / n);
    }
    report.fields.push_back(std::move(entry));
  }
  return report;
}

std::string FormatMeanStd(const FieldDivergence& entry) {
  if (!entry.mean || !entry.std) return "n/a";
  return fmt::format("{:.2f} ± {:.2f}", *entry.mean, *entry.std);
}

std::string RenderReportText(const DivergenceReport& report) {
  std::size_t width = 5;
  for (const auto& f : report.fields) width = std::max(width, f.field.size());
  std::ostringstream out;
  out << fmt::format("{:<{}}  {:>7}  {}\n", "field", width, "count",
                     "BLEU mean ± std");
  for (const auto& f : report.fields) {
    out << fmt::format("{:<{}}  {:>7}  {}\n", f.field, width, f.count,
                       FormatMeanStd(f));
  }
  out << fmt::format(
      "# candidate=simplified reference=original, population std, "
      "max_order={} zero_policy={} lowercase={}\n",
      report.config.max_order, ZeroPolicyName(report.config.zero_policy),
      report.config.lowercase);
  return out.str();
}

nlohmann::ordered_json ReportToJson(const DivergenceReport& report) {
  nlohmann::ordered_json config = {
      {"max_order", report.config.max_order},
      {"zero_policy", std::string(ZeroPolicyName(report.config.zero_policy))},
      {"lowercase", report.config.lowercase},
      {"std", "population"},
      {"candidate", "simplified"},
      {"reference", "original"},
  };
  nlohmann::ordered_json fields = nlohmann::ordered_json::array();
  for (const auto& f : report.fields) {
    nlohmann::ordered_json rec;
    rec["name"] = f.field;
    rec["count"] = f.count;
    rec["mean"] = f.mean ? nlohmann::ordered_json(*f.mean) : nullptr;
    rec["std"] = f.std ? nlohmann::ordered_json(*f.std) : nullptr;
    rec["config"] = config;
    fields.push_back(std::move(rec));
  }
  return nlohmann::ordered_json{{"fields", std::move(fields)}};
}

}  // namespace tsaug
