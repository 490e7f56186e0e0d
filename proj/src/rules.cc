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

#include "tsaug/rules.h"

#include <cctype>

#include <fmt/format.h>

#include "tsaug/dataset.h"
#include "tsaug/errors.h"
#include "tsaug/text_metrics.h"

namespace tsaug {
namespace {

bool IsWordByte(char c) {
  const auto b = static_cast<unsigned char>(c);
  return std::isalnum(b) || b == '_' || b >= 0x80;
}

bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsLower(char c) { return c >= 'a' && c <= 'z'; }

std::string MatchCase(std::string_view word, const std::string& replacement) {
  bool has_lower = false;
  std::size_t upper = 0;
  for (char c : word) {
    if (IsLower(c)) has_lower = true;
    if (IsUpper(c)) ++upper;
  }
  std::string out = replacement;
  if (!has_lower && upper >= 2) {
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  } else if (!word.empty() && IsUpper(word.front()) && !out.empty()) {
    out.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(out.front())));
  }
  return out;
}

std::string SubstituteWords(const Lexicon& lexicon, std::string_view text) {
  if (lexicon.empty()) return std::string(text);
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!IsWordByte(text[i])) {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && IsWordByte(text[j])) ++j;
    const std::string_view word = text.substr(i, j - i);
    if (const std::string* rep = lexicon.Find(FoldCase(word))) {
      out += MatchCase(word, *rep);
    } else {
      out.append(word);
    }
    i = j;
  }
  return out;
}

std::string DropParentheticals(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '(') {
      const std::size_t next = text.find_first_of("()", i + 1);
      if (next != std::string_view::npos && text[next] == ')') {
        while (!out.empty() && (out.back() == ' ' || out.back() == '\t')) {
          out.pop_back();
        }
        i = next + 1;
        continue;
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::string SplitWhichClause(std::string_view text) {
  constexpr std::string_view kMarker = ", which ";
  const std::size_t at = text.find(kMarker);
  if (at == std::string_view::npos) return std::string(text);

  std::string_view head = text.substr(0, at);
  while (!head.empty() && head.back() == ' ') head.remove_suffix(1);
  const TokenSeq head_tokens = Tokenize(head);
  // Nearest preceding word token stands in for the noun-phrase head.
  const std::string* antecedent = nullptr;
  for (auto it = head_tokens.rbegin(); it != head_tokens.rend(); ++it) {
    if (!(it->size() == 1 && std::string_view(".,;:!?\"()").find((*it)[0]) !=
                                 std::string_view::npos)) {
      antecedent = &*it;
      break;
    }
  }
  if (antecedent == nullptr) return std::string(text);

  std::string out(head);
  out += ". ";
  out += *antecedent;
  out.push_back(' ');
  out.append(text.substr(at + kMarker.size()));
  return out;
}

}  // namespace

Lexicon Lexicon::Parse(std::string_view content) {
  Lexicon lex;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (NormalizeWhitespace(line).empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ConfigError(fmt::format("lexicon line {}: expected source<TAB>replacement", line_no));
    }
    const std::string source = NormalizeWhitespace(line.substr(0, tab));
    const std::string replacement = NormalizeWhitespace(line.substr(tab + 1));
    if (source.empty() || replacement.empty()) {
      throw ConfigError(fmt::format("lexicon line {}: empty entry", line_no));
    }
    for (char c : source) {
      if (!IsWordByte(c)) {
        throw ConfigError(fmt::format("lexicon line {}: source must be a single word", line_no));
      }
    }
    lex.Add(source, replacement);
  }
  return lex;
}

Lexicon Lexicon::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path));
}

void Lexicon::Add(std::string_view source, std::string_view replacement) {
  entries_.insert_or_assign(FoldCase(source), std::string(replacement));
}

const std::string* Lexicon::Find(std::string_view word) const {
  auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string RulesSimplify(const Lexicon& lexicon, std::string_view text) {
  std::string out = SubstituteWords(lexicon, text);
  out = DropParentheticals(out);
  out = SplitWhichClause(out);
  return NormalizeWhitespace(out);
}

RulesSimplifier::RulesSimplifier(Lexicon lexicon, std::string source,
                                 std::size_t batch_size)
    : Simplifier(batch_size), lexicon_(std::move(lexicon)), source_(std::move(source)) {}

std::string RulesSimplifier::id() const {
  return source_.empty() ? "rules" : "rules:" + source_;
}

std::vector<RawSimplification> RulesSimplifier::RunChunk(
    std::span<const std::string> texts) {
  std::vector<RawSimplification> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back({RulesSimplify(lexicon_, t), std::nullopt});
  return out;
}

}  // namespace tsaug
