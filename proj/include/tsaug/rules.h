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

#ifndef TSAUG_RULES_H_
#define TSAUG_RULES_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "tsaug/simplifier.h"

namespace tsaug {

// Source word (case-folded) to replacement.
class Lexicon {
 public:
  Lexicon() = default;

  // One "source<TAB>replacement" pair per line; '#' starts a comment line.
  static Lexicon Parse(std::string_view content);
  static Lexicon Load(const std::filesystem::path& path);

  void Add(std::string_view source, std::string_view replacement);
  const std::string* Find(std::string_view word) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

// Offline rule simplifier, applied in order:
//   1. case-preserving whole-word lexicon substitution;
//   2. removal of "( ... )" spans that contain no further parentheses;
//   3. split at the first ", which " into two sentences, with the pronoun
//      replaced by the token preceding the comma.
// Whitespace in the result is normalized.
std::string RulesSimplify(const Lexicon& lexicon, std::string_view text);

class RulesSimplifier : public Simplifier {
 public:
  explicit RulesSimplifier(Lexicon lexicon, std::string source = {},
                           std::size_t batch_size = 32);
  std::string id() const override;

 protected:
  std::vector<RawSimplification> RunChunk(std::span<const std::string> texts) override;

 private:
  Lexicon lexicon_;
  std::string source_;
};

}  // namespace tsaug

#endif  // TSAUG_RULES_H_
