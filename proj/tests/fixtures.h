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

#ifndef TSAUG_TESTS_FIXTURES_H_
#define TSAUG_TESTS_FIXTURES_H_

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "tsaug/dataset.h"

namespace tsaug::testing {

inline constexpr const char* kCfoSentence =
    "the CFO Douglas Flint will become chairman, succeeding Stephen Green is "
    "leaving for a government job.";
inline constexpr const char* kCfoSimplified =
    "the CFO Douglas Flint will become chairman, and Stephen Green is leaving "
    "to take a government job.";

// The per:title example between "Douglas Flint" and "chairman".
inline RelationExample CfoExample() {
  RelationExample ex;
  ex.id = "tacred-0001";
  ex.tokens = {"the",     "CFO",        "Douglas", "Flint", "will", "become",
               "chairman", ",",         "succeeding", "Stephen", "Green", "is",
               "leaving", "for",        "a",       "government", "job", "."};
  ex.subj = {2, 3};
  ex.obj = {6, 6};
  ex.subj_type = "PERSON";
  ex.obj_type = "TITLE";
  ex.relation = "per:title";
  return ex;
}

inline RelationExample MakeRelation(std::string id, const std::string& sentence,
                                    Span subj, Span obj, std::string relation) {
  RelationExample ex;
  ex.id = std::move(id);
  ex.tokens = Tokenize(sentence);
  ex.subj = subj;
  ex.obj = obj;
  ex.subj_type = "PERSON";
  ex.obj_type = "ORGANIZATION";
  ex.relation = std::move(relation);
  return ex;
}

// Three examples; a lexicon mapping "chairman" to "head" drops the object of
// the second one only.
inline Dataset ThreeRelationFixture() {
  Dataset ds;
  ds.task = Task::kRelation;
  // Each sentence also contains a word the lexicon rewrites.
  ds.records.push_back(MakeRelation(
      "r1", "Alice Smith will purchase shares of Acme Corp .", {0, 1}, {6, 7},
      "per:employee_of"));
  ds.records.push_back(MakeRelation(
      "r2", "Bob Jones became chairman and will purchase the firm .", {0, 1}, {3, 3},
      "per:title"));
  ds.records.push_back(MakeRelation(
      "r3", "Carol White will purchase a stake in Beta Inc .", {0, 1}, {7, 8},
      "org:shareholders"));
  return ds;
}

inline constexpr const char* kThreeFixtureLexicon =
    "# test lexicon\npurchase\tbuy\nchairman\thead\n";

inline Dataset NliFixture(std::size_t n) {
  Dataset ds;
  ds.task = Task::kNli;
  const NliLabel labels[] = {NliLabel::kEntailment, NliLabel::kContradiction,
                             NliLabel::kNeutral};
  for (std::size_t i = 0; i < n; ++i) {
    NliExample ex;
    ex.pair_id = std::to_string(1000 + i) + "n";
    ex.premise = "The council will purchase land (near the river) this year " +
                 std::to_string(i) + ".";
    ex.hypothesis = "The council plans to purchase something.";
    ex.label = labels[i % 3];
    ex.genre = i % 2 ? "government" : "fiction";
    ds.records.push_back(ex);
  }
  return ds;
}

inline Dataset GenericFixture(std::size_t n) {
  Dataset ds;
  ds.task = Task::kGeneric;
  for (std::size_t i = 0; i < n; ++i) {
    GenericExample ex;
    ex.id = "g" + std::to_string(i);
    ex.fields = {{"text", "example sentence number " + std::to_string(i)}};
    ex.label = "label" + std::to_string(i % 4);
    ds.records.push_back(ex);
  }
  return ds;
}

// Random valid relation example. Tokens come from a small vocabulary that
// includes case variants, punctuation-bearing tokens, and repeats, so entity
// surfaces often recur elsewhere in the sentence.
inline RelationExample RandomRelation(std::mt19937& rng, std::size_t index) {
  static const std::vector<std::string> vocab = {
      "the", "The", "Acme", "ACME", "acme", "Corp.", "U.S.", "(", ")", ",",
      "said", "John", "Smith", "smith", "chairman", "of", "in", "\"quoted\"",
      "-LRB-", "-RRB-", "2010", "'s", "Inc", "café", "a.b", "..."};
  std::uniform_int_distribution<std::size_t> len_dist(2, 25);
  std::uniform_int_distribution<std::size_t> tok_dist(0, vocab.size() - 1);
  RelationExample ex;
  ex.id = "rand-" + std::to_string(index);
  const std::size_t len = len_dist(rng);
  for (std::size_t i = 0; i < len; ++i) ex.tokens.push_back(vocab[tok_dist(rng)]);

  // Two non-overlapping spans of length 1..3.
  while (true) {
    std::uniform_int_distribution<std::size_t> start(0, len - 1);
    std::uniform_int_distribution<std::size_t> width(0, 2);
    Span a{start(rng), 0};
    a.end = std::min(len - 1, a.start + width(rng));
    Span b{start(rng), 0};
    b.end = std::min(len - 1, b.start + width(rng));
    if (!a.Overlaps(b)) {
      ex.subj = a;
      ex.obj = b;
      break;
    }
  }
  ex.subj_type = "PERSON";
  ex.obj_type = "ORGANIZATION";
  ex.relation = "org:top_members/employees";
  if (rng() % 2) {
    ex.pos = std::vector<std::string>(len, "NN");
    ex.ner = std::vector<std::string>(len, "O");
  }
  return ex;
}

class TempDir {
 public:
  TempDir() {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "tsaug-test-XXXXXX").string();
    path_ = mkdtemp(pattern.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace tsaug::testing

#endif  // TSAUG_TESTS_FIXTURES_H_
