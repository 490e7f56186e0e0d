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

#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "tsaug/errors.h"

namespace tsaug {
namespace {

using testing::CfoExample;
using testing::TempDir;

const char* kCfoRecord = R"([
{"id":"tacred-0001","token":["the","CFO","Douglas","Flint","will","become","chairman",",","succeeding","Stephen","Green","is","leaving","for","a","government","job","."],"subj_start":2,"subj_end":3,"obj_start":6,"obj_end":6,"subj_type":"PERSON","obj_type":"TITLE","relation":"per:title","docid":"ignored","stanford_deprel":["det"]}
]
)";

TEST_CASE("relation reader loads the TACRED schema") {
  const Dataset ds = ParseRelation(kCfoRecord);
  CHECK(ds.task == Task::kRelation);
  REQUIRE(ds.size() == 1);
  const auto& ex = std::get<RelationExample>(ds.records[0]);
  CHECK(ex == CfoExample());
  CHECK(Surface(ex, EntityRole::kSubject) == TokenSeq{"Douglas", "Flint"});
  CHECK(Surface(ex, EntityRole::kObject) == TokenSeq{"chairman"});
}

TEST_CASE("relation reader edge cases") {
  CHECK(ParseRelation("[]").size() == 0);
  CHECK_THROWS_AS(ParseRelation("{}"), ValidationError);
  CHECK_THROWS_AS(ParseRelation("[1"), ValidationError);

  const std::string base =
      R"({"id":"a","token":["x","y","z"],"subj_start":0,"subj_end":0,"obj_start":2,"obj_end":2,"subj_type":"P","obj_type":"O","relation":"r"})";
  CHECK(ParseRelation("[" + base + "]").size() == 1);

  auto expect_error = [](const std::string& doc, const std::string& fragment) {
    try {
      ParseRelation(doc);
      FAIL("expected a validation error: " << fragment);
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  // subj_end beyond the token count names the record.
  expect_error(
      "[" + base + "," +
          R"({"id":"b","token":["x"],"subj_start":0,"subj_end":3,"obj_start":0,"obj_end":0,"subj_type":"P","obj_type":"O","relation":"r"})" +
          "]",
      "record 1");
  expect_error("[" + base + "," + base + "]", "duplicate id");
  expect_error(
      R"([{"id":"c","token":["x","y"],"subj_start":0,"subj_end":1,"obj_start":1,"obj_end":1,"subj_type":"P","obj_type":"O","relation":"r"}])",
      "overlap");
  expect_error(
      R"([{"id":"c","token":["x","y"],"subj_start":0,"subj_end":0,"obj_start":1,"obj_end":1,"subj_type":"P","obj_type":"O","relation":""}])",
      "empty relation");
  expect_error(
      R"([{"id":"c","token":["x","y"],"subj_start":0,"subj_end":0,"obj_start":1,"obj_end":1,"subj_type":"P","obj_type":"O","relation":"r","stanford_pos":["NN"]}])",
      "stanford_pos");
  expect_error(
      R"([{"id":"c","token":["x y","z"],"subj_start":0,"subj_end":0,"obj_start":1,"obj_end":1,"subj_type":"P","obj_type":"O","relation":"r"}])",
      "whitespace");
  expect_error(
      R"([{"id":"c","token":["x","z"],"subj_start":-1,"subj_end":0,"obj_start":1,"obj_end":1,"subj_type":"P","obj_type":"O","relation":"r"}])",
      "subj_start");
}

TEST_CASE("relation writer omits absent annotations and is stable") {
  TempDir dir;
  Dataset ds;
  ds.task = Task::kRelation;
  ds.records.push_back(CfoExample());
  RelationExample annotated = CfoExample();
  annotated.id = "tacred-0002";
  annotated.pos = std::vector<std::string>(annotated.tokens.size(), "NN");
  annotated.ner = std::vector<std::string>(annotated.tokens.size(), "O");
  ds.records.push_back(annotated);

  WriteRelation(ds, dir / "a.json");
  const std::string first = ReadFile(dir / "a.json");
  WriteRelation(ds, dir / "a.json");
  CHECK(ReadFile(dir / "a.json") == first);

  const std::string line0 = SerializeRecord(ds.records[0]);
  CHECK(line0.find("stanford_pos") == std::string::npos);
  CHECK(SerializeRecord(ds.records[1]).find("stanford_pos") != std::string::npos);
  // Key order follows the public schema.
  CHECK(line0.rfind(R"({"id":"tacred-0001","token":[)", 0) == 0);

  const Dataset back = ReadRelation(dir / "a.json");
  REQUIRE(back.size() == 2);
  CHECK(back.records[0] == ds.records[0]);
  CHECK(std::get<RelationExample>(back.records[1]) == annotated);

  CHECK_THROWS_AS(WriteNli(ds, dir / "b.json"), ConfigError);
}

TEST_CASE("nli reader accepts JSON lines and tab-separated files") {
  const std::string jsonl =
      R"({"annotator_labels":["entailment"],"genre":"government","gold_label":"entailment","pairID":"31193n","promptID":"31193","sentence1":"Conceptually cream skimming has two basic dimensions.","sentence2":"Product and geography are what make cream skimming work."})"
      "\n\n"
      R"({"genre":"fiction","gold_label":"neutral","pairID":"2","sentence1":"a","sentence2":"b"})"
      "\n";
  const Dataset ds = ParseNli(jsonl);
  REQUIRE(ds.size() == 2);
  const auto& first = std::get<NliExample>(ds.records[0]);
  CHECK(first.pair_id == "31193n");
  CHECK(first.label == NliLabel::kEntailment);
  CHECK(first.genre == "government");

  const std::string tsv =
      "index\tpromptID\tpairID\tgenre\tsentence1\tsentence2\tgold_label\n"
      "0\t31193\t31193n\tgovernment\tThe premise.\tThe hypothesis.\tcontradiction\n";
  const Dataset t = ParseNli(tsv);
  REQUIRE(t.size() == 1);
  CHECK(std::get<NliExample>(t.records[0]).premise == "The premise.");
  CHECK(std::get<NliExample>(t.records[0]).label == NliLabel::kContradiction);

  CHECK(ParseNli("").size() == 0);
}

TEST_CASE("nli reader rejects unknown labels with the line number") {
  const std::string jsonl =
      R"({"pairID":"1","sentence1":"a","sentence2":"b","gold_label":"entailment","genre":"g"})"
      "\n"
      R"({"pairID":"2","sentence1":"a","sentence2":"b","gold_label":"maybe","genre":"g"})"
      "\n";
  try {
    ParseNli(jsonl);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(
      ParseNli(R"({"pairID":"1","sentence1":"  ","sentence2":"b","gold_label":"neutral"})"),
      ValidationError);
}

TEST_CASE("generic reader keeps field order") {
  const Dataset ds = ParseGeneric(R"({"id":"x","label":"pos","title":"T","body":"B"})");
  const auto& ex = std::get<GenericExample>(ds.records[0]);
  REQUIRE(ex.fields.size() == 2);
  CHECK(ex.fields[0].first == "title");
  CHECK(ex.fields[1].first == "body");
  CHECK_THROWS_AS(ParseGeneric(R"({"id":"x","label":"pos"})"), ValidationError);
  CHECK_THROWS_AS(ParseGeneric(R"({"id":"x","label":"pos","n":3})"), ValidationError);
}

TEST_CASE("write then read round-trips all task types") {
  TempDir dir;
  std::mt19937 rng(17);

  Dataset rel;
  rel.task = Task::kRelation;
  for (std::size_t i = 0; i < 200; ++i) rel.records.push_back(testing::RandomRelation(rng, i));
  WriteDataset(rel, dir / "rel.json");
  const Dataset rel_back = ReadRelation(dir / "rel.json");
  CHECK(rel_back.records == rel.records);

  Dataset nli = testing::NliFixture(50);
  // Text needing escapes.
  std::get<NliExample>(nli.records[3]).premise = "line one\nline \"two\"\ttab \\ café";
  WriteDataset(nli, dir / "nli.jsonl");
  CHECK(ReadNli(dir / "nli.jsonl").records == nli.records);

  Dataset gen = testing::GenericFixture(50);
  std::get<GenericExample>(gen.records[0]).fields.emplace_back("second", "more text");
  WriteDataset(gen, dir / "gen.jsonl");
  CHECK(ReadGeneric(dir / "gen.jsonl").records == gen.records);
}

TEST_CASE("dataset validation rejects mixed record kinds") {
  Dataset ds;
  ds.task = Task::kRelation;
  ds.records.push_back(CfoExample());
  ds.records.push_back(testing::NliFixture(1).records[0]);
  CHECK_THROWS_AS(ValidateDataset(ds), ValidationError);
}

}  // namespace
}  // namespace tsaug
