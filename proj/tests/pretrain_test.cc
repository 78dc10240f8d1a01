// Copyright 2026 The kgalign Authors
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
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "kgalign/error.h"
#include "kgalign/kg_io.h"
#include "kgalign/pretrain.h"
#include "test_support.h"

namespace kgalign {
namespace {

using testing::FixturePath;

TEST(PretrainTest, InvertsTriplesToDocumentText) {
  std::vector<Document> docs = {{"d1", "Rome and Florence are cities of Italy."}};
  TriplesByDoc per_doc;
  per_doc["d1"] = {Triple("Italy", "City", {"Rome", "Florence"})};
  auto examples = MakePretrainExamples(docs, per_doc);
  ASSERT_EQ(examples.size(), 1u);
  EXPECT_EQ(examples[0].input, "<Italy, City, Rome|Florence>");
  EXPECT_EQ(examples[0].target, "Rome and Florence are cities of Italy.");
  EXPECT_EQ(io::Dump(PretrainExampleToJson(examples[0])),
            R"({"input":"<Italy, City, Rome|Florence>",)"
            R"("target":"Rome and Florence are cities of Italy.","doc_id":"d1"})");
}

TEST(PretrainTest, DocumentWithoutTriplesIsSkipped) {
  std::vector<Document> docs = {{"d1", "a"}, {"d2", "b"}, {"d3", "c"}};
  TriplesByDoc per_doc;
  per_doc["d3"] = {Triple("x", "r", {"y"})};
  per_doc["d2"] = {};
  auto examples = MakePretrainExamples(docs, per_doc);
  ASSERT_EQ(examples.size(), 1u);
  EXPECT_EQ(examples[0].doc_id, "d3");
}

TEST(PretrainTest, UnknownDocIdIsAnError) {
  std::vector<Document> docs = {{"d1", "a"}};
  TriplesByDoc per_doc;
  per_doc["ghost"] = {Triple("x", "r", {"y"})};
  try {
    MakePretrainExamples(docs, per_doc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownDocId);
  }
}

TEST(PretrainTest, GroupingKeepsRecordOrderAndNeedsDocIds) {
  std::vector<io::TripleRecord> records = {{"b", Triple("x", "r", {"1"})},
                                           {"a", Triple("y", "r", {"2"})},
                                           {"b", Triple("z", "r", {"3"})}};
  auto grouped = GroupByDocument(records);
  EXPECT_EQ(grouped.at("b"),
            (std::vector<Triple>{Triple("x", "r", {"1"}), Triple("z", "r", {"3"})}));
  records.push_back({std::nullopt, Triple("q", "r", {"4"})});
  EXPECT_THROW(GroupByDocument(records), Error);
}

TEST(PretrainTest, FixtureCountEqualsDocumentsWithTriples) {
  auto docs = io::LoadDocuments(FixturePath("e2e/documents.jsonl"));
  Schema schema = io::LoadSchema(FixturePath("schema.json"));
  std::vector<io::TripleRecord> records;
  std::set<std::string> with_triples;
  for (const auto& j : io::ReadJsonl(FixturePath("e2e/golden/triples.jsonl"))) {
    records.push_back(io::TripleRecordFromJson(j, schema));
    with_triples.insert(j.at("doc_id").get<std::string>());
  }
  auto examples = MakePretrainExamples(docs, GroupByDocument(records));
  EXPECT_EQ(examples.size(), with_triples.size());
  EXPECT_EQ(examples.size(), 19u);  // every document but d19, whose extraction fails
  for (size_t i = 1; i < examples.size(); ++i) {
    EXPECT_LT(examples[i - 1].doc_id, examples[i].doc_id);
  }
}

}  // namespace
}  // namespace kgalign
