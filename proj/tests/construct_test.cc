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
#include <cmath>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fixture_cases.h"
#include "generators.h"
#include "gtest/gtest.h"
#include "kgalign/construct.h"
#include "kgalign/error.h"
#include "kgalign/kg_io.h"
#include "kgalign/mock_clients.h"
#include "oracles.h"
#include "test_support.h"

namespace kgalign {
namespace {

using testing::FixturePath;
using testing::MedSchema;

RawTriple Raw(std::string s, std::string p, std::vector<std::string> o) {
  return RawTriple{std::move(s), std::move(p), std::move(o)};
}

std::vector<std::string> Serialized(const std::vector<Triple>& triples) {
  std::vector<std::string> out;
  for (const auto& t : triples) out.push_back(SerializeTriple(t));
  return out;
}

TEST(PostprocessTest, FixtureCasesMatchGolden) {
  Schema schema = io::LoadSchema(FixturePath("schema.json"));
  std::vector<io::Json> rejects;
  auto cases = testing::LoadPostprocessCases();
  ASSERT_EQ(cases.size(), 40u);
  for (const auto& c : cases) {
    auto result = Postprocess(c.raw, c.doc, schema);
    EXPECT_EQ(Serialized(result.triples), c.expected) << c.doc.id;
    for (const auto& r : result.rejects) rejects.push_back(RejectToJson(r));
  }
  EXPECT_EQ(rejects, testing::LoadGoldenRejects());
}

TEST(PostprocessTest, DropsTripleLackingSubject) {
  Document doc{"d", "Rome and Florence are cities of Italy."};
  RawExtraction raw{"d", {Raw("", "City", {"Rome"})}};
  auto result = Postprocess(raw, doc, Schema({"City"}));
  EXPECT_TRUE(result.triples.empty());
  ASSERT_EQ(result.rejects.size(), 1u);
  EXPECT_EQ(result.rejects[0].rule, Rule::kIncompleteFormat);
}

TEST(PostprocessTest, DropsObjectAbsentFromText) {
  Document doc{"d", "Rome and Florence are cities of Italy."};
  RawExtraction raw{"d", {Raw("Italy", "City", {"Milan"})}};
  auto result = Postprocess(raw, doc, Schema({"City"}));
  EXPECT_TRUE(result.triples.empty());
  EXPECT_EQ(result.rejects.at(0).rule, Rule::kNotInText);
}

TEST(PostprocessTest, DropsSelfLoop) {
  Document doc{"d", "X relates to X."};
  RawExtraction raw{"d", {Raw("X", "r", {"X"})}};
  auto result = Postprocess(raw, doc, Schema({"r"}));
  EXPECT_TRUE(result.triples.empty());
  EXPECT_EQ(result.rejects.at(0).rule, Rule::kSelfLoop);
}

TEST(PostprocessTest, MismatchedDocumentIsAnError) {
  Document doc{"d1", "text"};
  RawExtraction raw{"d2", {}};
  try {
    Postprocess(raw, doc, Schema({"r"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDocMismatch);
  }
}

TEST(PostprocessTest, WithoutSourceSkipsTextCheck) {
  RawExtraction raw{"", {Raw("Italy", "City", {"Milan", "Italy"}), Raw("A", "River", {"B"})}};
  auto result = PostprocessWithoutSource(raw, Schema({"City"}));
  EXPECT_EQ(Serialized(result.triples), (std::vector<std::string>{"<Italy, City, Milan>"}));
  ASSERT_EQ(result.rejects.size(), 2u);
  EXPECT_EQ(result.rejects[0].rule, Rule::kSelfLoop);
  EXPECT_EQ(result.rejects[1].rule, Rule::kUnknownRelation);
}

TEST(PostprocessTest, IsIdempotentOnFixture) {
  Schema schema = io::LoadSchema(FixturePath("schema.json"));
  for (const auto& c : testing::LoadPostprocessCases()) {
    auto once = Postprocess(c.raw, c.doc, schema);
    RawExtraction again{c.doc.id, {}};
    for (const auto& t : once.triples) {
      again.raw_triples.push_back(Raw(t.subject(), t.predicate(), t.objects()));
    }
    auto twice = Postprocess(again, c.doc, schema);
    EXPECT_EQ(twice.triples, once.triples) << c.doc.id;
    EXPECT_TRUE(twice.rejects.empty()) << c.doc.id;
  }
}

TEST(PostprocessTest, RejectJsonShape) {
  Reject r{"d1", Raw("A", "r", {"B"}), Rule::kNotInText};
  EXPECT_EQ(io::Dump(RejectToJson(r)),
            R"({"doc_id":"d1","triple":{"subject":"A","predicate":"r","objects":["B"]},"rule":2})");
}

// Unit vectors in the plane spanned by e0 and e1, at the given angle.
Vector AtAngle(double radians, size_t dim = 8) {
  Vector v(dim, 0.0f);
  v[0] = static_cast<float>(std::cos(radians));
  v[1] = static_cast<float>(std::sin(radians));
  return v;
}

Vector Basis(size_t i, size_t dim = 8) {
  Vector v(dim, 0.0f);
  v[i] = 1.0f;
  return v;
}

KnowledgeGraph OneEdgePerSubject(const std::vector<std::string>& subjects) {
  std::vector<Subgraph> sgs;
  for (size_t i = 0; i < subjects.size(); ++i) {
    sgs.push_back(Subgraph{subjects[i], {Edge{"treats", {"o" + std::to_string(i)}}}});
  }
  return KnowledgeGraph(MedSchema(), sgs);
}

TEST(ResolveTest, MergesTransitiveChain) {
  // sim(A,B) = sim(B,C) = 0.95. sim(A,C) is then cos(2 acos 0.95) ~ 0.805,
  // below the threshold, so C joins only through B. D and E are orthogonal.
  const double theta = std::acos(0.95);
  TableEmbedder embed(8);
  embed.Set("A", AtAngle(0));
  embed.Set("Bb", AtAngle(theta));
  embed.Set("C", AtAngle(2 * theta));
  embed.Set("D", Basis(2));
  embed.Set("E", Basis(3));
  std::vector<std::string> subjects = {"A", "Bb", "C", "D", "E"};
  KnowledgeGraph kg = OneEdgePerSubject(subjects);

  auto result = ResolveEntities(kg, embed, 0.9);
  EXPECT_EQ(result.report.merged_groups,
            (std::vector<std::vector<std::string>>{{"A", "Bb", "C"}}));
  EXPECT_DOUBLE_EQ(result.report.similarity_threshold, 0.9);

  std::vector<Vector> vectors = embed.Embed(subjects);
  EXPECT_EQ(testing::ToGroups(result.report.merged_groups),
            oracle::ResolutionGroups(subjects, vectors, 0.9));
  ASSERT_EQ(result.kg.subgraphs().size(), 3u);
  EXPECT_EQ(result.kg.subgraphs()[0].subject, "Bb");
  EXPECT_EQ(result.kg.FindTriple("Bb", "treats")->objects(),
            (std::vector<std::string>{"o0", "o1", "o2"}));
}

TEST(ResolveTest, IdenticalSubjectVectorsAlwaysMerge) {
  TableEmbedder embed(8);
  embed.Set("aspirin", Basis(0));
  embed.Set("Aspirin", Basis(0));
  embed.Set("other", Basis(1));
  KnowledgeGraph kg = OneEdgePerSubject({"aspirin", "other", "Aspirin"});
  auto result = ResolveEntities(kg, embed, 1.0);
  EXPECT_EQ(result.report.merged_groups,
            (std::vector<std::vector<std::string>>{{"aspirin", "Aspirin"}}));
  // Same length: the lexicographically smaller name wins.
  EXPECT_EQ(result.kg.subgraphs()[0].subject, "Aspirin");
}

TEST(ResolveTest, OrthogonalEmbeddingsLeaveGraphUnchanged) {
  TableEmbedder embed(8);
  for (size_t i = 0; i < 5; ++i) embed.Set("s" + std::to_string(i), Basis(i));
  KnowledgeGraph kg = OneEdgePerSubject({"s0", "s1", "s2", "s3", "s4"});
  auto result = ResolveEntities(kg, embed, 1.0);
  EXPECT_TRUE(result.report.merged_groups.empty());
  EXPECT_EQ(result.kg, kg);
}

TEST(ResolveTest, DropsObjectEqualToNewName) {
  TableEmbedder embed(8);
  embed.Set("Metformin", Basis(0));
  embed.Set("Metformin HCl", Basis(0));
  std::vector<Subgraph> sgs = {
      Subgraph{"Metformin", {Edge{"interacts with", {"Metformin HCl", "alcohol"}}}},
      Subgraph{"Metformin HCl", {Edge{"treats", {"type 2 diabetes"}}}}};
  KnowledgeGraph kg(MedSchema(), sgs);
  auto result = ResolveEntities(kg, embed, 0.9);
  ASSERT_EQ(result.kg.subgraphs().size(), 1u);
  EXPECT_EQ(result.kg.subgraphs()[0].subject, "Metformin HCl");
  EXPECT_EQ(result.kg.FindTriple("Metformin HCl", "interacts with")->objects(),
            (std::vector<std::string>{"alcohol"}));
}

TEST(ResolveTest, RejectsThresholdOutOfRange) {
  MockEmbedder embed;
  KnowledgeGraph kg = OneEdgePerSubject({"a"});
  EXPECT_THROW(ResolveEntities(kg, embed, 0.0), Error);
  EXPECT_THROW(ResolveEntities(kg, embed, 1.5), Error);
}

TEST(ResolveTest, MatchesOracleOnRandomGraphs) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 60; ++round) {
    auto c = testing::RandomResolutionCase(rng);
    for (double threshold : {0.5, 0.9, 1.0}) {
      auto result = ResolveEntities(c.kg, c.embedder, threshold, 1 + round % 4);
      auto groups = oracle::ResolutionGroups(c.subjects, c.vectors, threshold);
      ASSERT_EQ(testing::ToGroups(result.report.merged_groups), groups)
          << "round " << round << " threshold " << threshold;
      EXPECT_EQ(result.kg.subgraphs(), testing::ExpectedResolvedSubgraphs(c.kg, groups));
      // Each merge removes exactly one subgraph.
      EXPECT_EQ(ComputeKgStats(result.kg).subject_count,
                c.subjects.size() - [&] {
                  size_t merged = 0;
                  for (const auto& g : groups) merged += g.size() - 1;
                  return merged;
                }());
    }
  }
}

TEST(ResolveTest, WorkerCountDoesNotChangeResult) {
  std::mt19937_64 rng(5);
  auto c = testing::RandomResolutionCase(rng);
  auto serial = ResolveEntities(c.kg, c.embedder, 0.5, 1);
  auto parallel = ResolveEntities(c.kg, c.embedder, 0.5, 8);
  EXPECT_EQ(serial.kg, parallel.kg);
  EXPECT_EQ(serial.report.merged_groups, parallel.report.merged_groups);
}

TEST(BuildKgTest, SingleCleanTripleGivesOneSubgraph) {
  std::vector<Document> docs = {{"d1", "Aspirin treats headache."}};
  auto result = BuildKg(docs, PatternExtractor(), MedSchema(), MockEmbedder());
  ASSERT_EQ(result.kg.subgraphs().size(), 1u);
  EXPECT_EQ(result.kg.Triples(),
            (std::vector<Triple>{Triple("Aspirin", "treats", {"headache"})}));
  ASSERT_EQ(result.doc_triples.size(), 1u);
  EXPECT_EQ(result.doc_triples[0].doc_id, "d1");
}

TEST(BuildKgTest, SchemaViolationsOnlyGiveEmptyGraph) {
  ScriptedExtractor extractor;
  extractor.Set("a", {Raw("a", "cures", {"b"})});
  extractor.Set("b", {Raw("b", "relieves", {"a"})});
  std::vector<Document> docs = {{"d1", "a"}, {"d2", "b"}};
  auto result = BuildKg(docs, extractor, MedSchema(), MockEmbedder());
  EXPECT_TRUE(result.kg.subgraphs().empty());
  EXPECT_EQ(result.rejects.size(), 2u);
}

TEST(BuildKgTest, FailedExtractionIsSkipped) {
  ScriptedExtractor extractor(std::make_shared<PatternExtractor>());
  extractor.FailOn("Gout causes joint pain.");
  std::vector<Document> docs = {{"d1", "Gout causes joint pain."},
                                {"d2", "Allopurinol treats gout."}};
  auto result = BuildKg(docs, extractor, MedSchema(), MockEmbedder());
  EXPECT_EQ(result.failed_doc_ids, (std::vector<std::string>{"d1"}));
  EXPECT_EQ(result.kg.subgraphs().size(), 1u);
}

TEST(BuildKgTest, TwentyDocumentFixtureMatchesGolden) {
  Schema schema = io::LoadSchema(FixturePath("schema.json"));
  auto docs = io::LoadDocuments(FixturePath("e2e/documents.jsonl"));
  auto extractor = ScriptedExtractor::FromJsonl(FixturePath("e2e/extractions.jsonl").string(),
                                                std::make_shared<PatternExtractor>());
  for (size_t workers : {1u, 4u}) {
    auto result = BuildKg(docs, *extractor, schema, MockEmbedder(), {0.9, workers});
    EXPECT_EQ(io::KgToText(result.kg), io::ReadFile(FixturePath("e2e/golden/kg.json")));
    EXPECT_EQ(result.failed_doc_ids, (std::vector<std::string>{"d19"}));
    std::vector<io::Json> rejects;
    for (const auto& r : result.rejects) rejects.push_back(RejectToJson(r));
    EXPECT_EQ(io::ToJsonl(rejects), io::ReadFile(FixturePath("e2e/golden/rejects.jsonl")));
  }
}

}  // namespace
}  // namespace kgalign
