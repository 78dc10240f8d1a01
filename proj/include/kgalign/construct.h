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
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgalign/clients.h"
#include "kgalign/kg.h"
#include "kgalign/kg_io.h"

namespace kgalign {

// Cleaning rules applied to raw extractor output, in order.
enum class Rule {
  kIncompleteFormat = 1,  // missing subject, predicate or objects
  kNotInText = 2,         // subject or an object absent from the source text
  kUnknownRelation = 3,   // predicate outside the schema
  kSelfLoop = 4,          // object equal to the subject
};

struct Reject {
  std::string doc_id;
  RawTriple triple;
  Rule rule;
};

struct PostprocessResult {
  std::vector<Triple> triples;  // merged
  std::vector<Reject> rejects;
};

// Applies rules 1-4 and merges the survivors. A rule-4 object is dropped on
// its own; the triple goes only when no objects remain. Each dropped object
// is reported as a rule-4 reject. Throws kDocMismatch when ids differ.
PostprocessResult Postprocess(const RawExtraction& raw, const Document& doc,
                              const Schema& schema);

// Rules 1, 3 and 4 only, for text with no source document (generated
// answers).
PostprocessResult PostprocessWithoutSource(const RawExtraction& raw,
                                           const Schema& schema);

io::Json RejectToJson(const Reject& reject);

struct ResolutionReport {
  std::vector<std::vector<std::string>> merged_groups;
  double similarity_threshold = 0.0;
};

io::Json ResolutionReportToJson(const ResolutionReport& report);

struct ResolutionResult {
  KnowledgeGraph kg;
  ResolutionReport report;
};

inline constexpr double kDefaultResolutionThreshold = 0.9;

// Places every pair of subjects with cosine similarity >= threshold in one
// class (transitively) and merges each class into a single subgraph named
// after its longest member, ties going to the lexicographically smallest.
// Objects are never renamed; an object that ends up equal to its new subject
// is dropped.
ResolutionResult ResolveEntities(const KnowledgeGraph& kg,
                                 const EmbeddingClient& embed,
                                 double threshold,
                                 size_t max_workers = 1);

struct BuildOptions {
  double resolution_threshold = kDefaultResolutionThreshold;
  size_t max_in_flight = 4;
};

struct BuildResult {
  KnowledgeGraph kg;
  ResolutionReport report;
  // Cleaned triples per document, before resolution, with provenance.
  std::vector<io::TripleRecord> doc_triples;
  std::vector<Reject> rejects;
  std::vector<std::string> failed_doc_ids;
};

// Extract, clean, assemble and resolve. Documents whose extraction fails are
// logged and skipped.
BuildResult BuildKg(std::span<const Document> corpus,
                    const ExtractionClient& extractor, const Schema& schema,
                    const EmbeddingClient& embed,
                    const BuildOptions& options = {});

}  // namespace kgalign
