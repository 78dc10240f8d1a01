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

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kgalign {

// Closed set of admissible relation names for a domain.
class Schema {
 public:
  Schema() = default;
  // Throws kInvalidSchema when empty, when a name is blank, or when two names
  // collide after whitespace normalization.
  explicit Schema(std::vector<std::string> relations,
                  std::map<std::string, std::string> descriptions = {});

  const std::vector<std::string>& relations() const { return relations_; }
  const std::map<std::string, std::string>& descriptions() const {
    return descriptions_;
  }
  bool Contains(std::string_view relation) const;
  bool empty() const { return relations_.empty(); }

 private:
  std::vector<std::string> relations_;
  std::unordered_set<std::string> lookup_;
  std::map<std::string, std::string> descriptions_;
};

// A subject-predicate pair with its merged object set. Fields are stored
// whitespace-normalized; objects keep first-seen order with duplicates
// removed. Schema membership of the predicate is checked by whoever owns the
// schema (ParseTriple, KnowledgeGraph).
class Triple {
 public:
  Triple(std::string_view subject, std::string_view predicate,
         std::span<const std::string> objects);
  Triple(std::string_view subject, std::string_view predicate,
         std::initializer_list<std::string> objects)
      : Triple(subject, predicate,
               std::span<const std::string>(objects.begin(), objects.size())) {}

  const std::string& subject() const { return subject_; }
  const std::string& predicate() const { return predicate_; }
  const std::vector<std::string>& objects() const { return objects_; }

  bool operator==(const Triple&) const = default;

 private:
  std::string subject_;
  std::string predicate_;
  std::vector<std::string> objects_;
};

struct Edge {
  std::string predicate;
  std::vector<std::string> objects;

  bool operator==(const Edge&) const = default;
};

struct Subgraph {
  std::string subject;
  std::vector<Edge> edges;

  bool operator==(const Subgraph&) const = default;
};

struct Document {
  std::string id;
  std::string text;
};

// Subject-indexed graph. Subgraphs keep first-insertion order so that every
// serialization of a graph is deterministic.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  explicit KnowledgeGraph(Schema schema) : schema_(std::move(schema)) {}
  // Throws kUnknownRelation for predicates outside the schema.
  KnowledgeGraph(Schema schema, std::span<const Triple> triples);
  // Accepts subgraphs that share a subject or repeat a predicate and merges
  // them. Subjects without edges are kept.
  KnowledgeGraph(Schema schema, std::span<const Subgraph> subgraphs);

  const Schema& schema() const { return schema_; }
  const std::vector<Subgraph>& subgraphs() const { return subgraphs_; }
  const std::set<std::string>& entities() const { return entities_; }

  const Subgraph* Find(std::string_view subject) const;
  std::optional<Triple> FindTriple(std::string_view subject,
                                   std::string_view predicate) const;
  // One triple per (subject, predicate) edge, in graph order.
  std::vector<Triple> Triples() const;
  size_t EdgeCount() const;

  bool operator==(const KnowledgeGraph& other) const {
    return schema_.relations() == other.schema_.relations() &&
           subgraphs_ == other.subgraphs_;
  }

 private:
  void AddSubject(const std::string& subject);
  void AddTriple(const Triple& triple);

  Schema schema_;
  std::vector<Subgraph> subgraphs_;
  std::unordered_map<std::string, size_t> by_subject_;
  std::set<std::string> entities_;
};

// `<subject, predicate, obj1|obj2>`. Backslash, `<`, `>`, `,` and `|` inside
// a field are escaped with a backslash.
std::string SerializeTriple(const Triple& triple);

// Inverse of SerializeTriple. Throws kMalformedTriple, kEmptyField or
// kUnknownRelation.
Triple ParseTriple(std::string_view s, const Schema& schema);

// Triples joined by a single space: the KG payload format shared by
// retrieval prompts and pre-learning inputs.
std::string SerializeTripleBlock(std::span<const Triple> triples);
std::vector<Triple> ParseTripleBlock(std::string_view s, const Schema& schema);

// One output triple per distinct (subject, predicate), keys and objects in
// first-seen order.
std::vector<Triple> MergeTriples(std::span<const Triple> triples);

struct KgStats {
  size_t subject_count = 0;
  // (s, p, o) facts with merged objects expanded.
  size_t triple_count = 0;
  size_t entity_count = 0;
  std::map<std::string, size_t> relation_histogram;

  bool operator==(const KgStats&) const = default;
};

KgStats ComputeKgStats(const KnowledgeGraph& kg);

}  // namespace kgalign
