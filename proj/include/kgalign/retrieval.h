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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgalign/clients.h"
#include "kgalign/kg.h"

namespace kgalign {

using Fingerprint = std::array<uint8_t, 32>;

// SHA-256 of the compact kg.json serialization.
Fingerprint KgFingerprint(const KnowledgeGraph& kg);
std::string FingerprintHex(const Fingerprint& fp);

// Text embedded for a (subject, predicate) pair: "subject predicate".
std::string PairText(std::string_view subject, std::string_view predicate);

struct IndexEntry {
  std::string subject;
  std::string predicate;
  Vector vector;  // unit length

  bool operator==(const IndexEntry&) const = default;
};

struct ScoredEntry {
  size_t entry = 0;
  double score = 0.0;
};

// Immutable embedding index over the (subject, predicate) pairs of one graph.
class SubgraphIndex {
 public:
  // Throws kFormat when an entry does not have `dimension` components.
  SubgraphIndex(size_t dimension, Fingerprint fingerprint,
                std::vector<IndexEntry> entries);

  size_t dimension() const { return dimension_; }
  const Fingerprint& fingerprint() const { return fingerprint_; }
  const std::vector<IndexEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }

  // Exhaustive cosine scan. Entries scoring below `threshold` are dropped;
  // the rest are ordered by descending score, then ascending (subject,
  // predicate), and truncated to k.
  std::vector<ScoredEntry> Search(std::span<const float> query, size_t k,
                                  double threshold) const;

  bool operator==(const SubgraphIndex&) const = default;

 private:
  size_t dimension_;
  Fingerprint fingerprint_;
  std::vector<IndexEntry> entries_;
};

// One entry per (subject, predicate) edge in graph order. Throws
// kInvalidArgument for a graph without edges, kEmbeddingFailure on client
// errors.
SubgraphIndex BuildIndex(const KnowledgeGraph& kg, const EmbeddingClient& embed);

inline constexpr size_t kDefaultTopK = 5;
inline constexpr double kDefaultRetrievalThreshold = 0.9;

struct RetrievalOptions {
  size_t top_k = kDefaultTopK;
  double threshold = kDefaultRetrievalThreshold;
};

struct RetrievalResult {
  std::vector<Triple> triples;
  std::vector<double> scores;
};

// An index bound to the graph it was built from. The fingerprint is checked
// once, at construction (kFingerprintMismatch). Both references must outlive
// the retriever.
class Retriever {
 public:
  Retriever(const SubgraphIndex& index, const KnowledgeGraph& kg);

  // The query text is embedded unmodified. Each hit is expanded back into the
  // full merged triple from the graph.
  RetrievalResult Retrieve(std::string_view query, const RetrievalOptions& options,
                           const EmbeddingClient& embed) const;

 private:
  const SubgraphIndex& index_;
  const KnowledgeGraph& kg_;
};

// One-shot form of Retriever.
RetrievalResult Retrieve(const SubgraphIndex& index, const KnowledgeGraph& kg,
                         std::string_view query, const RetrievalOptions& options,
                         const EmbeddingClient& embed);

inline constexpr std::string_view kKgPrefix = "[KG]: ";
inline constexpr std::string_view kInstructionPrefix =
    "[Instruction]: Refer to the KG and answer the following question: ";

// "[KG]: <t1> <t2>\n[Instruction]: Refer to the KG and answer the following
// question: <question>"
std::string AssemblePrompt(const RetrievalResult& result, std::string_view question);

// index.bin, little-endian:
//   "SPIX" | version u32 | dim u32 | count u64 | fingerprint[32]
//   count x { u32 len, subject | u32 len, predicate | dim x f32 }
inline constexpr uint32_t kIndexVersion = 1;

std::string EncodeIndex(const SubgraphIndex& index);
SubgraphIndex DecodeIndex(std::string_view bytes);
void WriteIndex(const std::filesystem::path& path, const SubgraphIndex& index);
SubgraphIndex ReadIndex(const std::filesystem::path& path);

}  // namespace kgalign
