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
#include "kgalign/retrieval.h"

#include <algorithm>

#include <openssl/evp.h>

#include "kgalign/error.h"
#include "kgalign/kg_io.h"
#include "kgalign/vector_math.h"

namespace kgalign {

Fingerprint KgFingerprint(const KnowledgeGraph& kg) {
  const std::string canonical = io::Dump(io::KgToJson(kg));
  Fingerprint fp{};
  unsigned int len = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), fp.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != fp.size()) {
    throw Error(ErrorCode::kIo, "SHA-256 digest failed");
  }
  return fp;
}

std::string FingerprintHex(const Fingerprint& fp) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(fp.size() * 2);
  for (uint8_t b : fp) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

std::string PairText(std::string_view subject, std::string_view predicate) {
  std::string out(subject);
  out.push_back(' ');
  out += predicate;
  return out;
}

SubgraphIndex::SubgraphIndex(size_t dimension, Fingerprint fingerprint,
                             std::vector<IndexEntry> entries)
    : dimension_(dimension),
      fingerprint_(fingerprint),
      entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.vector.size() != dimension_) {
      throw Error(ErrorCode::kFormat, "entry (" + e.subject + ", " + e.predicate +
                                          ") has dimension " +
                                          std::to_string(e.vector.size()));
    }
  }
}

std::vector<ScoredEntry> SubgraphIndex::Search(std::span<const float> query,
                                               size_t k, double threshold) const {
  std::vector<ScoredEntry> hits;
  for (size_t i = 0; i < entries_.size(); ++i) {
    double score = Cosine(entries_[i].vector, query);
    if (score >= threshold) hits.push_back({i, score});
  }
  auto better = [this](const ScoredEntry& a, const ScoredEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    const auto& ea = entries_[a.entry];
    const auto& eb = entries_[b.entry];
    if (ea.subject != eb.subject) return ea.subject < eb.subject;
    return ea.predicate < eb.predicate;
  };
  size_t keep = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep),
                    hits.end(), better);
  hits.resize(keep);
  return hits;
}

SubgraphIndex BuildIndex(const KnowledgeGraph& kg, const EmbeddingClient& embed) {
  std::vector<IndexEntry> entries;
  std::vector<std::string> texts;
  for (const auto& sg : kg.subgraphs()) {
    for (const auto& e : sg.edges) {
      entries.push_back(IndexEntry{sg.subject, e.predicate, {}});
      texts.push_back(PairText(sg.subject, e.predicate));
    }
  }
  if (entries.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot index a graph without edges");
  }
  std::vector<Vector> vectors = EmbedChecked(embed, texts);
  for (size_t i = 0; i < entries.size(); ++i) {
    entries[i].vector = Normalized(vectors[i]);
  }
  const size_t dim = entries.front().vector.size();
  return SubgraphIndex(dim, KgFingerprint(kg), std::move(entries));
}

Retriever::Retriever(const SubgraphIndex& index, const KnowledgeGraph& kg)
    : index_(index), kg_(kg) {
  if (index.fingerprint() != KgFingerprint(kg)) {
    throw Error(ErrorCode::kFingerprintMismatch,
                "index " + FingerprintHex(index.fingerprint()) +
                    " was not built from this graph");
  }
}

RetrievalResult Retriever::Retrieve(std::string_view query,
                                    const RetrievalOptions& options,
                                    const EmbeddingClient& embed) const {
  if (options.top_k < 1) {
    throw Error(ErrorCode::kInvalidArgument, "top_k must be at least 1");
  }
  Vector q = EmbedOne(embed, std::string(query));
  if (q.size() != index_.dimension()) {
    throw Error(ErrorCode::kEmbeddingFailure,
                "query dimension " + std::to_string(q.size()) + " != index dimension " +
                    std::to_string(index_.dimension()));
  }
  RetrievalResult result;
  for (const auto& hit : index_.Search(q, options.top_k, options.threshold)) {
    const auto& entry = index_.entries()[hit.entry];
    auto triple = kg_.FindTriple(entry.subject, entry.predicate);
    if (!triple) {
      throw Error(ErrorCode::kFingerprintMismatch,
                  "pair (" + entry.subject + ", " + entry.predicate + ") not in graph");
    }
    result.triples.push_back(std::move(*triple));
    result.scores.push_back(hit.score);
  }
  return result;
}

RetrievalResult Retrieve(const SubgraphIndex& index, const KnowledgeGraph& kg,
                         std::string_view query, const RetrievalOptions& options,
                         const EmbeddingClient& embed) {
  return Retriever(index, kg).Retrieve(query, options, embed);
}

std::string AssemblePrompt(const RetrievalResult& result, std::string_view question) {
  std::string out(kKgPrefix);
  out += SerializeTripleBlock(result.triples);
  out.push_back('\n');
  out += kInstructionPrefix;
  out += question;
  return out;
}

}  // namespace kgalign
