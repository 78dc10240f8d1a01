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
#include "kgalign/construct.h"

#include <algorithm>
#include <numeric>

#include <spdlog/spdlog.h>

#include "kgalign/error.h"
#include "kgalign/parallel.h"
#include "kgalign/text.h"
#include "kgalign/vector_math.h"

namespace kgalign {

namespace {

bool FormatComplete(const RawTriple& t) {
  if (text::NormalizeWhitespace(t.subject).empty() ||
      text::NormalizeWhitespace(t.predicate).empty() || t.objects.empty()) {
    return false;
  }
  return std::none_of(t.objects.begin(), t.objects.end(), [](const std::string& o) {
    return text::NormalizeWhitespace(o).empty();
  });
}

// Shared driver; `source` is the normalized document text, or null to skip
// rule 2.
PostprocessResult Clean(const RawExtraction& raw, const std::string* source,
                        const Schema& schema) {
  PostprocessResult result;
  std::vector<Triple> kept;
  for (const auto& t : raw.raw_triples) {
    if (!FormatComplete(t)) {
      result.rejects.push_back({raw.doc_id, t, Rule::kIncompleteFormat});
      continue;
    }
    std::string subject = text::NormalizeWhitespace(t.subject);
    if (source != nullptr) {
      bool present = source->find(subject) != std::string::npos;
      for (size_t i = 0; present && i < t.objects.size(); ++i) {
        present = source->find(text::NormalizeWhitespace(t.objects[i])) !=
                  std::string::npos;
      }
      if (!present) {
        result.rejects.push_back({raw.doc_id, t, Rule::kNotInText});
        continue;
      }
    }
    if (!schema.Contains(t.predicate)) {
      result.rejects.push_back({raw.doc_id, t, Rule::kUnknownRelation});
      continue;
    }
    std::vector<std::string> objects;
    std::vector<std::string> self_loops;
    for (const auto& o : t.objects) {
      std::string norm = text::NormalizeWhitespace(o);
      (norm == subject ? self_loops : objects).push_back(o);
    }
    if (!self_loops.empty()) {
      result.rejects.push_back(
          {raw.doc_id, RawTriple{t.subject, t.predicate, self_loops}, Rule::kSelfLoop});
    }
    if (objects.empty()) continue;
    kept.emplace_back(subject, t.predicate, objects);
  }
  result.triples = MergeTriples(kept);
  return result;
}

struct UnionFind {
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), size_t{0});
  }
  size_t Find(size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void Union(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    // The smaller index stays root so roots are stable in graph order.
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
  std::vector<size_t> parent;
};

bool PreferAsCanonical(const std::string& a, const std::string& b) {
  size_t la = text::CodePointCount(a);
  size_t lb = text::CodePointCount(b);
  if (la != lb) return la > lb;
  return a < b;
}

}  // namespace

PostprocessResult Postprocess(const RawExtraction& raw, const Document& doc,
                              const Schema& schema) {
  if (raw.doc_id != doc.id) {
    throw Error(ErrorCode::kDocMismatch,
                "extraction for " + raw.doc_id + " paired with document " + doc.id);
  }
  const std::string source = text::NormalizeWhitespace(doc.text);
  return Clean(raw, &source, schema);
}

PostprocessResult PostprocessWithoutSource(const RawExtraction& raw,
                                           const Schema& schema) {
  return Clean(raw, nullptr, schema);
}

io::Json RejectToJson(const Reject& reject) {
  io::Json j;
  j["doc_id"] = reject.doc_id;
  j["triple"] = wire::RawTripleToJson(reject.triple);
  j["rule"] = static_cast<int>(reject.rule);
  return j;
}

io::Json ResolutionReportToJson(const ResolutionReport& report) {
  return io::Json{{"threshold", report.similarity_threshold},
                  {"groups", report.merged_groups}};
}

ResolutionResult ResolveEntities(const KnowledgeGraph& kg,
                                 const EmbeddingClient& embed, double threshold,
                                 size_t max_workers) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "resolution threshold must be in (0, 1]");
  }
  const auto& subgraphs = kg.subgraphs();
  const size_t n = subgraphs.size();
  std::vector<std::string> subjects;
  subjects.reserve(n);
  for (const auto& sg : subgraphs) subjects.push_back(sg.subject);
  std::vector<Vector> vectors =
      n == 0 ? std::vector<Vector>{} : EmbedChecked(embed, subjects);

  std::vector<std::vector<size_t>> similar(n);
  ParallelFor(n, max_workers, [&](size_t i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (Cosine(vectors[i], vectors[j]) >= threshold) similar[i].push_back(j);
    }
  });
  UnionFind uf(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j : similar[i]) uf.Union(i, j);
  }

  std::vector<std::vector<size_t>> members(n);
  for (size_t i = 0; i < n; ++i) members[uf.Find(i)].push_back(i);
  std::vector<std::string> canonical(n);
  ResolutionResult result;
  result.report.similarity_threshold = threshold;
  for (size_t root = 0; root < n; ++root) {
    if (members[root].empty()) continue;
    std::string best = subjects[members[root].front()];
    for (size_t m : members[root]) {
      if (PreferAsCanonical(subjects[m], best)) best = subjects[m];
    }
    canonical[root] = best;
    if (members[root].size() >= 2) {
      std::vector<std::string> group;
      for (size_t m : members[root]) group.push_back(subjects[m]);
      result.report.merged_groups.push_back(std::move(group));
    }
  }

  std::vector<Subgraph> renamed;
  renamed.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    Subgraph sg{canonical[uf.Find(i)], {}};
    for (const auto& e : subgraphs[i].edges) {
      Edge edge{e.predicate, {}};
      for (const auto& o : e.objects) {
        if (o != sg.subject) edge.objects.push_back(o);
      }
      if (!edge.objects.empty()) sg.edges.push_back(std::move(edge));
    }
    renamed.push_back(std::move(sg));
  }
  result.kg = KnowledgeGraph(kg.schema(), renamed);
  return result;
}

BuildResult BuildKg(std::span<const Document> corpus,
                    const ExtractionClient& extractor, const Schema& schema,
                    const EmbeddingClient& embed, const BuildOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::kInvalidArgument, "empty corpus");

  struct Slot {
    std::optional<PostprocessResult> cleaned;
    std::string error;
  };
  std::vector<Slot> slots(corpus.size());
  ParallelFor(corpus.size(), options.max_in_flight, [&](size_t i) {
    const Document& doc = corpus[i];
    try {
      RawExtraction raw = ExtractChecked(extractor, doc.text, schema);
      raw.doc_id = doc.id;
      slots[i].cleaned = Postprocess(raw, doc, schema);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kExtractionFailure) throw;
      slots[i].error = e.what();
    }
  });

  BuildResult result;
  std::vector<Triple> all;
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (!slots[i].cleaned) {
      spdlog::warn("event=extraction_failed doc_id={} error=\"{}\"", corpus[i].id,
                   slots[i].error);
      result.failed_doc_ids.push_back(corpus[i].id);
      continue;
    }
    auto& cleaned = *slots[i].cleaned;
    for (auto& t : cleaned.triples) {
      all.push_back(t);
      result.doc_triples.push_back(io::TripleRecord{corpus[i].id, std::move(t)});
    }
    std::move(cleaned.rejects.begin(), cleaned.rejects.end(),
              std::back_inserter(result.rejects));
  }
  KnowledgeGraph assembled(schema, all);
  auto resolved = ResolveEntities(assembled, embed, options.resolution_threshold,
                                  options.max_in_flight);
  result.kg = std::move(resolved.kg);
  result.report = std::move(resolved.report);
  spdlog::info("event=build_kg documents={} failed={} triples={} rejects={} merged_groups={}",
               corpus.size(), result.failed_doc_ids.size(), result.doc_triples.size(),
               result.rejects.size(), result.report.merged_groups.size());
  return result;
}

}  // namespace kgalign
