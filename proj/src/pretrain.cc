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
#include "kgalign/pretrain.h"

#include <unordered_set>

#include "kgalign/error.h"

namespace kgalign {

TriplesByDoc GroupByDocument(std::span<const io::TripleRecord> records) {
  TriplesByDoc out;
  for (const auto& r : records) {
    if (!r.doc_id) {
      throw Error(ErrorCode::kUnknownDocId,
                  "triple " + SerializeTriple(r.triple) + " has no doc_id");
    }
    out[*r.doc_id].push_back(r.triple);
  }
  return out;
}

std::vector<PretrainExample> MakePretrainExamples(std::span<const Document> corpus,
                                                  const TriplesByDoc& per_doc) {
  std::unordered_set<std::string> ids;
  for (const auto& d : corpus) ids.insert(d.id);
  for (const auto& [id, triples] : per_doc) {
    if (!ids.contains(id)) throw Error(ErrorCode::kUnknownDocId, id);
  }
  std::vector<PretrainExample> out;
  for (const auto& doc : corpus) {
    auto it = per_doc.find(doc.id);
    if (it == per_doc.end() || it->second.empty()) continue;
    out.push_back(PretrainExample{doc.id, SerializeTripleBlock(it->second), doc.text});
  }
  return out;
}

io::Json PretrainExampleToJson(const PretrainExample& example) {
  return io::Json{{"input", example.input},
                  {"target", example.target},
                  {"doc_id", example.doc_id}};
}

}  // namespace kgalign
