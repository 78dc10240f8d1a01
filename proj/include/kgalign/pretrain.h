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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "kgalign/kg.h"
#include "kgalign/kg_io.h"

namespace kgalign {

// Triples-to-text training record: the serialized triple block of a
// document is the input, the document itself the target. No instruction
// wrapper is added; the retrieval prompt's "[KG]: " prefix is also left to
// the consumer.
struct PretrainExample {
  std::string doc_id;
  std::string input;
  std::string target;

  bool operator==(const PretrainExample&) const = default;
};

using TriplesByDoc = std::map<std::string, std::vector<Triple>>;

// Groups triples.jsonl records by doc_id, keeping record order. Records
// without a doc_id are rejected with kUnknownDocId.
TriplesByDoc GroupByDocument(std::span<const io::TripleRecord> records);

// One example per document with at least one triple, in corpus order.
// Throws kUnknownDocId for keys missing from the corpus.
std::vector<PretrainExample> MakePretrainExamples(std::span<const Document> corpus,
                                                  const TriplesByDoc& per_doc);

io::Json PretrainExampleToJson(const PretrainExample& example);

}  // namespace kgalign
