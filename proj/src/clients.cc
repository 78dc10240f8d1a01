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
#include "kgalign/clients.h"

#include "kgalign/error.h"

namespace kgalign {

std::vector<Vector> EmbedChecked(const EmbeddingClient& client,
                                 std::span<const std::string> texts) {
  std::vector<Vector> vectors;
  try {
    vectors = client.Embed(texts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kEmbeddingFailure) throw;
    throw Error(ErrorCode::kEmbeddingFailure, e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kEmbeddingFailure, e.what());
  }
  if (vectors.size() != texts.size()) {
    throw Error(ErrorCode::kEmbeddingFailure,
                "expected " + std::to_string(texts.size()) + " vectors, got " +
                    std::to_string(vectors.size()));
  }
  for (const auto& v : vectors) {
    if (v.empty() || v.size() != vectors.front().size()) {
      throw Error(ErrorCode::kEmbeddingFailure, "inconsistent vector dimension");
    }
  }
  return vectors;
}

Vector EmbedOne(const EmbeddingClient& client, const std::string& text) {
  return EmbedChecked(client, std::span<const std::string>(&text, 1)).front();
}

RawExtraction ExtractChecked(const ExtractionClient& client,
                             std::string_view text, const Schema& schema) {
  try {
    return client.Extract(text, schema);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kExtractionFailure) throw;
    throw Error(ErrorCode::kExtractionFailure, e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kExtractionFailure, e.what());
  }
}

namespace wire {

namespace {

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::kProtocol, std::string("missing field ") + key);
  }
  return j.at(key);
}

std::vector<std::string> Strings(const Json& j, const char* key) {
  const Json& arr = Field(j, key);
  if (!arr.is_array()) {
    throw Error(ErrorCode::kProtocol, std::string(key) + " is not an array");
  }
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (!v.is_string()) {
      throw Error(ErrorCode::kProtocol, std::string(key) + " holds a non-string");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string String(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_string()) {
    throw Error(ErrorCode::kProtocol, std::string(key) + " is not a string");
  }
  return v.get<std::string>();
}

}  // namespace

Json ToJson(const EmbedRequest& r) { return Json{{"texts", r.texts}}; }

Json ToJson(const EmbedResponse& r) { return Json{{"vectors", r.vectors}}; }

Json ToJson(const ExtractRequest& r) {
  return Json{{"text", r.text}, {"relations", r.relations}};
}

Json ToJson(const ExtractResponse& r) {
  Json triples = Json::array();
  for (const auto& t : r.triples) triples.push_back(RawTripleToJson(t));
  return Json{{"triples", triples}};
}

Json ToJson(const GenerateRequest& r) {
  return Json{{"prompt", r.prompt}, {"n", r.n}, {"seed", r.seed}};
}

Json ToJson(const GenerateResponse& r) { return Json{{"outputs", r.outputs}}; }

EmbedRequest EmbedRequestFromJson(const Json& j) {
  return EmbedRequest{Strings(j, "texts")};
}

EmbedResponse EmbedResponseFromJson(const Json& j) {
  const Json& arr = Field(j, "vectors");
  if (!arr.is_array()) throw Error(ErrorCode::kProtocol, "vectors is not an array");
  EmbedResponse r;
  for (const auto& row : arr) {
    if (!row.is_array()) throw Error(ErrorCode::kProtocol, "vector is not an array");
    std::vector<double> v;
    v.reserve(row.size());
    for (const auto& x : row) {
      if (!x.is_number()) {
        throw Error(ErrorCode::kProtocol, "vector holds a non-number");
      }
      v.push_back(x.get<double>());
    }
    r.vectors.push_back(std::move(v));
  }
  return r;
}

ExtractRequest ExtractRequestFromJson(const Json& j) {
  return ExtractRequest{String(j, "text"), Strings(j, "relations")};
}

ExtractResponse ExtractResponseFromJson(const Json& j) {
  const Json& arr = Field(j, "triples");
  if (!arr.is_array()) throw Error(ErrorCode::kProtocol, "triples is not an array");
  ExtractResponse r;
  for (const auto& t : arr) r.triples.push_back(RawTripleFromJson(t));
  return r;
}

GenerateRequest GenerateRequestFromJson(const Json& j) {
  const Json& n = Field(j, "n");
  const Json& seed = Field(j, "seed");
  if (!n.is_number_integer() || !seed.is_number_integer()) {
    throw Error(ErrorCode::kProtocol, "n and seed must be integers");
  }
  return GenerateRequest{String(j, "prompt"), n.get<int>(), seed.get<uint64_t>()};
}

GenerateResponse GenerateResponseFromJson(const Json& j) {
  return GenerateResponse{Strings(j, "outputs")};
}

Json RawTripleToJson(const RawTriple& t) {
  return Json{{"subject", t.subject},
              {"predicate", t.predicate},
              {"objects", t.objects}};
}

// Extractors may emit null or missing fields; those become empty strings so
// that post-processing, not the transport, rejects them.
RawTriple RawTripleFromJson(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kProtocol, "triple is not an object");
  auto str = [&](const char* key) -> std::string {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    if (!it->is_string()) {
      throw Error(ErrorCode::kProtocol, std::string(key) + " is not a string");
    }
    return it->get<std::string>();
  };
  RawTriple t{str("subject"), str("predicate"), {}};
  if (auto it = j.find("objects"); it != j.end() && !it->is_null()) {
    if (it->is_string()) {
      t.objects.push_back(it->get<std::string>());
    } else if (it->is_array()) {
      for (const auto& o : *it) {
        t.objects.push_back(o.is_string() ? o.get<std::string>() : std::string());
      }
    } else {
      throw Error(ErrorCode::kProtocol, "objects is not an array");
    }
  }
  return t;
}

}  // namespace wire

}  // namespace kgalign
