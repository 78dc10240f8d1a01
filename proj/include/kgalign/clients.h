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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kgalign/kg.h"

namespace kgalign {

using Vector = std::vector<float>;

// Extractor output before cleaning. Any field may be empty or invalid.
struct RawTriple {
  std::string subject;
  std::string predicate;
  std::vector<std::string> objects;

  bool operator==(const RawTriple&) const = default;
};

struct RawExtraction {
  std::string doc_id;
  std::vector<RawTriple> raw_triples;
};

// Implementations must tolerate concurrent calls.
class EmbeddingClient {
 public:
  virtual ~EmbeddingClient() = default;
  // One vector per text, all of the same dimension; the same text always maps
  // to the same vector.
  virtual std::vector<Vector> Embed(std::span<const std::string> texts) const = 0;
};

class ExtractionClient {
 public:
  virtual ~ExtractionClient() = default;
  // The returned doc_id is left empty; callers own document identity.
  virtual RawExtraction Extract(std::string_view text,
                                const Schema& schema) const = 0;
};

class GenerationClient {
 public:
  virtual ~GenerationClient() = default;
  virtual std::vector<std::string> Generate(std::string_view prompt, int n,
                                            uint64_t seed) const = 0;
};

// Embeds through `client` and validates the response shape. Any failure,
// including a client exception, is rethrown as kEmbeddingFailure.
std::vector<Vector> EmbedChecked(const EmbeddingClient& client,
                                 std::span<const std::string> texts);
Vector EmbedOne(const EmbeddingClient& client, const std::string& text);

// Client failures rethrown as kExtractionFailure.
RawExtraction ExtractChecked(const ExtractionClient& client,
                             std::string_view text, const Schema& schema);

// Wire format, version 1.
//   POST /v1/embed    {"texts":[...]}                    -> {"vectors":[[...]]}
//   POST /v1/extract  {"text":..., "relations":[...]}    -> {"triples":[...]}
//   POST /v1/generate {"prompt":..., "n":..., "seed":...} -> {"outputs":[...]}
// FromJson functions throw kProtocol on shape errors.
namespace wire {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kEmbedPath = "/v1/embed";
inline constexpr std::string_view kExtractPath = "/v1/extract";
inline constexpr std::string_view kGeneratePath = "/v1/generate";

struct EmbedRequest {
  std::vector<std::string> texts;
};
struct EmbedResponse {
  std::vector<std::vector<double>> vectors;
};
struct ExtractRequest {
  std::string text;
  std::vector<std::string> relations;
};
struct ExtractResponse {
  std::vector<RawTriple> triples;
};
struct GenerateRequest {
  std::string prompt;
  int n = 1;
  uint64_t seed = 0;
};
struct GenerateResponse {
  std::vector<std::string> outputs;
};

Json ToJson(const EmbedRequest& r);
Json ToJson(const EmbedResponse& r);
Json ToJson(const ExtractRequest& r);
Json ToJson(const ExtractResponse& r);
Json ToJson(const GenerateRequest& r);
Json ToJson(const GenerateResponse& r);

EmbedRequest EmbedRequestFromJson(const Json& j);
EmbedResponse EmbedResponseFromJson(const Json& j);
ExtractRequest ExtractRequestFromJson(const Json& j);
ExtractResponse ExtractResponseFromJson(const Json& j);
GenerateRequest GenerateRequestFromJson(const Json& j);
GenerateResponse GenerateResponseFromJson(const Json& j);

Json RawTripleToJson(const RawTriple& t);
RawTriple RawTripleFromJson(const Json& j);

}  // namespace wire

}  // namespace kgalign
