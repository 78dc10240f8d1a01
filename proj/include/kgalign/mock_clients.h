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
#include <memory>
#include <set>
#include <string>
#include <unordered_map>

#include "kgalign/clients.h"

// Deterministic in-process clients. Every test and the CLI's mock mode run
// against these; none of them touch the network.
namespace kgalign {

// Unit vector derived from a seeded 64-bit hash of the text. Distinct texts
// give nearly orthogonal vectors.
class MockEmbedder : public EmbeddingClient {
 public:
  static constexpr size_t kDefaultDimension = 64;

  explicit MockEmbedder(size_t dimension = kDefaultDimension, uint64_t seed = 0)
      : dimension_(dimension), seed_(seed) {}

  std::vector<Vector> Embed(std::span<const std::string> texts) const override;
  Vector EmbedText(std::string_view text) const;
  size_t dimension() const { return dimension_; }

 private:
  size_t dimension_;
  uint64_t seed_;
};

// Returns pinned vectors for known texts and falls back to MockEmbedder.
class TableEmbedder : public EmbeddingClient {
 public:
  explicit TableEmbedder(size_t dimension = MockEmbedder::kDefaultDimension,
                         uint64_t seed = 0)
      : fallback_(dimension, seed) {}

  void Set(std::string text, Vector v) { table_[std::move(text)] = std::move(v); }
  std::vector<Vector> Embed(std::span<const std::string> texts) const override;

 private:
  std::unordered_map<std::string, Vector> table_;
  MockEmbedder fallback_;
};

// Sentence-level pattern matcher: a sentence containing a schema relation as
// a whole-word phrase yields (text before, relation, items after) where the
// items are split on commas and " and ". Works for any text, including
// generated answers, so it drives the end-to-end mock pipeline.
class PatternExtractor : public ExtractionClient {
 public:
  RawExtraction Extract(std::string_view text, const Schema& schema) const override;
};

// Scripted outputs keyed by exact text, delegating to a fallback for unknown
// texts (or returning nothing when there is none). Texts registered with
// FailOn raise kExtractionFailure.
class ScriptedExtractor : public ExtractionClient {
 public:
  explicit ScriptedExtractor(std::shared_ptr<const ExtractionClient> fallback = nullptr)
      : fallback_(std::move(fallback)) {}

  void Set(std::string text, std::vector<RawTriple> triples) {
    script_[std::move(text)] = std::move(triples);
  }
  void FailOn(std::string text) { failing_.insert(std::move(text)); }

  RawExtraction Extract(std::string_view text, const Schema& schema) const override;

  // Loads `{"text": str, "triples": [...]}` records; with `fail: true` the
  // text is registered as failing instead.
  static std::unique_ptr<ScriptedExtractor> FromJsonl(
      const std::string& path, std::shared_ptr<const ExtractionClient> fallback);

 private:
  std::shared_ptr<const ExtractionClient> fallback_;
  std::map<std::string, std::vector<RawTriple>, std::less<>> script_;
  std::set<std::string, std::less<>> failing_;
};

// Looks up scripted outputs by the question at the end of the prompt (the
// text after the last "question: " marker) or by the whole prompt. Seed s
// rotates the scripted list by s positions. Unscripted prompts, and slots
// beyond the script, get synthetic hash-tagged answers.
class ScriptedGenerator : public GenerationClient {
 public:
  void Set(std::string key, std::vector<std::string> outputs) {
    script_[std::move(key)] = std::move(outputs);
  }
  std::vector<std::string> Generate(std::string_view prompt, int n,
                                    uint64_t seed) const override;

  // Loads `{"question": str, "outputs": [str, ...]}` records.
  static std::unique_ptr<ScriptedGenerator> FromJsonl(const std::string& path);

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> script_;
};

// 64-bit FNV-1a followed by a splitmix64 finalizer.
uint64_t HashText(std::string_view text, uint64_t seed);

}  // namespace kgalign
