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
#include "kgalign/mock_clients.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kgalign/error.h"
#include "kgalign/kg_io.h"
#include "kgalign/text.h"

namespace kgalign {

namespace {

uint64_t SplitMix64(uint64_t& state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool IsSentenceBreak(char32_t cp) {
  switch (cp) {
    case U'.': case U'!': case U'?': case U';': case U'\n':
    case U'。': case U'！': case U'？': case U'；':
      return true;
    default:
      return false;
  }
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char32_t cp : text::DecodeUtf8(text)) {
    if (IsSentenceBreak(cp)) {
      out.push_back(text::NormalizeWhitespace(current));
      current.clear();
    } else {
      text::AppendUtf8(cp, current);
    }
  }
  out.push_back(text::NormalizeWhitespace(current));
  std::erase_if(out, [](const std::string& s) { return s.empty(); });
  return out;
}

// Earliest whole-word occurrence of `phrase` in `s`.
size_t FindPhrase(const std::string& s, const std::string& phrase) {
  size_t pos = s.find(phrase);
  while (pos != std::string::npos) {
    bool left = pos == 0 || s[pos - 1] == ' ';
    bool right = pos + phrase.size() == s.size() || s[pos + phrase.size()] == ' ';
    if (left && right) return pos;
    pos = s.find(phrase, pos + 1);
  }
  return std::string::npos;
}

std::vector<std::string> SplitItems(std::string_view s) {
  std::vector<std::string> items;
  // " and " and "," are both list separators.
  std::string str(s);
  size_t pos = 0;
  while ((pos = str.find(" and ", pos)) != std::string::npos) {
    str.replace(pos, 5, ",");
  }
  size_t start = 0;
  while (true) {
    size_t comma = str.find(',', start);
    std::string item = text::NormalizeWhitespace(
        std::string_view(str).substr(start, comma == std::string::npos
                                                ? std::string::npos
                                                : comma - start));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

std::string Hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

uint64_t HashText(std::string_view text, uint64_t seed) {
  uint64_t h = 0xCBF29CE484222325ULL ^ seed;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  uint64_t state = h;
  return SplitMix64(state);
}

Vector MockEmbedder::EmbedText(std::string_view text) const {
  uint64_t state = HashText(text, seed_);
  std::vector<double> raw(dimension_);
  double norm2 = 0.0;
  for (auto& x : raw) {
    // Uniform in [-1, 1) from the top 53 bits.
    x = static_cast<double>(SplitMix64(state) >> 11) * 0x1.0p-52 - 1.0;
    norm2 += x * x;
  }
  double inv = 1.0 / std::sqrt(norm2);
  Vector v(dimension_);
  for (size_t i = 0; i < dimension_; ++i) v[i] = static_cast<float>(raw[i] * inv);
  return v;
}

std::vector<Vector> MockEmbedder::Embed(std::span<const std::string> texts) const {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(EmbedText(t));
  return out;
}

std::vector<Vector> TableEmbedder::Embed(std::span<const std::string> texts) const {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    auto it = table_.find(t);
    out.push_back(it != table_.end() ? it->second : fallback_.EmbedText(t));
  }
  return out;
}

RawExtraction PatternExtractor::Extract(std::string_view text,
                                        const Schema& schema) const {
  // Longer relations first so that "is caused by" beats "caused".
  std::vector<std::string> relations = schema.relations();
  std::stable_sort(relations.begin(), relations.end(),
                   [](const std::string& a, const std::string& b) {
                     return a.size() > b.size();
                   });
  RawExtraction out;
  for (const auto& sentence : SplitSentences(text)) {
    size_t best = std::string::npos;
    const std::string* best_rel = nullptr;
    for (const auto& rel : relations) {
      size_t pos = FindPhrase(sentence, rel);
      if (pos < best) {
        best = pos;
        best_rel = &rel;
      }
    }
    if (best_rel == nullptr) continue;
    RawTriple t;
    t.subject = text::NormalizeWhitespace(std::string_view(sentence).substr(0, best));
    t.predicate = *best_rel;
    t.objects = SplitItems(std::string_view(sentence).substr(best + best_rel->size()));
    out.raw_triples.push_back(std::move(t));
  }
  return out;
}

RawExtraction ScriptedExtractor::Extract(std::string_view text,
                                         const Schema& schema) const {
  if (failing_.contains(text)) {
    throw Error(ErrorCode::kExtractionFailure, "scripted failure");
  }
  if (auto it = script_.find(text); it != script_.end()) {
    return RawExtraction{{}, it->second};
  }
  if (fallback_) return fallback_->Extract(text, schema);
  return RawExtraction{};
}

std::unique_ptr<ScriptedExtractor> ScriptedExtractor::FromJsonl(
    const std::string& path, std::shared_ptr<const ExtractionClient> fallback) {
  auto extractor = std::make_unique<ScriptedExtractor>(std::move(fallback));
  for (const auto& j : io::ReadJsonl(path)) {
    std::string text = io::RequireString(j, "text");
    if (j.value("fail", false)) {
      extractor->FailOn(std::move(text));
      continue;
    }
    std::vector<RawTriple> triples;
    if (auto it = j.find("triples"); it != j.end()) {
      for (const auto& t : *it) triples.push_back(wire::RawTripleFromJson(t));
    }
    extractor->Set(std::move(text), std::move(triples));
  }
  return extractor;
}

std::vector<std::string> ScriptedGenerator::Generate(std::string_view prompt, int n,
                                                     uint64_t seed) const {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative sample count");
  constexpr std::string_view kMarker = "question: ";
  std::string_view question = prompt;
  if (auto pos = prompt.rfind(kMarker); pos != std::string_view::npos) {
    question = prompt.substr(pos + kMarker.size());
  }
  const std::vector<std::string>* scripted = nullptr;
  if (auto it = script_.find(prompt); it != script_.end()) {
    scripted = &it->second;
  } else if (auto jt = script_.find(question); jt != script_.end()) {
    scripted = &jt->second;
  }
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(n));
  const size_t count = scripted ? scripted->size() : 0;
  for (int i = 0; i < n; ++i) {
    if (static_cast<size_t>(i) < count) {
      out.push_back((*scripted)[(seed + static_cast<uint64_t>(i)) % count]);
    } else {
      uint64_t tag = HashText(prompt, seed * 1000003ULL + static_cast<uint64_t>(i));
      out.push_back("Sample " + Hex64(tag) + ": " + std::string(question));
    }
  }
  return out;
}

std::unique_ptr<ScriptedGenerator> ScriptedGenerator::FromJsonl(const std::string& path) {
  auto gen = std::make_unique<ScriptedGenerator>();
  for (const auto& j : io::ReadJsonl(path)) {
    gen->Set(io::RequireString(j, "question"), io::RequireStringArray(j, "outputs"));
  }
  return gen;
}

}  // namespace kgalign
