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
#include "kgalign/kg.h"

#include <algorithm>

#include "kgalign/error.h"
#include "kgalign/text.h"

namespace kgalign {

namespace {

bool IsSpecial(char c) {
  return c == '\\' || c == '<' || c == '>' || c == ',' || c == '|';
}

void AppendEscaped(std::string_view field, std::string& out) {
  for (char c : field) {
    if (IsSpecial(c)) out.push_back('\\');
    out.push_back(c);
  }
}

std::string Unescape(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (size_t i = 0; i < field.size(); ++i) {
    if (field[i] == '\\' && i + 1 < field.size()) ++i;
    out.push_back(field[i]);
  }
  return out;
}

// Splits on `sep` wherever it is not preceded by an escaping backslash.
// Pieces are returned still escaped.
std::vector<std::string_view> SplitUnescaped(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

// Position of the first unescaped `c` at or after `from`, or npos.
size_t FindUnescaped(std::string_view s, char c, size_t from) {
  for (size_t i = from; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == c) return i;
  }
  return std::string_view::npos;
}

Triple ParseBracketed(std::string_view s, const Schema& schema) {
  if (s.size() < 2 || s.front() != '<' || s.back() != '>' ||
      FindUnescaped(s, '>', 1) != s.size() - 1) {
    throw Error(ErrorCode::kMalformedTriple,
                "expected <subject, predicate, objects>: " + std::string(s));
  }
  auto fields = SplitUnescaped(s.substr(1, s.size() - 2), ',');
  if (fields.size() != 3) {
    throw Error(ErrorCode::kMalformedTriple,
                "expected 3 fields, got " + std::to_string(fields.size()) +
                    ": " + std::string(s));
  }
  if (FindUnescaped(s, '<', 1) != std::string_view::npos) {
    throw Error(ErrorCode::kMalformedTriple,
                "unescaped '<' inside triple: " + std::string(s));
  }
  std::string subject = Unescape(fields[0]);
  std::string predicate = Unescape(fields[1]);
  std::vector<std::string> objects;
  for (auto piece : SplitUnescaped(fields[2], '|')) {
    objects.push_back(Unescape(piece));
  }
  Triple triple(subject, predicate, objects);
  if (!schema.Contains(triple.predicate())) {
    throw Error(ErrorCode::kUnknownRelation, triple.predicate());
  }
  return triple;
}

}  // namespace

Schema::Schema(std::vector<std::string> relations,
               std::map<std::string, std::string> descriptions) {
  if (relations.empty()) {
    throw Error(ErrorCode::kInvalidSchema, "schema has no relations");
  }
  for (const auto& raw : relations) {
    std::string name = text::NormalizeWhitespace(raw);
    if (name.empty()) {
      throw Error(ErrorCode::kInvalidSchema, "blank relation name");
    }
    if (!lookup_.insert(name).second) {
      throw Error(ErrorCode::kInvalidSchema, "duplicate relation: " + name);
    }
    relations_.push_back(std::move(name));
  }
  for (auto& [name, description] : descriptions) {
    std::string key = text::NormalizeWhitespace(name);
    if (!lookup_.contains(key)) {
      throw Error(ErrorCode::kInvalidSchema,
                  "description for unknown relation: " + key);
    }
    descriptions_[key] = std::move(description);
  }
}

bool Schema::Contains(std::string_view relation) const {
  return lookup_.contains(text::NormalizeWhitespace(relation));
}

Triple::Triple(std::string_view subject, std::string_view predicate,
               std::span<const std::string> objects)
    : subject_(text::NormalizeWhitespace(subject)),
      predicate_(text::NormalizeWhitespace(predicate)) {
  if (subject_.empty()) throw Error(ErrorCode::kEmptyField, "empty subject");
  if (predicate_.empty()) {
    throw Error(ErrorCode::kEmptyField, "empty predicate");
  }
  if (objects.empty()) throw Error(ErrorCode::kEmptyField, "no objects");
  for (const auto& raw : objects) {
    std::string object = text::NormalizeWhitespace(raw);
    if (object.empty()) throw Error(ErrorCode::kEmptyField, "empty object");
    if (object == subject_) {
      throw Error(ErrorCode::kMalformedTriple,
                  "object equals subject: " + object);
    }
    if (std::find(objects_.begin(), objects_.end(), object) == objects_.end()) {
      objects_.push_back(std::move(object));
    }
  }
}

KnowledgeGraph::KnowledgeGraph(Schema schema, std::span<const Triple> triples)
    : schema_(std::move(schema)) {
  for (const auto& t : triples) AddTriple(t);
}

KnowledgeGraph::KnowledgeGraph(Schema schema,
                               std::span<const Subgraph> subgraphs)
    : schema_(std::move(schema)) {
  for (const auto& sg : subgraphs) {
    std::string subject = text::NormalizeWhitespace(sg.subject);
    if (subject.empty()) {
      throw Error(ErrorCode::kEmptyField, "subgraph with empty subject");
    }
    AddSubject(subject);
    for (const auto& edge : sg.edges) {
      AddTriple(Triple(subject, edge.predicate, edge.objects));
    }
  }
}

void KnowledgeGraph::AddSubject(const std::string& subject) {
  if (by_subject_.contains(subject)) return;
  by_subject_.emplace(subject, subgraphs_.size());
  subgraphs_.push_back(Subgraph{subject, {}});
  entities_.insert(subject);
}

void KnowledgeGraph::AddTriple(const Triple& triple) {
  if (!schema_.Contains(triple.predicate())) {
    throw Error(ErrorCode::kUnknownRelation, triple.predicate());
  }
  AddSubject(triple.subject());
  Subgraph& sg = subgraphs_[by_subject_.at(triple.subject())];
  auto it = std::find_if(sg.edges.begin(), sg.edges.end(), [&](const Edge& e) {
    return e.predicate == triple.predicate();
  });
  if (it == sg.edges.end()) {
    sg.edges.push_back(Edge{triple.predicate(), {}});
    it = sg.edges.end() - 1;
  }
  for (const auto& o : triple.objects()) {
    if (std::find(it->objects.begin(), it->objects.end(), o) ==
        it->objects.end()) {
      it->objects.push_back(o);
    }
    entities_.insert(o);
  }
}

const Subgraph* KnowledgeGraph::Find(std::string_view subject) const {
  auto it = by_subject_.find(text::NormalizeWhitespace(subject));
  return it == by_subject_.end() ? nullptr : &subgraphs_[it->second];
}

std::optional<Triple> KnowledgeGraph::FindTriple(
    std::string_view subject, std::string_view predicate) const {
  const Subgraph* sg = Find(subject);
  if (sg == nullptr) return std::nullopt;
  std::string p = text::NormalizeWhitespace(predicate);
  for (const auto& e : sg->edges) {
    if (e.predicate == p) return Triple(sg->subject, e.predicate, e.objects);
  }
  return std::nullopt;
}

std::vector<Triple> KnowledgeGraph::Triples() const {
  std::vector<Triple> out;
  out.reserve(EdgeCount());
  for (const auto& sg : subgraphs_) {
    for (const auto& e : sg.edges) {
      out.emplace_back(sg.subject, e.predicate, e.objects);
    }
  }
  return out;
}

size_t KnowledgeGraph::EdgeCount() const {
  size_t n = 0;
  for (const auto& sg : subgraphs_) n += sg.edges.size();
  return n;
}

std::string SerializeTriple(const Triple& triple) {
  std::string out = "<";
  AppendEscaped(triple.subject(), out);
  out += ", ";
  AppendEscaped(triple.predicate(), out);
  out += ", ";
  for (size_t i = 0; i < triple.objects().size(); ++i) {
    if (i > 0) out.push_back('|');
    AppendEscaped(triple.objects()[i], out);
  }
  out.push_back('>');
  return out;
}

Triple ParseTriple(std::string_view s, const Schema& schema) {
  return ParseBracketed(text::Trim(s), schema);
}

std::string SerializeTripleBlock(std::span<const Triple> triples) {
  std::string out;
  for (size_t i = 0; i < triples.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += SerializeTriple(triples[i]);
  }
  return out;
}

std::vector<Triple> ParseTripleBlock(std::string_view s,
                                     const Schema& schema) {
  std::vector<Triple> out;
  size_t pos = 0;
  while (true) {
    while (pos < s.size() && text::IsSpace(s[pos])) ++pos;
    if (pos == s.size()) break;
    if (s[pos] != '<') {
      throw Error(ErrorCode::kMalformedTriple,
                  "expected '<' at offset " + std::to_string(pos));
    }
    size_t close = FindUnescaped(s, '>', pos + 1);
    if (close == std::string_view::npos) {
      throw Error(ErrorCode::kMalformedTriple, "unterminated triple");
    }
    out.push_back(ParseBracketed(s.substr(pos, close - pos + 1), schema));
    pos = close + 1;
  }
  return out;
}

std::vector<Triple> MergeTriples(std::span<const Triple> triples) {
  std::vector<std::string> subjects;
  std::vector<std::string> predicates;
  std::vector<std::vector<std::string>> objects;
  std::map<std::pair<std::string, std::string>, size_t> slot;
  for (const auto& t : triples) {
    auto [it, inserted] =
        slot.try_emplace({t.subject(), t.predicate()}, subjects.size());
    if (inserted) {
      subjects.push_back(t.subject());
      predicates.push_back(t.predicate());
      objects.emplace_back();
    }
    auto& merged = objects[it->second];
    for (const auto& o : t.objects()) {
      if (std::find(merged.begin(), merged.end(), o) == merged.end()) {
        merged.push_back(o);
      }
    }
  }
  std::vector<Triple> out;
  out.reserve(subjects.size());
  for (size_t i = 0; i < subjects.size(); ++i) {
    out.emplace_back(subjects[i], predicates[i], objects[i]);
  }
  return out;
}

KgStats ComputeKgStats(const KnowledgeGraph& kg) {
  KgStats stats;
  stats.subject_count = kg.subgraphs().size();
  stats.entity_count = kg.entities().size();
  for (const auto& sg : kg.subgraphs()) {
    for (const auto& e : sg.edges) {
      stats.triple_count += e.objects.size();
      stats.relation_histogram[e.predicate] += e.objects.size();
    }
  }
  return stats;
}

}  // namespace kgalign
