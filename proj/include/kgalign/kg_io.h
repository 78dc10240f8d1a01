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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kgalign/kg.h"

// File formats owned by the graph model: kg.json, triples.jsonl,
// documents.jsonl, schema files, plus the JSONL and atomic-write helpers used
// by every command.
namespace kgalign::io {

using Json = nlohmann::ordered_json;

std::string ReadFile(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

// Parses one JSON object per non-blank line. Errors carry the 1-based line.
std::vector<Json> ReadJsonl(const std::filesystem::path& path);
std::string ToJsonl(const std::vector<Json>& records);

// Compact single-line dump; non-ASCII is kept as UTF-8.
std::string Dump(const Json& value);

Json SchemaToJson(const Schema& schema);
Schema SchemaFromJson(const Json& j);
Schema LoadSchema(const std::filesystem::path& path);

Json KgToJson(const KnowledgeGraph& kg);
KnowledgeGraph KgFromJson(const Json& j);
KnowledgeGraph LoadKg(const std::filesystem::path& path);
// Pretty-printed, newline-terminated kg.json text.
std::string KgToText(const KnowledgeGraph& kg);

// triples.jsonl record.
struct TripleRecord {
  std::optional<std::string> doc_id;
  Triple triple;
};

Json TripleRecordToJson(const TripleRecord& record);
TripleRecord TripleRecordFromJson(const Json& j, const Schema& schema);

Document DocumentFromJson(const Json& j);
std::vector<Document> LoadDocuments(const std::filesystem::path& path);

// Reads a string field, throwing kFormat when absent or not a string.
std::string RequireString(const Json& j, std::string_view key);
std::vector<std::string> RequireStringArray(const Json& j,
                                            std::string_view key);

}  // namespace kgalign::io
