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
#include "kgalign/kg_io.h"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "kgalign/error.h"

namespace kgalign::io {

namespace fs = std::filesystem;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot rename onto " + path.string());
  }
}

std::vector<Json> ReadJsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<Json> records;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kFormat, path.string() + ":" +
                                          std::to_string(lineno) + ": " +
                                          e.what());
    }
  }
  return records;
}

std::string Dump(const Json& value) {
  return value.dump(-1, ' ', false, Json::error_handler_t::replace);
}

std::string ToJsonl(const std::vector<Json>& records) {
  std::string out;
  for (const auto& r : records) {
    out += Dump(r);
    out.push_back('\n');
  }
  return out;
}

std::string RequireString(const Json& j, std::string_view key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::kFormat,
                "missing string field \"" + std::string(key) + "\"");
  }
  return it->get<std::string>();
}

std::vector<std::string> RequireStringArray(const Json& j,
                                            std::string_view key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    throw Error(ErrorCode::kFormat,
                "missing array field \"" + std::string(key) + "\"");
  }
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) {
      throw Error(ErrorCode::kFormat,
                  "non-string element in \"" + std::string(key) + "\"");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

Json SchemaToJson(const Schema& schema) {
  Json j;
  j["relations"] = schema.relations();
  if (!schema.descriptions().empty()) {
    Json d = Json::object();
    for (const auto& [k, v] : schema.descriptions()) d[k] = v;
    j["descriptions"] = d;
  }
  return j;
}

Schema SchemaFromJson(const Json& j) {
  std::map<std::string, std::string> descriptions;
  if (auto it = j.find("descriptions"); it != j.end() && it->is_object()) {
    for (const auto& [k, v] : it->items()) {
      if (v.is_string()) descriptions[k] = v.get<std::string>();
    }
  }
  return Schema(RequireStringArray(j, "relations"), std::move(descriptions));
}

Schema LoadSchema(const fs::path& path) {
  try {
    return SchemaFromJson(Json::parse(ReadFile(path)));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
}

Json KgToJson(const KnowledgeGraph& kg) {
  Json subgraphs = Json::array();
  for (const auto& sg : kg.subgraphs()) {
    Json edges = Json::array();
    for (const auto& e : sg.edges) {
      edges.push_back(Json{{"predicate", e.predicate}, {"objects", e.objects}});
    }
    subgraphs.push_back(Json{{"subject", sg.subject}, {"edges", edges}});
  }
  return Json{{"schema", SchemaToJson(kg.schema())},
              {"subgraphs", subgraphs}};
}

KnowledgeGraph KgFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("schema") || !j.contains("subgraphs")) {
    throw Error(ErrorCode::kFormat, "kg.json needs schema and subgraphs");
  }
  Schema schema = SchemaFromJson(j.at("schema"));
  std::vector<Subgraph> subgraphs;
  for (const auto& sj : j.at("subgraphs")) {
    Subgraph sg;
    sg.subject = RequireString(sj, "subject");
    if (auto it = sj.find("edges"); it != sj.end()) {
      for (const auto& ej : *it) {
        sg.edges.push_back(
            Edge{RequireString(ej, "predicate"), RequireStringArray(ej, "objects")});
      }
    }
    subgraphs.push_back(std::move(sg));
  }
  return KnowledgeGraph(std::move(schema), subgraphs);
}

KnowledgeGraph LoadKg(const fs::path& path) {
  try {
    return KgFromJson(Json::parse(ReadFile(path)));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
}

std::string KgToText(const KnowledgeGraph& kg) {
  return KgToJson(kg).dump(2, ' ', false, Json::error_handler_t::replace) +
         "\n";
}

Json TripleRecordToJson(const TripleRecord& record) {
  Json j;
  j["doc_id"] = record.doc_id ? Json(*record.doc_id) : Json(nullptr);
  j["subject"] = record.triple.subject();
  j["predicate"] = record.triple.predicate();
  j["objects"] = record.triple.objects();
  return j;
}

TripleRecord TripleRecordFromJson(const Json& j, const Schema& schema) {
  std::optional<std::string> doc_id;
  if (auto it = j.find("doc_id"); it != j.end() && it->is_string()) {
    doc_id = it->get<std::string>();
  }
  Triple t(RequireString(j, "subject"), RequireString(j, "predicate"),
           RequireStringArray(j, "objects"));
  if (!schema.Contains(t.predicate())) {
    throw Error(ErrorCode::kUnknownRelation, t.predicate());
  }
  return TripleRecord{std::move(doc_id), std::move(t)};
}

Document DocumentFromJson(const Json& j) {
  Document d{RequireString(j, "id"), RequireString(j, "text")};
  if (d.text.empty()) {
    throw Error(ErrorCode::kEmptyField, "document " + d.id + " has no text");
  }
  return d;
}

std::vector<Document> LoadDocuments(const fs::path& path) {
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  for (const auto& j : ReadJsonl(path)) {
    Document d = DocumentFromJson(j);
    if (!seen.insert(d.id).second) {
      throw Error(ErrorCode::kFormat, "duplicate document id " + d.id);
    }
    docs.push_back(std::move(d));
  }
  return docs;
}

}  // namespace kgalign::io
