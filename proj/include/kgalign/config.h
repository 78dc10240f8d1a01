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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "kgalign/clients.h"

namespace kgalign {

// Flat view of a TOML-style file: "[section]" headers, `key = value` lines,
// `#` comments, double-quoted strings, bare numbers and booleans. Keys are
// returned as "section.key" with string quotes removed. Throws kFormat with
// the line number on anything else.
std::map<std::string, std::string> ParseConfigText(std::string_view text);

struct ClientSettings {
  // "mock" or "http".
  std::string mode = "mock";
  std::string embed_url;
  std::string extract_url;
  std::string generate_url;
  std::string token;
  int64_t timeout_ms = 30000;
  int64_t max_attempts = 3;
  int64_t backoff_ms = 500;
  // Mock mode.
  uint64_t mock_seed = 0;
  int64_t mock_dimension = 64;
  std::string mock_extractions;
  std::string mock_generations;
};

struct Thresholds {
  double resolution = 0.9;
  double retrieval = 0.9;
  int64_t top_k = 5;
  double alpha = 0.5;
  double thresh_sim = 0.5;
  double pair_thresh = 0.693;
  double rep_thresh = 0.8;
  double beta = 0.4;
  int64_t n_samples = 4;
  uint64_t seed = 0;
  int64_t max_in_flight = 4;
};

struct Config {
  std::string schema_path;
  ClientSettings clients;
  Thresholds thresholds;
  // [paths] section: default artifact locations keyed by name
  // (documents, kg, triples, index, ...).
  std::map<std::string, std::string> paths;

  // Throws kInvalidArgument when a threshold leaves its documented range.
  void Validate() const;
};

// Defaults, then ELPF_EMBED_URL / ELPF_EXTRACT_URL / ELPF_GEN_URL /
// ELPF_API_TOKEN from `env`, then the file. Relative paths in the file are
// resolved against the file's directory.
Config LoadConfig(const std::optional<std::filesystem::path>& file,
                  const std::map<std::string, std::string>& env);
std::map<std::string, std::string> ProcessEnvironment();

struct Clients {
  std::shared_ptr<const EmbeddingClient> embed;
  std::shared_ptr<const ExtractionClient> extract;
  std::shared_ptr<const GenerationClient> generate;
};

// In http mode a client whose URL is unset is left null; commands that need
// it fail with kInvalidArgument.
Clients MakeClients(const ClientSettings& settings);

}  // namespace kgalign
