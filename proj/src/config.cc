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
#include "kgalign/config.h"

#include <charconv>
#include <cstdlib>
#include <functional>

#include "kgalign/error.h"
#include "kgalign/http_clients.h"
#include "kgalign/kg_io.h"
#include "kgalign/mock_clients.h"
#include "kgalign/text.h"

extern char** environ;

namespace kgalign {

namespace {

std::string LineError(size_t lineno, const std::string& what) {
  return "config line " + std::to_string(lineno) + ": " + what;
}

// Strips a trailing `#` comment that is not inside a quoted string.
std::string_view StripComment(std::string_view line) {
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted && c == '\\') {
      ++i;
    } else if (c == '"') {
      quoted = !quoted;
    } else if (c == '#' && !quoted) {
      return line.substr(0, i);
    }
  }
  return line;
}

std::string ParseValue(std::string_view raw, size_t lineno) {
  if (raw.empty()) throw Error(ErrorCode::kFormat, LineError(lineno, "missing value"));
  if (raw.front() != '"') {
    for (char c : raw) {
      if (text::IsSpace(c) || c == '"' || c == '=') {
        throw Error(ErrorCode::kFormat, LineError(lineno, "bad bare value"));
      }
    }
    return std::string(raw);
  }
  std::string out;
  for (size_t i = 1; i < raw.size(); ++i) {
    char c = raw[i];
    if (c == '"') {
      if (i + 1 != raw.size()) {
        throw Error(ErrorCode::kFormat, LineError(lineno, "text after string"));
      }
      return out;
    }
    if (c == '\\' && i + 1 < raw.size()) {
      char e = raw[++i];
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        default:
          throw Error(ErrorCode::kFormat, LineError(lineno, "unknown escape"));
      }
      continue;
    }
    out.push_back(c);
  }
  throw Error(ErrorCode::kFormat, LineError(lineno, "unterminated string"));
}

double ToDouble(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kFormat, key + ": expected a number, got \"" + v + "\"");
}

template <typename Int>
Int ToInt(const std::string& key, const std::string& v) {
  Int out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::kFormat, key + ": expected an integer, got \"" + v + "\"");
  }
  return out;
}

void RequireRange(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

}  // namespace

std::map<std::string, std::string> ParseConfigText(std::string_view contents) {
  std::map<std::string, std::string> out;
  std::string section;
  size_t lineno = 0;
  size_t pos = 0;
  while (pos <= contents.size()) {
    size_t nl = contents.find('\n', pos);
    std::string_view line = contents.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? contents.size() + 1 : nl + 1;
    ++lineno;
    line = text::Trim(StripComment(line));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(ErrorCode::kFormat, LineError(lineno, "unterminated section"));
      }
      section = text::NormalizeWhitespace(line.substr(1, line.size() - 2));
      if (section.empty()) throw Error(ErrorCode::kFormat, LineError(lineno, "empty section"));
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kFormat, LineError(lineno, "expected key = value"));
    }
    std::string key(text::Trim(line.substr(0, eq)));
    if (key.empty()) throw Error(ErrorCode::kFormat, LineError(lineno, "empty key"));
    std::string full = section.empty() ? key : section + "." + key;
    if (out.contains(full)) {
      throw Error(ErrorCode::kFormat, LineError(lineno, "duplicate key " + full));
    }
    out[full] = ParseValue(text::Trim(line.substr(eq + 1)), lineno);
  }
  return out;
}

void Config::Validate() const {
  const auto& t = thresholds;
  RequireRange(t.resolution > 0.0 && t.resolution <= 1.0,
               "kg_construct.resolution_threshold must be in (0, 1]");
  RequireRange(t.retrieval >= -1.0 && t.retrieval <= 1.0,
               "retrieval.threshold must be in [-1, 1]");
  RequireRange(t.top_k >= 1, "retrieval.top_k must be >= 1");
  RequireRange(t.alpha >= 0.0, "akgf.alpha must be >= 0");
  RequireRange(t.thresh_sim > 0.0 && t.thresh_sim <= 1.0,
               "akgf.thresh_sim must be in (0, 1]");
  RequireRange(t.pair_thresh > 0.0, "akgf.pair_thresh must be > 0");
  RequireRange(t.rep_thresh >= 0.0 && t.rep_thresh <= 1.0,
               "akgf.rep_thresh must be in [0, 1]");
  RequireRange(t.beta > 0.0, "akgf.beta must be > 0");
  RequireRange(t.n_samples >= 2, "akgf.n_samples must be >= 2");
  RequireRange(t.max_in_flight >= 1, "max_in_flight must be >= 1");
  RequireRange(clients.mode == "mock" || clients.mode == "http",
               "clients.mode must be \"mock\" or \"http\"");
  RequireRange(clients.timeout_ms > 0, "clients.timeout_ms must be > 0");
  RequireRange(clients.max_attempts >= 1, "clients.max_attempts must be >= 1");
  RequireRange(clients.backoff_ms >= 0, "clients.backoff_ms must be >= 0");
  RequireRange(clients.mock_dimension >= 1, "clients.mock_dimension must be >= 1");
}

Config LoadConfig(const std::optional<std::filesystem::path>& file,
                  const std::map<std::string, std::string>& env) {
  Config c;
  auto from_env = [&](const char* name, std::string& dst) {
    if (auto it = env.find(name); it != env.end() && !it->second.empty()) {
      dst = it->second;
    }
  };
  from_env("ELPF_EMBED_URL", c.clients.embed_url);
  from_env("ELPF_EXTRACT_URL", c.clients.extract_url);
  from_env("ELPF_GEN_URL", c.clients.generate_url);
  from_env("ELPF_API_TOKEN", c.clients.token);

  if (file) {
    auto kv = ParseConfigText(io::ReadFile(*file));
    const auto base = file->parent_path();
    auto resolve = [&](const std::string& p) {
      std::filesystem::path path(p);
      return (path.is_relative() ? base / path : path).lexically_normal().string();
    };

    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto str = [](std::string& dst) -> Setter {
      return [&dst](const std::string&, const std::string& v) { dst = v; };
    };
    auto path = [&](std::string& dst) -> Setter {
      return [&dst, resolve](const std::string&, const std::string& v) { dst = resolve(v); };
    };
    auto num = [](double& dst) -> Setter {
      return [&dst](const std::string& k, const std::string& v) { dst = ToDouble(k, v); };
    };
    auto i64 = [](int64_t& dst) -> Setter {
      return [&dst](const std::string& k, const std::string& v) { dst = ToInt<int64_t>(k, v); };
    };
    auto u64 = [](uint64_t& dst) -> Setter {
      return [&dst](const std::string& k, const std::string& v) { dst = ToInt<uint64_t>(k, v); };
    };
    auto& cl = c.clients;
    auto& th = c.thresholds;
    const std::map<std::string, Setter> setters = {
        {"schema.path", path(c.schema_path)},
        {"clients.mode", str(cl.mode)},
        {"clients.embed_url", str(cl.embed_url)},
        {"clients.extract_url", str(cl.extract_url)},
        {"clients.generate_url", str(cl.generate_url)},
        {"clients.token", str(cl.token)},
        {"clients.timeout_ms", i64(cl.timeout_ms)},
        {"clients.max_attempts", i64(cl.max_attempts)},
        {"clients.backoff_ms", i64(cl.backoff_ms)},
        {"clients.mock_seed", u64(cl.mock_seed)},
        {"clients.mock_dimension", i64(cl.mock_dimension)},
        {"clients.mock_extractions", path(cl.mock_extractions)},
        {"clients.mock_generations", path(cl.mock_generations)},
        {"kg_construct.resolution_threshold", num(th.resolution)},
        {"kg_construct.max_in_flight", i64(th.max_in_flight)},
        {"retrieval.threshold", num(th.retrieval)},
        {"retrieval.top_k", i64(th.top_k)},
        {"akgf.alpha", num(th.alpha)},
        {"akgf.thresh_sim", num(th.thresh_sim)},
        {"akgf.pair_thresh", num(th.pair_thresh)},
        {"akgf.rep_thresh", num(th.rep_thresh)},
        {"akgf.beta", num(th.beta)},
        {"akgf.n_samples", i64(th.n_samples)},
        {"akgf.seed", u64(th.seed)},
    };
    for (const auto& [key, value] : kv) {
      if (key.starts_with("paths.")) {
        c.paths[key.substr(6)] = resolve(value);
        continue;
      }
      auto it = setters.find(key);
      if (it == setters.end()) throw Error(ErrorCode::kFormat, "unknown config key " + key);
      it->second(key, value);
    }
  }
  return c;
}

std::map<std::string, std::string> ProcessEnvironment() {
  std::map<std::string, std::string> env;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    std::string_view entry(*e);
    if (!entry.starts_with("ELPF_")) continue;
    auto eq = entry.find('=');
    if (eq == std::string_view::npos) continue;
    env.emplace(entry.substr(0, eq), entry.substr(eq + 1));
  }
  return env;
}

Clients MakeClients(const ClientSettings& s) {
  Clients clients;
  if (s.mode == "mock") {
    clients.embed =
        std::make_shared<MockEmbedder>(static_cast<size_t>(s.mock_dimension), s.mock_seed);
    auto pattern = std::make_shared<PatternExtractor>();
    if (s.mock_extractions.empty()) {
      clients.extract = pattern;
    } else {
      clients.extract = ScriptedExtractor::FromJsonl(s.mock_extractions, pattern);
    }
    if (s.mock_generations.empty()) {
      clients.generate = std::make_shared<ScriptedGenerator>();
    } else {
      clients.generate = ScriptedGenerator::FromJsonl(s.mock_generations);
    }
    return clients;
  }
  auto http = [&](const std::string& url) {
    HttpConfig h;
    h.url = url;
    h.token = s.token;
    h.timeout = std::chrono::milliseconds(s.timeout_ms);
    h.max_attempts = static_cast<int>(s.max_attempts);
    h.backoff_base = std::chrono::milliseconds(s.backoff_ms);
    return h;
  };
  if (!s.embed_url.empty()) {
    clients.embed = std::make_shared<HttpEmbeddingClient>(http(s.embed_url));
  }
  if (!s.extract_url.empty()) {
    clients.extract = std::make_shared<HttpExtractionClient>(http(s.extract_url));
  }
  if (!s.generate_url.empty()) {
    clients.generate = std::make_shared<HttpGenerationClient>(http(s.generate_url));
  }
  return clients;
}

}  // namespace kgalign
