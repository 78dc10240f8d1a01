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
#include "kgalign/http_clients.h"

#include <cmath>
#include <thread>

#include <spdlog/spdlog.h>

#include "httplib.h"
#include "kgalign/error.h"

namespace kgalign {

namespace {

void SplitUrl(const std::string& url, std::string& scheme_host_port,
              std::string& prefix) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "URL without scheme: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    scheme_host_port = url;
    prefix.clear();
  } else {
    scheme_host_port = url.substr(0, path_start);
    prefix = url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  }
}

}  // namespace

std::chrono::milliseconds BackoffDelay(const HttpConfig& config, int retry) {
  double ms = static_cast<double>(config.backoff_base.count()) *
              std::pow(config.backoff_factor, retry - 1);
  return std::chrono::milliseconds(static_cast<int64_t>(std::llround(ms)));
}

HttpTransport::HttpTransport(HttpConfig config)
    : config_(std::move(config)),
      sleeper_([](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
  if (config_.max_attempts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_attempts must be >= 1");
  }
  SplitUrl(config_.url, scheme_host_port_, path_prefix_);
}

wire::Json HttpTransport::PostJson(std::string_view path,
                                   const wire::Json& body) const {
  const std::string full_path = path_prefix_ + std::string(path);
  const std::string payload = body.dump();
  ErrorCode last_code = ErrorCode::kTransport;
  std::string last_message;

  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1) sleeper_(BackoffDelay(config_, attempt - 1));

    // A client per attempt keeps concurrent callers independent.
    httplib::Client client(scheme_host_port_);
    auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
        config_.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    httplib::Headers headers;
    if (!config_.token.empty()) {
      headers.emplace("Authorization", "Bearer " + config_.token);
    }

    auto started = std::chrono::steady_clock::now();
    auto res = client.Post(full_path, headers, payload, "application/json");
    auto elapsed = std::chrono::steady_clock::now() - started;

    if (!res) {
      auto err = res.error();
      bool timed_out = err == httplib::Error::ConnectionTimeout ||
                       (err == httplib::Error::Read && elapsed >= config_.timeout);
      last_code = timed_out ? ErrorCode::kTimeout : ErrorCode::kTransport;
      last_message = full_path + ": " + httplib::to_string(err);
      spdlog::warn("event=http_retryable path={} attempt={} error=\"{}\"",
                   full_path, attempt, httplib::to_string(err));
      continue;
    }
    if (res->status >= 500) {
      last_code = ErrorCode::kRemote;
      last_message = full_path + ": HTTP " + std::to_string(res->status);
      spdlog::warn("event=http_retryable path={} attempt={} status={}",
                   full_path, attempt, res->status);
      continue;
    }
    if (res->status >= 400) {
      throw Error(ErrorCode::kRemote,
                  full_path + ": HTTP " + std::to_string(res->status) + " " +
                      res->body.substr(0, 200));
    }
    try {
      return wire::Json::parse(res->body);
    } catch (const wire::Json::parse_error& e) {
      throw Error(ErrorCode::kProtocol, full_path + ": " + e.what());
    }
  }
  throw Error(last_code, last_message + " after " +
                             std::to_string(config_.max_attempts) + " attempts");
}

std::vector<Vector> HttpEmbeddingClient::Embed(
    std::span<const std::string> texts) const {
  std::vector<Vector> out;
  out.reserve(texts.size());
  for (size_t start = 0; start < texts.size(); start += kBatchSize) {
    auto batch = texts.subspan(start, std::min(kBatchSize, texts.size() - start));
    wire::EmbedRequest req{{batch.begin(), batch.end()}};
    auto resp = wire::EmbedResponseFromJson(
        transport_.PostJson(wire::kEmbedPath, wire::ToJson(req)));
    if (resp.vectors.size() != batch.size()) {
      throw Error(ErrorCode::kProtocol,
                  "embed returned " + std::to_string(resp.vectors.size()) +
                      " vectors for " + std::to_string(batch.size()) + " texts");
    }
    for (const auto& v : resp.vectors) {
      size_t expected = 0;
      if (v.empty() ||
          (!dimension_.compare_exchange_strong(expected, v.size()) &&
           expected != v.size())) {
        throw Error(ErrorCode::kProtocol,
                    "embedding dimension " + std::to_string(v.size()) +
                        " does not match pinned " + std::to_string(dimension_.load()));
      }
      out.emplace_back(v.begin(), v.end());
    }
  }
  return out;
}

RawExtraction HttpExtractionClient::Extract(std::string_view text,
                                            const Schema& schema) const {
  wire::ExtractRequest req{std::string(text), schema.relations()};
  auto resp = wire::ExtractResponseFromJson(
      transport_.PostJson(wire::kExtractPath, wire::ToJson(req)));
  return RawExtraction{{}, std::move(resp.triples)};
}

std::vector<std::string> HttpGenerationClient::Generate(std::string_view prompt,
                                                        int n,
                                                        uint64_t seed) const {
  wire::GenerateRequest req{std::string(prompt), n, seed};
  auto resp = wire::GenerateResponseFromJson(
      transport_.PostJson(wire::kGeneratePath, wire::ToJson(req)));
  if (resp.outputs.size() != static_cast<size_t>(n)) {
    throw Error(ErrorCode::kProtocol,
                "generate returned " + std::to_string(resp.outputs.size()) +
                    " outputs, wanted " + std::to_string(n));
  }
  return resp.outputs;
}

}  // namespace kgalign
