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

#include <atomic>
#include <chrono>
#include <functional>
#include <string>
#include <string_view>

#include "kgalign/clients.h"

namespace kgalign {

struct HttpConfig {
  // Base URL such as "http://127.0.0.1:8080" or "https://host/prefix".
  std::string url;
  std::string token;
  std::chrono::milliseconds timeout{30000};
  int max_attempts = 3;
  std::chrono::milliseconds backoff_base{500};
  double backoff_factor = 2.0;
};

// Delay before retry number `retry` (1-based): base * factor^(retry-1).
std::chrono::milliseconds BackoffDelay(const HttpConfig& config, int retry);

// JSON-over-HTTP POST with retries on transport errors, timeouts and 5xx.
// 4xx fails immediately with kRemote; an unparseable 2xx body is kProtocol.
class HttpTransport {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit HttpTransport(HttpConfig config);
  // Tests swap the sleeper to observe the backoff schedule.
  void set_sleeper(Sleeper sleeper) { sleeper_ = std::move(sleeper); }

  wire::Json PostJson(std::string_view path, const wire::Json& body) const;

  const HttpConfig& config() const { return config_; }

 private:
  HttpConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  Sleeper sleeper_;
};

// Sends texts in batches of kBatchSize. The dimension of the first response
// is pinned; a later mismatch is kProtocol.
class HttpEmbeddingClient : public EmbeddingClient {
 public:
  static constexpr size_t kBatchSize = 64;

  explicit HttpEmbeddingClient(HttpConfig config) : transport_(std::move(config)) {}
  std::vector<Vector> Embed(std::span<const std::string> texts) const override;

  HttpTransport& transport() { return transport_; }
  size_t pinned_dimension() const { return dimension_.load(); }

 private:
  HttpTransport transport_;
  mutable std::atomic<size_t> dimension_{0};
};

class HttpExtractionClient : public ExtractionClient {
 public:
  explicit HttpExtractionClient(HttpConfig config) : transport_(std::move(config)) {}
  RawExtraction Extract(std::string_view text, const Schema& schema) const override;

  HttpTransport& transport() { return transport_; }

 private:
  HttpTransport transport_;
};

class HttpGenerationClient : public GenerationClient {
 public:
  explicit HttpGenerationClient(HttpConfig config) : transport_(std::move(config)) {}
  std::vector<std::string> Generate(std::string_view prompt, int n,
                                    uint64_t seed) const override;

  HttpTransport& transport() { return transport_; }

 private:
  HttpTransport transport_;
};

}  // namespace kgalign
