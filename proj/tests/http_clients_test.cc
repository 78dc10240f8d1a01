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
#include <atomic>
#include <chrono>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "generators.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "kgalign/error.h"
#include "kgalign/http_clients.h"

namespace kgalign {
namespace {

using std::chrono::milliseconds;

// In-process server on an ephemeral port. Handlers run on the server's
// worker threads.
class FakeServer {
 public:
  FakeServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeServer() {
    server_.stop();
    thread_.join();
  }

  httplib::Server& server() { return server_; }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

HttpConfig FastConfig(const std::string& url) {
  HttpConfig c;
  c.url = url;
  c.timeout = milliseconds(2000);
  return c;
}

TEST(BackoffTest, Doubles) {
  HttpConfig c;
  EXPECT_EQ(BackoffDelay(c, 1), milliseconds(500));
  EXPECT_EQ(BackoffDelay(c, 2), milliseconds(1000));
  EXPECT_EQ(BackoffDelay(c, 3), milliseconds(2000));
}

TEST(HttpEmbeddingTest, ReturnsServerVectors) {
  FakeServer fake;
  std::string body;
  fake.server().Post("/v1/embed", [&](const httplib::Request& req, httplib::Response& res) {
    body = req.body;
    res.set_content(R"({"vectors":[[0.6,0.8]]})", "application/json");
  });
  HttpEmbeddingClient client(FastConfig(fake.url()));
  std::vector<std::string> texts = {"Aspirin"};
  auto v = client.Embed(texts);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], (Vector{0.6f, 0.8f}));
  EXPECT_EQ(body, R"({"texts":["Aspirin"]})");
  EXPECT_EQ(client.pinned_dimension(), 2u);
}

TEST(HttpEmbeddingTest, RetriesServerErrorsWithBackoff) {
  FakeServer fake;
  std::atomic<int> calls{0};
  fake.server().Post("/v1/embed", [&](const httplib::Request&, httplib::Response& res) {
    if (++calls <= 2) {
      res.status = 500;
      return;
    }
    res.set_content(R"({"vectors":[[1.0]]})", "application/json");
  });
  HttpEmbeddingClient client(FastConfig(fake.url()));
  std::vector<milliseconds> slept;
  client.transport().set_sleeper([&](milliseconds d) { slept.push_back(d); });
  std::vector<std::string> texts = {"x"};
  EXPECT_EQ(client.Embed(texts)[0], Vector{1.0f});
  EXPECT_EQ(calls.load(), 3);
  EXPECT_EQ(slept, (std::vector<milliseconds>{milliseconds(500), milliseconds(1000)}));
}

TEST(HttpEmbeddingTest, GivesUpAfterMaxAttempts) {
  FakeServer fake;
  std::atomic<int> calls{0};
  fake.server().Post("/v1/embed", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 503;
  });
  HttpEmbeddingClient client(FastConfig(fake.url()));
  client.transport().set_sleeper([](milliseconds) {});
  std::vector<std::string> texts = {"x"};
  try {
    client.Embed(texts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRemote);
  }
  EXPECT_EQ(calls.load(), 3);
}

TEST(HttpEmbeddingTest, ClientErrorsFailFast) {
  FakeServer fake;
  std::atomic<int> calls{0};
  fake.server().Post("/v1/embed", [&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 400;
    res.set_content("bad request", "text/plain");
  });
  HttpEmbeddingClient client(FastConfig(fake.url()));
  client.transport().set_sleeper([](milliseconds) { FAIL() << "no retry expected"; });
  std::vector<std::string> texts = {"x"};
  try {
    client.Embed(texts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRemote);
  }
  EXPECT_EQ(calls.load(), 1);
}

TEST(HttpEmbeddingTest, NonJsonBodyIsProtocolError) {
  FakeServer fake;
  fake.server().Post("/v1/embed", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("<html>", "text/html");
  });
  HttpEmbeddingClient client(FastConfig(fake.url()));
  std::vector<std::string> texts = {"x"};
  try {
    client.Embed(texts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProtocol);
  }
}

TEST(HttpEmbeddingTest, ConnectionRefusedIsTransportError) {
  int port;
  {
    FakeServer fake;
    port = std::stoi(fake.url().substr(fake.url().rfind(':') + 1));
  }
  HttpConfig c = FastConfig("http://127.0.0.1:" + std::to_string(port));
  c.max_attempts = 2;
  HttpEmbeddingClient client(c);
  int sleeps = 0;
  client.transport().set_sleeper([&](milliseconds) { ++sleeps; });
  std::vector<std::string> texts = {"x"};
  try {
    client.Embed(texts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTransport);
  }
  EXPECT_EQ(sleeps, 1);
}

TEST(HttpEmbeddingTest, SendsBearerTokenAndPathPrefix) {
  FakeServer fake;
  std::string auth;
  fake.server().Post("/api/v1/embed", [&](const httplib::Request& req, httplib::Response& res) {
    auth = req.get_header_value("Authorization");
    res.set_content(R"({"vectors":[[1.0]]})", "application/json");
  });
  HttpConfig c = FastConfig(fake.url() + "/api/");
  c.token = "s3cret";
  HttpEmbeddingClient client(c);
  std::vector<std::string> texts = {"x"};
  client.Embed(texts);
  EXPECT_EQ(auth, "Bearer s3cret");
}

TEST(HttpEmbeddingTest, BatchesAndPinsDimension) {
  FakeServer fake;
  std::mutex mu;
  std::vector<size_t> batch_sizes;
  std::atomic<int> calls{0};
  fake.server().Post("/v1/embed", [&](const httplib::Request& req, httplib::Response& res) {
    auto texts = nlohmann::json::parse(req.body)["texts"];
    {
      std::lock_guard lock(mu);
      batch_sizes.push_back(texts.size());
    }
    size_t dim = ++calls == 3 ? 3 : 2;
    nlohmann::json vectors = nlohmann::json::array();
    for (size_t i = 0; i < texts.size(); ++i) vectors.push_back(std::vector<double>(dim, 0.5));
    res.set_content(nlohmann::json{{"vectors", vectors}}.dump(), "application/json");
  });
  HttpEmbeddingClient client(FastConfig(fake.url()));
  std::vector<std::string> texts(130, "t");
  auto first = std::vector<std::string>(texts.begin(), texts.begin() + 100);
  EXPECT_EQ(client.Embed(first).size(), 100u);
  EXPECT_EQ(batch_sizes, (std::vector<size_t>{64, 36}));
  std::vector<std::string> one = {"u"};
  try {
    client.Embed(one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kProtocol);
  }
}

TEST(HttpExtractionTest, PostsRelationsAndParsesTriples) {
  FakeServer fake;
  std::string body;
  fake.server().Post("/v1/extract", [&](const httplib::Request& req, httplib::Response& res) {
    body = req.body;
    res.set_content(
        R"({"triples":[{"subject":"Aspirin","predicate":"treats","objects":["fever"]},)"
        R"({"subject":null,"predicate":"causes"}]})",
        "application/json");
  });
  HttpExtractionClient client(FastConfig(fake.url()));
  auto out = client.Extract("Aspirin treats fever.", Schema({"treats", "causes"}));
  EXPECT_EQ(body, R"({"text":"Aspirin treats fever.","relations":["treats","causes"]})");
  ASSERT_EQ(out.raw_triples.size(), 2u);
  EXPECT_EQ(out.raw_triples[0], (RawTriple{"Aspirin", "treats", {"fever"}}));
  EXPECT_EQ(out.raw_triples[1], (RawTriple{"", "causes", {}}));
}

TEST(HttpGenerationTest, PostsPromptAndChecksCount) {
  FakeServer fake;
  std::string body;
  fake.server().Post("/v1/generate", [&](const httplib::Request& req, httplib::Response& res) {
    body = req.body;
    res.set_content(R"({"outputs":["a","b"]})", "application/json");
  });
  HttpGenerationClient client(FastConfig(fake.url()));
  EXPECT_EQ(client.Generate("p", 2, 9), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(body, R"({"prompt":"p","n":2,"seed":9})");
  EXPECT_THROW(client.Generate("p", 3, 9), Error);
}

TEST(HttpTransportTest, RejectsBadConfig) {
  EXPECT_THROW(HttpTransport(HttpConfig{}), Error);
  HttpConfig c;
  c.url = "http://x";
  c.max_attempts = 0;
  EXPECT_THROW(HttpTransport{c}, Error);
}

}  // namespace
}  // namespace kgalign
