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
#include <fstream>
#include <functional>
#include <map>
#include <string>

#include "gtest/gtest.h"
#include "kgalign/config.h"
#include "kgalign/error.h"
#include "test_support.h"

namespace kgalign {
namespace {

using testing::TempDir;

std::filesystem::path WriteConfig(const TempDir& dir, const std::string& text) {
  auto path = dir / "config.toml";
  std::ofstream(path) << text;
  return path;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kIo;
}

TEST(ConfigTextTest, ParsesSectionsAndValues) {
  auto kv = ParseConfigText(
      "# comment\n"
      "top = 1\n"
      "[retrieval]\n"
      "threshold = 0.8   # trailing\n"
      "name = \"a \\\"b\\\" # c\"\n"
      "flag = true\n");
  EXPECT_EQ(kv.at("top"), "1");
  EXPECT_EQ(kv.at("retrieval.threshold"), "0.8");
  EXPECT_EQ(kv.at("retrieval.name"), "a \"b\" # c");
  EXPECT_EQ(kv.at("retrieval.flag"), "true");
}

TEST(ConfigTextTest, RejectsMalformedLines) {
  for (const char* text : {"[open\n", "[]\n", "novalue\n", "k =\n", "k = \"unterminated\n",
                           "k = 1\nk = 2\n", "k = two words\n"}) {
    EXPECT_EQ(CodeOf([&] { ParseConfigText(text); }), ErrorCode::kFormat) << text;
  }
}

TEST(ConfigTest, DefaultsWithoutFile) {
  Config c = LoadConfig(std::nullopt, {});
  EXPECT_EQ(c.clients.mode, "mock");
  EXPECT_DOUBLE_EQ(c.thresholds.resolution, 0.9);
  EXPECT_DOUBLE_EQ(c.thresholds.retrieval, 0.9);
  EXPECT_EQ(c.thresholds.top_k, 5);
  EXPECT_DOUBLE_EQ(c.thresholds.alpha, 0.5);
  EXPECT_DOUBLE_EQ(c.thresholds.thresh_sim, 0.5);
  EXPECT_DOUBLE_EQ(c.thresholds.pair_thresh, 0.693);
  EXPECT_DOUBLE_EQ(c.thresholds.rep_thresh, 0.8);
  EXPECT_DOUBLE_EQ(c.thresholds.beta, 0.4);
  EXPECT_NO_THROW(c.Validate());
}

TEST(ConfigTest, FileOverridesEnvironment) {
  TempDir dir;
  std::map<std::string, std::string> env = {{"ELPF_EMBED_URL", "http://env-embed"},
                                            {"ELPF_GEN_URL", "http://env-gen"},
                                            {"ELPF_API_TOKEN", "tok"}};
  auto path = WriteConfig(dir,
                          "[clients]\n"
                          "mode = \"http\"\n"
                          "embed_url = \"http://file-embed\"\n"
                          "[akgf]\n"
                          "beta = 0.1\n");
  Config c = LoadConfig(path, env);
  EXPECT_EQ(c.clients.embed_url, "http://file-embed");
  EXPECT_EQ(c.clients.generate_url, "http://env-gen");
  EXPECT_EQ(c.clients.token, "tok");
  EXPECT_DOUBLE_EQ(c.thresholds.beta, 0.1);
  EXPECT_EQ(LoadConfig(std::nullopt, env).clients.embed_url, "http://env-embed");
}

TEST(ConfigTest, RelativePathsResolveAgainstFile) {
  TempDir dir;
  auto path = WriteConfig(dir,
                          "[schema]\npath = \"s/schema.json\"\n"
                          "[paths]\nkg = \"out/kg.json\"\nindex = \"/abs/index.bin\"\n");
  Config c = LoadConfig(path, {});
  EXPECT_EQ(c.schema_path, (dir.path() / "s/schema.json").string());
  EXPECT_EQ(c.paths.at("kg"), (dir.path() / "out/kg.json").string());
  EXPECT_EQ(c.paths.at("index"), "/abs/index.bin");
}

TEST(ConfigTest, UnknownKeysAndBadNumbersAreFormatErrors) {
  TempDir dir;
  auto unknown = WriteConfig(dir, "[retrieval]\ntopk = 3\n");
  EXPECT_EQ(CodeOf([&] { LoadConfig(unknown, {}); }), ErrorCode::kFormat);
  auto bad = WriteConfig(dir, "[retrieval]\ntop_k = 2.5\n");
  EXPECT_EQ(CodeOf([&] { LoadConfig(bad, {}); }), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([&] { LoadConfig(dir / "missing.toml", {}); }), ErrorCode::kIo);
}

TEST(ConfigTest, ValidateChecksRanges) {
  auto invalid = [](auto mutate) {
    Config c;
    mutate(c);
    return CodeOf([&] { c.Validate(); });
  };
  EXPECT_EQ(invalid([](Config& c) { c.thresholds.resolution = 1.5; }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(invalid([](Config& c) { c.thresholds.top_k = 0; }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(invalid([](Config& c) { c.thresholds.beta = 0; }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(invalid([](Config& c) { c.clients.mode = "grpc"; }), ErrorCode::kInvalidArgument);
}

TEST(ConfigTest, ClientsFollowMode) {
  Config c;
  auto mock = MakeClients(c.clients);
  EXPECT_NE(mock.embed, nullptr);
  EXPECT_NE(mock.extract, nullptr);
  EXPECT_NE(mock.generate, nullptr);
  c.clients.mode = "http";
  c.clients.embed_url = "http://127.0.0.1:1";
  auto http = MakeClients(c.clients);
  EXPECT_NE(http.embed, nullptr);
  EXPECT_EQ(http.extract, nullptr);
  EXPECT_EQ(http.generate, nullptr);
}

}  // namespace
}  // namespace kgalign
