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
#include <bit>
#include <cstring>

#include "kgalign/error.h"
#include "kgalign/kg_io.h"
#include "kgalign/retrieval.h"

namespace kgalign {

namespace {

constexpr char kMagic[4] = {'S', 'P', 'I', 'X'};

template <typename T>
void PutLe(std::string& out, T value) {
  for (size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
}

void PutString(std::string& out, const std::string& s) {
  if (s.size() > UINT32_MAX) throw Error(ErrorCode::kFormat, "string too long");
  PutLe<uint32_t>(out, static_cast<uint32_t>(s.size()));
  out += s;
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view Take(size_t n) {
    if (bytes_.size() - pos_ < n) {
      throw Error(ErrorCode::kFormat, "index truncated at byte " + std::to_string(pos_));
    }
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  template <typename T>
  T GetLe() {
    auto raw = Take(sizeof(T));
    T value = 0;
    for (size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<T>(static_cast<unsigned char>(raw[i])) << (8 * i);
    }
    return value;
  }

  std::string GetString() {
    auto len = GetLe<uint32_t>();
    return std::string(Take(len));
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  size_t pos_ = 0;
};

}  // namespace

std::string EncodeIndex(const SubgraphIndex& index) {
  std::string out(kMagic, sizeof(kMagic));
  PutLe<uint32_t>(out, kIndexVersion);
  PutLe<uint32_t>(out, static_cast<uint32_t>(index.dimension()));
  PutLe<uint64_t>(out, index.size());
  out.append(reinterpret_cast<const char*>(index.fingerprint().data()),
             index.fingerprint().size());
  for (const auto& e : index.entries()) {
    PutString(out, e.subject);
    PutString(out, e.predicate);
    for (float x : e.vector) PutLe<uint32_t>(out, std::bit_cast<uint32_t>(x));
  }
  return out;
}

SubgraphIndex DecodeIndex(std::string_view bytes) {
  Reader r(bytes);
  if (std::memcmp(r.Take(4).data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kFormat, "not an index file (bad magic)");
  }
  auto version = r.GetLe<uint32_t>();
  if (version != kIndexVersion) {
    throw Error(ErrorCode::kFormat, "unsupported index version " + std::to_string(version));
  }
  auto dim = r.GetLe<uint32_t>();
  auto count = r.GetLe<uint64_t>();
  Fingerprint fp{};
  auto fp_bytes = r.Take(fp.size());
  std::memcpy(fp.data(), fp_bytes.data(), fp.size());
  std::vector<IndexEntry> entries;
  for (uint64_t i = 0; i < count; ++i) {
    IndexEntry e;
    e.subject = r.GetString();
    e.predicate = r.GetString();
    e.vector.resize(dim);
    for (auto& x : e.vector) x = std::bit_cast<float>(r.GetLe<uint32_t>());
    entries.push_back(std::move(e));
  }
  if (!r.done()) throw Error(ErrorCode::kFormat, "trailing bytes after index entries");
  return SubgraphIndex(dim, fp, std::move(entries));
}

void WriteIndex(const std::filesystem::path& path, const SubgraphIndex& index) {
  io::WriteFileAtomic(path, EncodeIndex(index));
}

SubgraphIndex ReadIndex(const std::filesystem::path& path) {
  return DecodeIndex(io::ReadFile(path));
}

}  // namespace kgalign
