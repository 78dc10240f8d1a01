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

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace kgalign {

inline double Dot(std::span<const float> a, std::span<const float> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    s += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return s;
}

// Cosine similarity clamped to [-1, 1]. Bitwise-identical vectors score
// exactly 1 so self-similarity clears any threshold. Zero vectors score 0.
inline double Cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) return 0.0;
  if (std::equal(a.begin(), a.end(), b.begin(), b.end())) {
    return Dot(a, a) > 0.0 ? 1.0 : 0.0;
  }
  double na = Dot(a, a);
  double nb = Dot(b, b);
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return std::clamp(Dot(a, b) / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

inline std::vector<float> Normalized(std::span<const float> v) {
  double n = std::sqrt(Dot(v, v));
  std::vector<float> out(v.begin(), v.end());
  if (n > 0.0) {
    for (auto& x : out) x = static_cast<float>(x / n);
  }
  return out;
}

}  // namespace kgalign
