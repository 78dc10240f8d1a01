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
#include "kgalign/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "kgalign/error.h"
#include "kgalign/text.h"

namespace kgalign::metrics {

namespace {

using Tokens = std::vector<std::string>;
using NgramCounts = std::map<std::vector<std::string>, size_t>;

NgramCounts CountNgrams(const Tokens& tokens, size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Tokens(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                    tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

size_t ClippedOverlap(const NgramCounts& cand, const NgramCounts& ref) {
  size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    if (auto it = ref.find(gram); it != ref.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

double F1(size_t overlap, size_t cand_total, size_t ref_total) {
  if (overlap == 0 || cand_total == 0 || ref_total == 0) return 0.0;
  double p = static_cast<double>(overlap) / static_cast<double>(cand_total);
  double r = static_cast<double>(overlap) / static_cast<double>(ref_total);
  return 100.0 * 2.0 * p * r / (p + r);
}

std::pair<Tokens, Tokens> TokenizePair(std::string_view candidate,
                                       std::string_view reference) {
  bool chars = PrefersCharacterTokens(candidate, reference);
  return {Tokenize(candidate, chars), Tokenize(reference, chars)};
}

size_t LcsLength(const Tokens& a, const Tokens& b) {
  std::vector<size_t> prev(b.size() + 1, 0);
  std::vector<size_t> cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

bool PrefersCharacterTokens(std::string_view candidate, std::string_view reference) {
  size_t cjk = 0;
  size_t other = 0;
  for (std::string_view s : {candidate, reference}) {
    for (char32_t cp : text::DecodeUtf8(s)) {
      if (cp < 0x80 && text::IsSpace(static_cast<char>(cp))) continue;
      (text::IsCjk(cp) ? cjk : other)++;
    }
  }
  return cjk > other;
}

std::vector<std::string> Tokenize(std::string_view s, bool character_tokens) {
  Tokens tokens;
  if (character_tokens) {
    for (char32_t cp : text::DecodeUtf8(s)) {
      if (cp < 0x80 && text::IsSpace(static_cast<char>(cp))) continue;
      std::string t;
      text::AppendUtf8(cp, t);
      tokens.push_back(std::move(t));
    }
    return tokens;
  }
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && text::IsSpace(s[i])) ++i;
    size_t start = i;
    while (i < s.size() && !text::IsSpace(s[i])) ++i;
    if (i > start) tokens.emplace_back(s.substr(start, i - start));
  }
  return tokens;
}

double RougeN(std::string_view candidate, std::string_view reference, int n) {
  if (n != 1 && n != 2) throw Error(ErrorCode::kInvalidArgument, "ROUGE-N needs n in {1, 2}");
  auto [cand, ref] = TokenizePair(candidate, reference);
  auto un = static_cast<size_t>(n);
  auto cc = CountNgrams(cand, un);
  auto rc = CountNgrams(ref, un);
  size_t cand_total = cand.size() >= un ? cand.size() - un + 1 : 0;
  size_t ref_total = ref.size() >= un ? ref.size() - un + 1 : 0;
  return F1(ClippedOverlap(cc, rc), cand_total, ref_total);
}

double RougeL(std::string_view candidate, std::string_view reference) {
  auto [cand, ref] = TokenizePair(candidate, reference);
  return F1(LcsLength(cand, ref), cand.size(), ref.size());
}

double Bleu4(std::string_view candidate, std::string_view reference) {
  auto [cand, ref] = TokenizePair(candidate, reference);
  if (cand.empty() || ref.empty()) return 0.0;
  double log_sum = 0.0;
  for (size_t n = 1; n <= 4; ++n) {
    size_t matches = ClippedOverlap(CountNgrams(cand, n), CountNgrams(ref, n));
    size_t total = cand.size() >= n ? cand.size() - n + 1 : 0;
    if (n == 1) {
      if (matches == 0) return 0.0;
      log_sum += std::log(static_cast<double>(matches) / static_cast<double>(total));
    } else {
      log_sum += std::log(static_cast<double>(matches + 1) / static_cast<double>(total + 1));
    }
  }
  double c = static_cast<double>(cand.size());
  double r = static_cast<double>(ref.size());
  double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return 100.0 * bp * std::exp(log_sum / 4.0);
}

MetricReport Evaluate(std::string_view candidate, std::string_view reference) {
  return MetricReport{RougeN(candidate, reference, 1), RougeN(candidate, reference, 2),
                      RougeL(candidate, reference), Bleu4(candidate, reference)};
}

MetricReport Mean(std::span<const MetricReport> reports) {
  MetricReport m;
  if (reports.empty()) return m;
  for (const auto& r : reports) {
    m.rouge1 += r.rouge1;
    m.rouge2 += r.rouge2;
    m.rougeL += r.rougeL;
    m.bleu4 += r.bleu4;
  }
  auto n = static_cast<double>(reports.size());
  m.rouge1 /= n;
  m.rouge2 /= n;
  m.rougeL /= n;
  m.bleu4 /= n;
  return m;
}

}  // namespace kgalign::metrics
