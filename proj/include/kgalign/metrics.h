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

#include <span>
#include <string>
#include <string_view>
#include <vector>

// Text-generation metrics, all on a 0-100 scale.
//
// Tokenization: when CJK code points outnumber the other non-space code
// points of the candidate and reference together, every non-space code point
// is a token; otherwise tokens are whitespace-separated. Scores are only
// comparable with other scores produced by this module.
namespace kgalign::metrics {

struct MetricReport {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
  double bleu4 = 0.0;
};

bool PrefersCharacterTokens(std::string_view candidate, std::string_view reference);
std::vector<std::string> Tokenize(std::string_view text, bool character_tokens);

// F1 of clipped n-gram overlap. n must be 1 or 2.
double RougeN(std::string_view candidate, std::string_view reference, int n);
// F1 over the longest common token subsequence.
double RougeL(std::string_view candidate, std::string_view reference);
// Sentence BLEU: uniform weights over 1-4-grams, brevity penalty, add-one
// smoothing on the 2-4-gram precisions.
double Bleu4(std::string_view candidate, std::string_view reference);

MetricReport Evaluate(std::string_view candidate, std::string_view reference);
// Arithmetic mean per metric; zeros for an empty span.
MetricReport Mean(std::span<const MetricReport> reports);

}  // namespace kgalign::metrics
