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
#include "kgalign/akgf.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include <spdlog/spdlog.h>

#include "kgalign/construct.h"
#include "kgalign/error.h"
#include "kgalign/parallel.h"
#include "kgalign/text.h"

namespace kgalign {

namespace {

std::vector<std::string> Elements(const Triple& t) {
  std::vector<std::string> out;
  out.reserve(t.objects().size() + 2);
  out.push_back(t.subject());
  out.push_back(t.predicate());
  out.insert(out.end(), t.objects().begin(), t.objects().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool IsClauseBreak(char32_t cp) {
  switch (cp) {
    case U'.': case U'!': case U'?': case U';':
    case U'。': case U'！': case U'？': case U'；':
      return true;
    default:
      return false;
  }
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double Softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double Margin(const DpoLossInput& in) {
  if (!(in.beta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "beta must be positive");
  return in.beta * ((in.logp_policy_chosen - in.logp_ref_chosen) -
                    (in.logp_policy_rejected - in.logp_ref_rejected));
}

}  // namespace

double TripleJaccard(const Triple& a, const Triple& b) {
  auto ea = Elements(a);
  auto eb = Elements(b);
  std::vector<std::string> common;
  std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(),
                        std::back_inserter(common));
  size_t uni = ea.size() + eb.size() - common.size();
  return uni == 0 ? 0.0 : static_cast<double>(common.size()) / static_cast<double>(uni);
}

double Reward(size_t r_spo, size_t r_e, double alpha) {
  double arg = static_cast<double>(r_spo) + alpha * static_cast<double>(r_e);
  return arg > 0.0 ? std::log(arg) : kMinusInfinityReward;
}

AnswerScorer::AnswerScorer(const KnowledgeGraph& kg, double alpha, double thresh_sim)
    : kg_(kg), alpha_(alpha), thresh_sim_(thresh_sim), kg_triples_(kg.Triples()) {
  if (!(alpha >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be >= 0");
  if (!(thresh_sim > 0.0 && thresh_sim <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "thresh_sim must be in (0, 1]");
  }
  for (size_t i = 0; i < kg_triples_.size(); ++i) {
    for (const auto& e : Elements(kg_triples_[i])) by_element_[e].push_back(i);
  }
}

ScoredAnswer AnswerScorer::Score(std::string answer, const RawExtraction& raw) const {
  ScoredAnswer out;
  out.answer = std::move(answer);
  out.extracted = PostprocessWithoutSource(raw, kg_.schema()).triples;

  for (const auto& t : out.extracted) {
    // thresh_sim > 0, so a match must share at least one element.
    std::set<size_t> candidates;
    for (const auto& e : Elements(t)) {
      if (auto it = by_element_.find(e); it != by_element_.end()) {
        candidates.insert(it->second.begin(), it->second.end());
      }
    }
    bool matched = std::any_of(candidates.begin(), candidates.end(), [&](size_t i) {
      return TripleJaccard(t, kg_triples_[i]) >= thresh_sim_;
    });
    if (matched) ++out.r_spo;
  }

  std::set<std::string> entities;
  for (const auto& t : out.extracted) {
    entities.insert(t.subject());
    entities.insert(t.objects().begin(), t.objects().end());
  }
  for (const auto& e : entities) {
    if (kg_.entities().contains(e)) ++out.r_e;
  }
  out.reward = Reward(out.r_spo, out.r_e, alpha_);
  return out;
}

ScoredAnswer ScoreAnswer(const std::string& answer, const KnowledgeGraph& kg,
                         const ExtractionClient& extractor, double alpha,
                         double thresh_sim) {
  AnswerScorer scorer(kg, alpha, thresh_sim);
  return scorer.Score(answer, ExtractChecked(extractor, answer, kg.schema()));
}

double RepetitionRatio(std::string_view answer) {
  std::vector<std::string> clauses;
  std::string current;
  auto flush = [&] {
    std::string c = text::AsciiLower(text::NormalizeWhitespace(current));
    if (!c.empty()) clauses.push_back(std::move(c));
    current.clear();
  };
  for (char32_t cp : text::DecodeUtf8(answer)) {
    if (IsClauseBreak(cp)) {
      flush();
    } else {
      text::AppendUtf8(cp, current);
    }
  }
  flush();
  if (clauses.empty()) return 1.0;
  std::set<std::string> unique(clauses.begin(), clauses.end());
  return static_cast<double>(unique.size()) / static_cast<double>(clauses.size());
}

std::vector<PreferencePair> PairScoredAnswers(const std::string& prompt,
                                              std::span<const ScoredAnswer> scored,
                                              double pair_thresh, double rep_thresh) {
  if (!(pair_thresh > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "pair threshold must be positive");
  }
  std::vector<PreferencePair> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (size_t i = 0; i < scored.size(); ++i) {
    const auto& pos = scored[i];
    if (IsZeroEvidence(pos.reward) || RepetitionRatio(pos.answer) < rep_thresh) continue;
    for (size_t j = 0; j < scored.size(); ++j) {
      if (i == j) continue;
      const auto& neg = scored[j];
      bool wide_enough =
          IsZeroEvidence(neg.reward) || pos.reward - neg.reward >= pair_thresh;
      if (!wide_enough) continue;
      if (!seen.emplace(pos.answer, neg.answer).second) continue;
      out.push_back(PreferencePair{prompt, pos.answer, neg.answer, pos.reward, neg.reward});
    }
  }
  return out;
}

std::vector<PreferencePair> MakePairs(const std::string& prompt,
                                      std::span<const std::string> answers,
                                      const KnowledgeGraph& kg,
                                      const ExtractionClient& extractor,
                                      const AkgfParams& params) {
  if (answers.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "pairing needs at least two answers");
  }
  AnswerScorer scorer(kg, params.alpha, params.thresh_sim);
  std::vector<std::optional<ScoredAnswer>> slots(answers.size());
  std::vector<std::string> errors(answers.size());
  ParallelFor(answers.size(), params.max_in_flight, [&](size_t i) {
    try {
      slots[i] = scorer.Score(answers[i],
                              ExtractChecked(extractor, answers[i], kg.schema()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kExtractionFailure) throw;
      errors[i] = e.what();
    }
  });
  std::vector<ScoredAnswer> scored;
  for (size_t i = 0; i < slots.size(); ++i) {
    if (slots[i]) {
      scored.push_back(std::move(*slots[i]));
    } else {
      spdlog::warn("event=answer_dropped answer_index={} error=\"{}\"", i, errors[i]);
    }
  }
  return PairScoredAnswers(prompt, scored, params.pair_thresh, params.rep_thresh);
}

double DpoPairwiseLoss(const DpoLossInput& in) { return Softplus(-Margin(in)); }

DpoLossGradient DpoPairwiseLossGradient(const DpoLossInput& in) {
  // dL/dz = -sigmoid(-z); z is linear in the four log-probs with slope ±beta.
  double g = -Sigmoid(-Margin(in)) * in.beta;
  return DpoLossGradient{g, -g, -g, g};
}

io::Json RewardToJson(double reward) {
  return IsZeroEvidence(reward) ? io::Json("-inf") : io::Json(reward);
}

double RewardFromJson(const io::Json& j) {
  if (j.is_string() && j.get<std::string>() == "-inf") return kMinusInfinityReward;
  if (j.is_number()) return j.get<double>();
  throw Error(ErrorCode::kFormat, "reward must be a number or \"-inf\"");
}

io::Json ScoredAnswerToJson(const ScoredAnswer& scored) {
  io::Json extracted = io::Json::array();
  for (const auto& t : scored.extracted) extracted.push_back(SerializeTriple(t));
  return io::Json{{"answer", scored.answer},
                  {"extracted", extracted},
                  {"r_spo", scored.r_spo},
                  {"r_e", scored.r_e},
                  {"reward", RewardToJson(scored.reward)}};
}

io::Json PreferencePairToJson(const PreferencePair& pair) {
  return io::Json{{"prompt", pair.prompt},
                  {"chosen", pair.chosen},
                  {"rejected", pair.rejected},
                  {"reward_chosen", RewardToJson(pair.reward_chosen)},
                  {"reward_rejected", RewardToJson(pair.reward_rejected)}};
}

PreferencePair PreferencePairFromJson(const io::Json& j) {
  if (!j.contains("reward_chosen") || !j.contains("reward_rejected")) {
    throw Error(ErrorCode::kFormat, "pair record without rewards");
  }
  return PreferencePair{io::RequireString(j, "prompt"), io::RequireString(j, "chosen"),
                        io::RequireString(j, "rejected"),
                        RewardFromJson(j.at("reward_chosen")),
                        RewardFromJson(j.at("reward_rejected"))};
}

size_t ExportDpoDataset(std::span<const PreferencePair> pairs,
                        const std::filesystem::path& path) {
  std::vector<io::Json> records;
  records.reserve(pairs.size());
  for (const auto& p : pairs) records.push_back(PreferencePairToJson(p));
  io::WriteFileAtomic(path, io::ToJsonl(records));
  return records.size();
}

std::vector<PreferencePair> ReadDpoDataset(const std::filesystem::path& path) {
  std::vector<PreferencePair> out;
  for (const auto& j : io::ReadJsonl(path)) out.push_back(PreferencePairFromJson(j));
  return out;
}

}  // namespace kgalign
