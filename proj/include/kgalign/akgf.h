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

#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgalign/clients.h"
#include "kgalign/kg.h"
#include "kgalign/kg_io.h"

// Knowledge-graph feedback: score candidate answers against the graph, turn
// the scores into preference pairs, and evaluate the pairwise DPO loss.
namespace kgalign {

// Reward of an answer with no matched evidence. Orders below every finite
// reward; such an answer is never chosen.
inline constexpr double kMinusInfinityReward = -std::numeric_limits<double>::infinity();

inline bool IsZeroEvidence(double reward) { return reward == kMinusInfinityReward; }

inline constexpr double kDefaultAlpha = 0.5;
inline constexpr double kDefaultThreshSim = 0.5;
// Slightly under ln 2 so that an exact 2x evidence ratio survives rounding.
inline constexpr double kDefaultPairThresh = 0.693;
inline constexpr double kDefaultRepThresh = 0.8;
inline constexpr double kDefaultDpoBeta = 0.4;

struct AkgfParams {
  double alpha = kDefaultAlpha;
  double thresh_sim = kDefaultThreshSim;
  double pair_thresh = kDefaultPairThresh;
  double rep_thresh = kDefaultRepThresh;
  size_t max_in_flight = 4;
};

// |A ∩ B| / |A ∪ B| over {subject} ∪ {predicate} ∪ objects.
double TripleJaccard(const Triple& a, const Triple& b);

// log(r_spo + alpha * r_e), or kMinusInfinityReward when the argument is 0.
double Reward(size_t r_spo, size_t r_e, double alpha);

struct ScoredAnswer {
  std::string answer;
  std::vector<Triple> extracted;
  size_t r_spo = 0;
  size_t r_e = 0;
  double reward = kMinusInfinityReward;
};

// Scores answers against a fixed graph. Holds an inverted index from
// triple elements to graph edges, so only edges sharing an element with an
// answer triple are compared. Safe to share across threads.
class AnswerScorer {
 public:
  // Throws kInvalidArgument unless alpha >= 0 and thresh_sim in (0, 1].
  AnswerScorer(const KnowledgeGraph& kg, double alpha, double thresh_sim);

  // Rules 1, 3 and 4 are applied to `raw` first. An extracted triple counts
  // towards r_spo at most once; r_e counts distinct extracted entities found
  // in the graph.
  ScoredAnswer Score(std::string answer, const RawExtraction& raw) const;

 private:
  const KnowledgeGraph& kg_;
  double alpha_;
  double thresh_sim_;
  std::vector<Triple> kg_triples_;
  std::unordered_map<std::string, std::vector<size_t>> by_element_;
};

// Throws kExtractionFailure when the extractor fails.
ScoredAnswer ScoreAnswer(const std::string& answer, const KnowledgeGraph& kg,
                         const ExtractionClient& extractor, double alpha,
                         double thresh_sim);

// Unique clauses / total clauses after splitting on . ! ? ; and their
// full-width forms, trimming, collapsing whitespace and lowercasing. An
// answer with no clauses scores 1.
double RepetitionRatio(std::string_view answer);

struct PreferencePair {
  std::string prompt;
  std::string chosen;
  std::string rejected;
  double reward_chosen = 0.0;
  double reward_rejected = 0.0;

  bool operator==(const PreferencePair&) const = default;
};

// Every ordered pair (pos, neg) of distinct positions with a finite pos
// reward, reward gap >= pair_thresh and RepetitionRatio(pos) >= rep_thresh.
// Duplicate (chosen, rejected) texts are emitted once.
std::vector<PreferencePair> PairScoredAnswers(const std::string& prompt,
                                              std::span<const ScoredAnswer> scored,
                                              double pair_thresh, double rep_thresh);

// Scores `answers` (concurrently, bounded by params.max_in_flight) and pairs
// them. `prompt` is the assembled retrieval prompt for the question. Answers
// whose extraction fails are logged and dropped.
std::vector<PreferencePair> MakePairs(const std::string& prompt,
                                      std::span<const std::string> answers,
                                      const KnowledgeGraph& kg,
                                      const ExtractionClient& extractor,
                                      const AkgfParams& params);

struct DpoLossInput {
  double beta = kDefaultDpoBeta;
  double logp_policy_chosen = 0.0;
  double logp_policy_rejected = 0.0;
  double logp_ref_chosen = 0.0;
  double logp_ref_rejected = 0.0;
};

struct DpoLossGradient {
  double policy_chosen = 0.0;
  double policy_rejected = 0.0;
  double ref_chosen = 0.0;
  double ref_rejected = 0.0;
};

// -log sigmoid(beta * ((pc - rc) - (pr - rr))), evaluated as a softplus.
// Throws kInvalidArgument unless beta > 0.
double DpoPairwiseLoss(const DpoLossInput& in);
DpoLossGradient DpoPairwiseLossGradient(const DpoLossInput& in);

// Rewards are JSON numbers, or the string "-inf" for the sentinel.
io::Json RewardToJson(double reward);
double RewardFromJson(const io::Json& j);

io::Json ScoredAnswerToJson(const ScoredAnswer& scored);
io::Json PreferencePairToJson(const PreferencePair& pair);
PreferencePair PreferencePairFromJson(const io::Json& j);

// Writes pairs.jsonl atomically and returns the record count.
size_t ExportDpoDataset(std::span<const PreferencePair> pairs,
                        const std::filesystem::path& path);
std::vector<PreferencePair> ReadDpoDataset(const std::filesystem::path& path);

}  // namespace kgalign
