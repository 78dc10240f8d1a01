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
#include "kgalign/commands.h"

#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "kgalign/akgf.h"
#include "kgalign/config.h"
#include "kgalign/construct.h"
#include "kgalign/error.h"
#include "kgalign/kg_io.h"
#include "kgalign/logging.h"
#include "kgalign/metrics.h"
#include "kgalign/pretrain.h"
#include "kgalign/retrieval.h"

namespace kgalign {

namespace {

using io::Json;

struct GlobalFlags {
  std::optional<std::string> config;
  std::optional<std::string> schema;
  bool quiet = false;
};

// Everything a command needs once flags are parsed.
class Context {
 public:
  Context(const GlobalFlags& flags, const std::map<std::string, std::string>& env,
          std::ostream& out)
      : flags_(flags), env_(env), out_(out) {}

  // Loaded on first use so that flag overrides can be applied first.
  Config& config() {
    if (!config_) {
      std::optional<std::filesystem::path> file;
      if (flags_.config) file = *flags_.config;
      config_ = LoadConfig(file, env_);
      if (flags_.schema) config_->schema_path = *flags_.schema;
    }
    return *config_;
  }

  const Clients& clients() {
    if (!clients_) clients_ = MakeClients(config().clients);
    return *clients_;
  }

  const EmbeddingClient& embedder() {
    if (!clients().embed) Missing("embedding client (clients.embed_url or ELPF_EMBED_URL)");
    return *clients().embed;
  }
  const ExtractionClient& extractor() {
    if (!clients().extract) {
      Missing("extraction client (clients.extract_url or ELPF_EXTRACT_URL)");
    }
    return *clients().extract;
  }
  const GenerationClient& generator() {
    if (!clients().generate) Missing("generation client (clients.generate_url or ELPF_GEN_URL)");
    return *clients().generate;
  }

  Schema schema() {
    if (config().schema_path.empty()) Missing("schema (--schema or [schema] path)");
    return io::LoadSchema(config().schema_path);
  }

  // Flag value, else the [paths] entry, else a usage error.
  std::string Path(const std::optional<std::string>& flag, const std::string& key,
                   const std::string& flag_name) {
    if (flag) return *flag;
    if (auto it = config().paths.find(key); it != config().paths.end()) return it->second;
    Missing(flag_name + " (or [paths] " + key + ")");
  }

  std::ostream& out() { return out_; }

 private:
  [[noreturn]] static void Missing(const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "missing " + what);
  }

  const GlobalFlags& flags_;
  const std::map<std::string, std::string>& env_;
  std::ostream& out_;
  std::optional<Config> config_;
  std::optional<Clients> clients_;
};

template <typename T>
void Override(T& dst, const std::optional<T>& flag) {
  if (flag) dst = *flag;
}

// Re-raises record-level failures with the offending record id attached.
template <typename Fn>
auto ForRecord(const std::string& id, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), "record " + id + ": " + e.message());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kFormat, "record " + id + ": " + e.what());
  }
}

std::string RecordId(const Json& j, size_t index) {
  if (auto it = j.find("id"); it != j.end()) {
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<int64_t>());
  }
  return "#" + std::to_string(index + 1);
}

std::string Pretty(const Json& j) {
  return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

std::string FirstStringField(const Json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    if (auto it = j.find(k); it != j.end() && it->is_string()) return it->get<std::string>();
  }
  std::string names;
  for (const char* k : keys) names += std::string(names.empty() ? "" : "/") + k;
  throw Error(ErrorCode::kFormat, "missing string field " + names);
}

Json StatsToJson(const KgStats& stats) {
  Json hist = Json::object();
  for (const auto& [rel, n] : stats.relation_histogram) hist[rel] = n;
  return Json{{"subject_count", stats.subject_count},
              {"triple_count", stats.triple_count},
              {"entity_count", stats.entity_count},
              {"relation_histogram", hist}};
}

RetrievalOptions RetrievalFrom(const Config& cfg) {
  return RetrievalOptions{static_cast<size_t>(cfg.thresholds.top_k), cfg.thresholds.retrieval};
}

struct Command {
  CLI::App* app;
  std::function<void(Context&)> run;
};

// ---------------------------------------------------------------------------
// Commands. Each one is a thin wrapper over a single library operation.

Command AddBuildKg(CLI::App& root) {
  struct Flags {
    std::optional<std::string> documents, out_kg, out_triples, out_rejects, out_report;
    std::optional<double> threshold;
  };
  auto f = std::make_shared<Flags>();
  auto* app = root.add_subcommand("build-kg", "Extract, clean and resolve a corpus into kg.json");
  app->add_option("--documents", f->documents, "documents.jsonl");
  app->add_option("--out-kg", f->out_kg, "Output kg.json");
  app->add_option("--out-triples", f->out_triples, "Output triples.jsonl (per-document provenance)");
  app->add_option("--out-rejects", f->out_rejects, "Output rejects.jsonl");
  app->add_option("--out-report", f->out_report, "Output resolution_report.json");
  app->add_option("--threshold", f->threshold, "Entity-resolution cosine threshold");
  return {app, [f](Context& ctx) {
            Config& cfg = ctx.config();
            Override(cfg.thresholds.resolution, f->threshold);
            cfg.Validate();
            auto docs = io::LoadDocuments(ctx.Path(f->documents, "documents", "--documents"));
            Schema schema = ctx.schema();
            BuildOptions opts{cfg.thresholds.resolution,
                              static_cast<size_t>(cfg.thresholds.max_in_flight)};
            auto built = BuildKg(docs, ctx.extractor(), schema, ctx.embedder(), opts);

            std::vector<Json> triples;
            for (const auto& r : built.doc_triples) triples.push_back(io::TripleRecordToJson(r));
            std::vector<Json> rejects;
            for (const auto& r : built.rejects) rejects.push_back(RejectToJson(r));
            io::WriteFileAtomic(ctx.Path(f->out_kg, "kg", "--out-kg"), io::KgToText(built.kg));
            io::WriteFileAtomic(ctx.Path(f->out_triples, "triples", "--out-triples"),
                                io::ToJsonl(triples));
            io::WriteFileAtomic(ctx.Path(f->out_rejects, "rejects", "--out-rejects"),
                                io::ToJsonl(rejects));
            io::WriteFileAtomic(ctx.Path(f->out_report, "resolution_report", "--out-report"),
                                Pretty(ResolutionReportToJson(built.report)));
          }};
}

Command AddResolve(CLI::App& root) {
  struct Flags {
    std::optional<std::string> kg, out, out_report;
    std::optional<double> threshold;
  };
  auto f = std::make_shared<Flags>();
  auto* app = root.add_subcommand("resolve", "Merge equivalent subjects of an existing graph");
  app->add_option("--kg", f->kg, "Input kg.json");
  app->add_option("--out", f->out, "Output kg.json")->required();
  app->add_option("--out-report", f->out_report, "Output resolution_report.json");
  app->add_option("--threshold", f->threshold, "Entity-resolution cosine threshold");
  return {app, [f](Context& ctx) {
            Config& cfg = ctx.config();
            Override(cfg.thresholds.resolution, f->threshold);
            cfg.Validate();
            auto kg = io::LoadKg(ctx.Path(f->kg, "kg", "--kg"));
            auto resolved = ResolveEntities(kg, ctx.embedder(), cfg.thresholds.resolution,
                                            static_cast<size_t>(cfg.thresholds.max_in_flight));
            io::WriteFileAtomic(*f->out, io::KgToText(resolved.kg));
            if (f->out_report) {
              io::WriteFileAtomic(*f->out_report, Pretty(ResolutionReportToJson(resolved.report)));
            }
          }};
}

Command AddStats(CLI::App& root) {
  struct Flags {
    std::optional<std::string> kg, out;
  };
  auto f = std::make_shared<Flags>();
  auto* app = root.add_subcommand("stats", "Print subject, triple and entity counts");
  app->add_option("--kg", f->kg, "Input kg.json");
  app->add_option("--out", f->out, "Write the report here instead of stdout");
  return {app, [f](Context& ctx) {
            auto kg = io::LoadKg(ctx.Path(f->kg, "kg", "--kg"));
            std::string report = Pretty(StatsToJson(ComputeKgStats(kg)));
            if (f->out) {
              io::WriteFileAtomic(*f->out, report);
            } else {
              ctx.out() << report;
            }
          }};
}

Command AddIndex(CLI::App& root) {
  struct Flags {
    std::optional<std::string> kg, out;
  };
  auto f = std::make_shared<Flags>();
  auto* app = root.add_subcommand("index", "Embed every (subject, predicate) pair into index.bin");
  app->add_option("--kg", f->kg, "Input kg.json");
  app->add_option("--out", f->out, "Output index.bin");
  return {app, [f](Context& ctx) {
            ctx.config().Validate();
            auto kg = io::LoadKg(ctx.Path(f->kg, "kg", "--kg"));
            auto index = BuildIndex(kg, ctx.embedder());
            WriteIndex(ctx.Path(f->out, "index", "--out"), index);
            spdlog::info("event=index entries={} dim={} fingerprint={}", index.size(),
                         index.dimension(), FingerprintHex(index.fingerprint()));
          }};
}

struct RetrievalFlags {
  std::optional<std::string> kg, index;
  std::optional<int64_t> top_k;
  std::optional<double> threshold;

  void Register(CLI::App* app) {
    app->add_option("--kg", kg, "Input kg.json");
    app->add_option("--index", index, "Input index.bin");
    app->add_option("--top-k", top_k, "Pairs to retrieve (default 5)");
    app->add_option("--threshold", threshold, "Minimum cosine similarity (default 0.9)");
  }
  void Apply(Config& cfg) const {
    Override(cfg.thresholds.top_k, top_k);
    Override(cfg.thresholds.retrieval, threshold);
  }
};

Command AddRetrieve(CLI::App& root) {
  struct Flags : RetrievalFlags {
    std::string query;
  };
  auto f = std::make_shared<Flags>();
  auto* app = root.add_subcommand("retrieve", "Retrieve KG triples for a query and print the prompt");
  f->Register(app);
  app->add_option("--query", f->query, "Query text")->required();
  return {app, [f](Context& ctx) {
            Config& cfg = ctx.config();
            f->Apply(cfg);
            cfg.Validate();
            auto kg = io::LoadKg(ctx.Path(f->kg, "kg", "--kg"));
            auto index = ReadIndex(ctx.Path(f->index, "index", "--index"));
            auto result = Retrieve(index, kg, f->query, RetrievalFrom(cfg), ctx.embedder());
            Json triples = Json::array();
            for (const auto& t : result.triples) triples.push_back(SerializeTriple(t));
            ctx.out() << Pretty(Json{{"query", f->query},
                                     {"triples", triples},
                                     {"scores", result.scores},
                                     {"prompt", AssemblePrompt(result, f->query)}});
          }};
}

Command AddMakePretrain(CLI::App& root) {
  struct Flags {
    std::optional<std::string> documents, triples, out;
  };
  auto f = std::make_shared<Flags>();
  auto* app = root.add_subcommand("make-pretrain", "Build the triples-to-text dataset");
  app->add_option("--documents", f->documents, "documents.jsonl");
  app->add_option("--triples", f->triples, "triples.jsonl written by build-kg");
  app->add_option("--out", f->out, "Output pretrain.jsonl");
  return {app, [f](Context& ctx) {
            auto docs = io::LoadDocuments(ctx.Path(f->documents, "documents", "--documents"));
            Schema schema = ctx.schema();
            auto raw = io::ReadJsonl(ctx.Path(f->triples, "triples", "--triples"));
            std::vector<io::TripleRecord> records;
            for (size_t i = 0; i < raw.size(); ++i) {
              records.push_back(ForRecord(RecordId(raw[i], i), [&] {
                return io::TripleRecordFromJson(raw[i], schema);
              }));
            }
            auto examples = MakePretrainExamples(docs, GroupByDocument(records));
            std::vector<Json> out;
            for (const auto& e : examples) out.push_back(PretrainExampleToJson(e));
            io::WriteFileAtomic(ctx.Path(f->out, "pretrain", "--out"), io::ToJsonl(out));
          }};
}

Command AddAugment(CLI::App& root) {
  struct Flags : RetrievalFlags {
    std::optional<std::string> qa, out;
  };
  auto f = std::make_shared<Flags>();
  auto* app = root.add_subcommand("augment", "Assemble KG-augmented prompts for every question");
  f->Register(app);
  app->add_option("--qa", f->qa, "qa.jsonl with id, question and optional answer");
  app->add_option("--out", f->out, "Output sft.jsonl");
  return {app, [f](Context& ctx) {
            Config& cfg = ctx.config();
            f->Apply(cfg);
            cfg.Validate();
            auto kg = io::LoadKg(ctx.Path(f->kg, "kg", "--kg"));
            auto index = ReadIndex(ctx.Path(f->index, "index", "--index"));
            auto qa = io::ReadJsonl(ctx.Path(f->qa, "qa", "--qa"));
            Retriever retriever(index, kg);
            std::vector<Json> out;
            for (size_t i = 0; i < qa.size(); ++i) {
              std::string id = RecordId(qa[i], i);
              out.push_back(ForRecord(id, [&] {
                std::string question = io::RequireString(qa[i], "question");
                auto result = retriever.Retrieve(question, RetrievalFrom(cfg), ctx.embedder());
                Json rec{{"id", id}, {"prompt", AssemblePrompt(result, question)}};
                if (auto it = qa[i].find("answer"); it != qa[i].end() && it->is_string()) {
                  rec["target"] = *it;
                }
                return rec;
              }));
            }
            io::WriteFileAtomic(ctx.Path(f->out, "sft", "--out"), io::ToJsonl(out));
          }};
}

Command AddScore(CLI::App& root) {
  struct Flags {
    std::optional<std::string> kg, answers, out;
    std::optional<double> alpha, thresh_sim;
  };
  auto f = std::make_shared<Flags>();
  auto* app = root.add_subcommand("score", "Score answers against the KG");
  app->add_option("--kg", f->kg, "Input kg.json");
  app->add_option("--answer-file", f->answers, "answers.jsonl with id and answer");
  app->add_option("--alpha", f->alpha, "Entity-match weight (default 0.5)");
  app->add_option("--thresh-sim", f->thresh_sim, "Triple Jaccard threshold (default 0.5)");
  app->add_option("--out", f->out, "Output scored.jsonl");
  return {app, [f](Context& ctx) {
            Config& cfg = ctx.config();
            Override(cfg.thresholds.alpha, f->alpha);
            Override(cfg.thresholds.thresh_sim, f->thresh_sim);
            cfg.Validate();
            auto kg = io::LoadKg(ctx.Path(f->kg, "kg", "--kg"));
            auto answers = io::ReadJsonl(ctx.Path(f->answers, "answers", "--answer-file"));
            AnswerScorer scorer(kg, cfg.thresholds.alpha, cfg.thresholds.thresh_sim);
            std::vector<Json> out;
            for (size_t i = 0; i < answers.size(); ++i) {
              std::string id = RecordId(answers[i], i);
              out.push_back(ForRecord(id, [&] {
                std::string answer = io::RequireString(answers[i], "answer");
                auto raw = ExtractChecked(ctx.extractor(), answer, kg.schema());
                Json rec{{"id", id}};
                rec.update(ScoredAnswerToJson(scorer.Score(answer, raw)));
                return rec;
              }));
            }
            io::WriteFileAtomic(ctx.Path(f->out, "scored", "--out"), io::ToJsonl(out));
          }};
}

Command AddMakePairs(CLI::App& root) {
  struct Flags : RetrievalFlags {
    std::optional<std::string> questions, out;
    std::optional<int64_t> n_samples;
    std::optional<uint64_t> seed;
    std::optional<double> thresh, rep_thresh, alpha, thresh_sim;
  };
  auto f = std::make_shared<Flags>();
  auto* app = root.add_subcommand("make-pairs", "Generate, score and pair answers into pairs.jsonl");
  f->Register(app);
  app->add_option("--question-file", f->questions, "qa.jsonl with id and question");
  app->add_option("--n-samples", f->n_samples, "Answers generated per question (default 4)");
  app->add_option("--seed", f->seed, "Generation seed");
  app->add_option("--thresh", f->thresh, "Minimum reward gap (default 0.693)");
  app->add_option("--rep-thresh", f->rep_thresh, "Minimum unique-clause ratio (default 0.8)");
  app->add_option("--alpha", f->alpha, "Entity-match weight (default 0.5)");
  app->add_option("--thresh-sim", f->thresh_sim, "Triple Jaccard threshold (default 0.5)");
  app->add_option("--out", f->out, "Output pairs.jsonl");
  return {app, [f](Context& ctx) {
            Config& cfg = ctx.config();
            f->Apply(cfg);
            auto& th = cfg.thresholds;
            Override(th.n_samples, f->n_samples);
            Override(th.seed, f->seed);
            Override(th.pair_thresh, f->thresh);
            Override(th.rep_thresh, f->rep_thresh);
            Override(th.alpha, f->alpha);
            Override(th.thresh_sim, f->thresh_sim);
            cfg.Validate();
            auto kg = io::LoadKg(ctx.Path(f->kg, "kg", "--kg"));
            auto index = ReadIndex(ctx.Path(f->index, "index", "--index"));
            auto questions = io::ReadJsonl(ctx.Path(f->questions, "qa", "--question-file"));
            AkgfParams params{th.alpha, th.thresh_sim, th.pair_thresh, th.rep_thresh,
                              static_cast<size_t>(th.max_in_flight)};
            Retriever retriever(index, kg);
            std::vector<PreferencePair> pairs;
            for (size_t i = 0; i < questions.size(); ++i) {
              std::string id = RecordId(questions[i], i);
              auto made = ForRecord(id, [&] {
                std::string question = io::RequireString(questions[i], "question");
                auto result = retriever.Retrieve(question, RetrievalFrom(cfg), ctx.embedder());
                std::string prompt = AssemblePrompt(result, question);
                std::vector<std::string> answers;
                try {
                  answers = ctx.generator().Generate(prompt, static_cast<int>(th.n_samples), th.seed);
                } catch (const Error& e) {
                  throw Error(ErrorCode::kGenerationFailure, e.message());
                }
                return MakePairs(prompt, answers, kg, ctx.extractor(), params);
              });
              spdlog::info("event=pairs question_id={} pairs={}", id, made.size());
              std::move(made.begin(), made.end(), std::back_inserter(pairs));
            }
            ExportDpoDataset(pairs, ctx.Path(f->out, "pairs", "--out"));
          }};
}

Command AddEval(CLI::App& root) {
  struct Flags {
    std::optional<std::string> pred, ref, out, csv;
  };
  auto f = std::make_shared<Flags>();
  auto* app = root.add_subcommand("eval", "ROUGE-1/2/L and BLEU-4 of predictions against references");
  app->add_option("--pred", f->pred, "pred.jsonl with id and text");
  app->add_option("--ref", f->ref, "ref.jsonl with id and text (or answer)");
  app->add_option("--out", f->out, "Write the MetricReport JSON here instead of stdout");
  app->add_option("--csv", f->csv, "Per-example CSV");
  return {app, [f](Context& ctx) {
            auto pred = io::ReadJsonl(ctx.Path(f->pred, "pred", "--pred"));
            auto ref = io::ReadJsonl(ctx.Path(f->ref, "ref", "--ref"));
            std::map<std::string, std::string> pred_by_id;
            for (size_t i = 0; i < pred.size(); ++i) {
              std::string id = RecordId(pred[i], i);
              std::string text = ForRecord(id, [&] {
                return FirstStringField(pred[i], {"text", "prediction", "answer"});
              });
              if (!pred_by_id.emplace(id, std::move(text)).second) {
                throw Error(ErrorCode::kFormat, "record " + id + ": duplicate prediction id");
              }
            }
            std::vector<metrics::MetricReport> rows;
            std::string csv = "id,rouge1,rouge2,rougeL,bleu4\n";
            for (size_t i = 0; i < ref.size(); ++i) {
              std::string id = RecordId(ref[i], i);
              auto row = ForRecord(id, [&] {
                std::string reference = FirstStringField(ref[i], {"text", "answer", "reference"});
                auto it = pred_by_id.find(id);
                if (it == pred_by_id.end()) {
                  throw Error(ErrorCode::kFormat, "no prediction for this reference");
                }
                return metrics::Evaluate(it->second, reference);
              });
              char line[160];
              std::snprintf(line, sizeof(line), ",%.6f,%.6f,%.6f,%.6f\n", row.rouge1, row.rouge2,
                            row.rougeL, row.bleu4);
              std::string quoted = id;
              if (quoted.find_first_of(",\"\n") != std::string::npos) {
                std::string esc;
                for (char c : quoted) {
                  if (c == '"') esc.push_back('"');
                  esc.push_back(c);
                }
                quoted = "\"" + esc + "\"";
              }
              csv += quoted + line;
              rows.push_back(row);
            }
            auto mean = metrics::Mean(rows);
            std::string report = Pretty(Json{{"rouge1", mean.rouge1},
                                             {"rouge2", mean.rouge2},
                                             {"rougeL", mean.rougeL},
                                             {"bleu4", mean.bleu4},
                                             {"count", rows.size()}});
            if (f->out) {
              io::WriteFileAtomic(*f->out, report);
            } else {
              ctx.out() << report;
            }
            if (f->csv) io::WriteFileAtomic(*f->csv, csv);
          }};
}

Command AddDpoLoss(CLI::App& root) {
  struct Flags {
    std::optional<std::string> input, out;
    std::optional<double> beta;
  };
  auto f = std::make_shared<Flags>();
  auto* app = root.add_subcommand(
      "dpo-loss", "Pairwise DPO loss for policy/reference log-probabilities");
  app->add_option("--input", f->input,
                  "JSONL with logp_policy_chosen, logp_policy_rejected, logp_ref_chosen, "
                  "logp_ref_rejected")
      ->required();
  app->add_option("--beta", f->beta, "KL weight (default 0.4)");
  app->add_option("--out", f->out, "Write JSONL here instead of stdout");
  return {app, [f](Context& ctx) {
            Config& cfg = ctx.config();
            Override(cfg.thresholds.beta, f->beta);
            cfg.Validate();
            auto records = io::ReadJsonl(*f->input);
            std::vector<Json> out;
            for (size_t i = 0; i < records.size(); ++i) {
              std::string id = RecordId(records[i], i);
              out.push_back(ForRecord(id, [&] {
                const Json& r = records[i];
                DpoLossInput in{cfg.thresholds.beta, r.at("logp_policy_chosen").get<double>(),
                                r.at("logp_policy_rejected").get<double>(),
                                r.at("logp_ref_chosen").get<double>(),
                                r.at("logp_ref_rejected").get<double>()};
                return Json{{"id", id}, {"beta", in.beta}, {"loss", DpoPairwiseLoss(in)}};
              }));
            }
            if (f->out) {
              io::WriteFileAtomic(*f->out, io::ToJsonl(out));
            } else {
              ctx.out() << io::ToJsonl(out);
            }
          }};
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
           const std::map<std::string, std::string>& env) {
  CLI::App app{"Knowledge-graph construction, retrieval and preference-data toolkit", "kgalign"};
  GlobalFlags flags;
  app.add_option("--config", flags.config, "TOML-style config file")->check(CLI::ExistingFile);
  app.add_option("--schema", flags.schema, "Schema JSON ({\"relations\": [...]})");
  app.add_flag("--quiet", flags.quiet, "Only log errors");
  app.require_subcommand(1);
  app.fallthrough();

  std::vector<Command> commands = {
      AddBuildKg(app), AddResolve(app),      AddStats(app), AddIndex(app),
      AddRetrieve(app), AddMakePretrain(app), AddAugment(app), AddScore(app),
      AddMakePairs(app), AddEval(app),       AddDpoLoss(app),
  };

  std::vector<std::string> argv_storage = {"kgalign"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  InitLogging(flags.quiet);
  Context ctx(flags, env, out);
  for (const auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      cmd.run(ctx);
      return 0;
    } catch (const Error& e) {
      spdlog::error("event=command_failed command={} error={} message=\"{}\"",
                    cmd.app->get_name(), ErrorName(e.code()), e.message());
      err << "error: " << e.what() << "\n";
      return IsValidationError(e.code()) ? 1 : 2;
    } catch (const Json::exception& e) {
      err << "error: Format: " << e.what() << "\n";
      return 1;
    } catch (const std::filesystem::filesystem_error& e) {
      err << "error: Io: " << e.what() << "\n";
      return 2;
    }
  }
  return 1;
}

}  // namespace kgalign
