//
// Copyright 2026 The funcprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// funcprobe: command-line front end for the probing toolkit.

#include <glob.h>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "funcprobe/annotate.hpp"
#include "funcprobe/config.hpp"
#include "funcprobe/corpus.hpp"
#include "funcprobe/dataset.hpp"
#include "funcprobe/evaluate.hpp"
#include "funcprobe/http_api.hpp"
#include "funcprobe/model.hpp"
#include "funcprobe/mutate.hpp"
#include "funcprobe/report.hpp"
#include "funcprobe/service.hpp"

namespace fs = std::filesystem;
using namespace funcprobe;

namespace {

// Flag values; optionals override the config file only when given.
struct Args {
  std::optional<std::uint64_t> seed;
  std::string config;

  std::string task, corpus, format, out, lexicons, side;
  std::optional<std::size_t> target;
  std::optional<unsigned> threads;
  std::optional<std::size_t> max_tokens, min_tokens;
  std::optional<double> sigma;

  std::string store, static_dir, host, project, items_path, responses_path, dataset_path, train_path, mode;
  std::optional<int> port;
  std::vector<double> accuracies;
  std::optional<double> nonsense_rate;

  std::string model_id, activation, pooling, heatmap, points;
  std::optional<std::size_t> epochs, hidden, folds, feature_dim;
  std::vector<std::string> predictions, datasets, responses, pretraining;
  std::vector<double> values;
};

void warn_all(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

// Shell-style glob; a pattern with no match is an error.
std::vector<fs::path> expand(const std::vector<std::string>& patterns) {
  std::vector<fs::path> out;
  for (const auto& pattern : patterns) {
    glob_t g{};
    const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
    if (rc == GLOB_NOMATCH) {
      globfree(&g);
      throw Error(ErrorCode::kIo, "no file matches '" + pattern + "'");
    }
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    globfree(&g);
  }
  return out;
}

std::vector<PredictionSet> load_prediction_sets(const std::vector<std::string>& patterns) {
  std::vector<PredictionSet> sets;
  for (const auto& p : expand(patterns)) sets.push_back(load_predictions(p));
  if (sets.empty()) throw Error(ErrorCode::kEmptyInput, "no prediction files given");
  return sets;
}

std::map<std::string, std::vector<DatasetRecord>> load_datasets_by_task(const std::vector<std::string>& patterns) {
  std::map<std::string, std::vector<DatasetRecord>> out;
  for (const auto& p : expand(patterns)) {
    auto records = load_dataset(p);
    if (records.empty()) continue;
    auto& slot = out[std::string(task_name(records.front().task()))];
    slot.insert(slot.end(), std::make_move_iterator(records.begin()), std::make_move_iterator(records.end()));
  }
  return out;
}

std::set<std::string> corpus_vocabulary(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::set<std::string> vocab;
  std::string line;
  while (std::getline(in, line)) add_vocabulary(vocab, line);
  return vocab;
}

// "model=path" pairs.
std::map<std::string, std::set<std::string>> pretraining_vocab(const std::vector<std::string>& specs) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::kInvalidArgument, "expected model=path, got '" + s + "'");
    }
    out[s.substr(0, eq)] = corpus_vocabulary(s.substr(eq + 1));
  }
  return out;
}

ToolkitConfig resolve(const Args& a) {
  ToolkitConfig c = a.config.empty() ? ToolkitConfig{} : load_config(a.config);
  if (a.seed) c.seed = *a.seed;
  if (a.target) c.generate.target_size = *a.target, c.annotate.target_per_label = *a.target;
  if (a.threads) c.generate.threads = *a.threads;
  if (a.max_tokens) c.generate.max_tokens = *a.max_tokens;
  if (a.min_tokens) c.generate.min_tokens = *a.min_tokens;
  if (a.sigma) c.generate.eos_sigma = *a.sigma;
  if (!a.side.empty()) c.generate.preposition_side = a.side;
  if (!a.lexicons.empty()) c.generate.lexicons = a.lexicons;
  if (!a.host.empty()) c.serve.host = a.host;
  if (a.port) c.serve.port = *a.port;
  if (!a.accuracies.empty()) c.simulate.accuracies = a.accuracies;
  if (a.nonsense_rate) c.simulate.nonsense_rate = *a.nonsense_rate;
  if (!a.activation.empty()) c.probe.train.activation = parse_activation(a.activation);
  if (a.epochs) c.probe.train.max_epochs = *a.epochs;
  if (a.hidden) c.probe.train.hidden = *a.hidden;
  if (a.folds) c.probe.folds = *a.folds;
  if (a.feature_dim) c.probe.feature_dim = *a.feature_dim;
  if (!a.pooling.empty()) c.evaluate.pooling = a.pooling;
  return merge_config(c, nlohmann::json::object());  // re-validates
}

CorpusFormat corpus_format(const std::string& name) {
  const auto f = parse_corpus_format(name);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "unknown corpus format '" + name + "'");
  return *f;
}

CorpusFormat default_format(Task task) {
  if (task == Task::kEndOfSentence) return CorpusFormat::kParagraphs;
  if (task_format(task) == TaskFormat::kNli) return CorpusFormat::kNliTabular;
  return CorpusFormat::kLines;
}

// ---------------------------------------------------------------------------

int cmd_generate(const Args& a) {
  const auto cfg = resolve(a);
  const Task task = require_task(a.task);
  const auto format = a.format.empty() ? default_format(task) : corpus_format(a.format);
  const auto corpus = load_corpus(a.corpus, format);
  const auto result = build_probing_set(task, corpus, build_config(cfg), cfg.seed);
  save_dataset(result.records, a.out);
  std::cerr << "wrote " << result.records.size() << " records to " << a.out << " (" << result.candidates_found
            << " candidates";
  if (result.skipped_no_verb) std::cerr << ", " << result.skipped_no_verb << " skipped without a verb";
  std::cerr << ")\n";
  return 0;
}

ApiServer* g_server = nullptr;

int cmd_serve(const Args& a) {
  const auto cfg = resolve(a);
  StoreOptions options;
  options.seed = cfg.seed;
  ProjectStore store(a.store, options);
  warn_all(store.warnings());
  if (!a.project.empty() && !a.items_path.empty()) {
    const auto existing = store.list_projects();
    const bool found = std::any_of(existing.begin(), existing.end(),
                                   [&](const ProjectConfig& p) { return p.project_id == a.project; });
    if (!found) {
      store.create_project(a.project, load_dataset(a.items_path), cfg.annotate.responses_per_item,
                           cfg.annotate.distinct_annotators);
      std::cerr << "created project " << a.project << '\n';
    }
  }
  ApiServer server(store);
  if (!a.static_dir.empty() && !server.mount_static(a.static_dir)) {
    throw Error(ErrorCode::kIo, "cannot serve static files from " + a.static_dir);
  }
  g_server = &server;
  std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
  std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
  std::cerr << "listening on http://" << cfg.serve.host << ':' << cfg.serve.port << "/api/v1\n";
  if (!server.listen(cfg.serve.host, cfg.serve.port)) {
    throw Error(ErrorCode::kIo, "cannot listen on " + cfg.serve.host + ":" + std::to_string(cfg.serve.port));
  }
  g_server = nullptr;
  return 0;
}

int cmd_simulate(const Args& a) {
  const auto cfg = resolve(a);
  AnnotatorProfile profile{cfg.simulate.accuracies, cfg.simulate.nonsense_rate};
  if (!a.store.empty()) {
    if (a.project.empty()) throw Error(ErrorCode::kInvalidArgument, "--store needs --project");
    StoreOptions options;
    options.seed = cfg.seed;
    ProjectStore store(a.store, options);
    const auto n = simulate_project(store, a.project, profile, cfg.seed);
    std::cerr << "submitted " << n << " responses to project " << a.project << '\n';
    std::cout << to_json(store.progress(a.project)).dump() << '\n';
    return 0;
  }
  if (a.items_path.empty() || a.out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "give --items and --out, or --store and --project");
  }
  const auto responses = simulate_annotators(load_dataset(a.items_path), profile, cfg.seed);
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + a.out);
  for (const auto& r : responses) write_response(out, r);
  std::cerr << "wrote " << responses.size() << " responses to " << a.out << '\n';
  return 0;
}

int cmd_aggregate(const Args& a) {
  const auto cfg = resolve(a);
  const auto out = aggregate_dataset(load_dataset(a.items_path), load_responses(a.responses_path),
                                     cfg.annotate.target_per_label, cfg.seed);
  warn_all(out.warnings);
  save_dataset(out.dataset, a.out);
  std::map<std::string, std::size_t> discarded;
  std::size_t retained = 0;
  for (const auto& r : out.results) {
    if (r.retained()) ++retained;
    else discarded[std::string(discard_reason_name(*r.discard_reason))]++;
  }
  std::cout << "aggregated\t" << out.results.size() << "\nretained\t" << retained << '\n';
  for (const auto& [reason, n] : discarded) std::cout << "discarded:" << reason << '\t' << n << '\n';
  std::cout << "pending\t" << out.pending.size() << "\nwritten\t" << out.dataset.size() << '\n';
  return 0;
}

int cmd_agreement(const Args& a) {
  const auto stats = compute_agreement(load_responses(a.responses_path), load_dataset(a.dataset_path));
  std::cout << format_agreement_row(stats) << '\n';
  return 0;
}

int cmd_probe(const Args& a) {
  const auto cfg = resolve(a);
  const auto dataset = load_dataset(a.dataset_path);
  if (dataset.empty()) throw Error(ErrorCode::kEmptyInput, "dataset is empty");
  if (!a.task.empty() && require_task(a.task) != dataset.front().task()) {
    throw Error(ErrorCode::kTaskMismatch, "dataset holds task '" + std::string(task_name(dataset.front().task())) +
                                              "', not '" + a.task + "'");
  }
  const auto mode = parse_probe_mode(a.mode);
  if (!mode) throw Error(ErrorCode::kInvalidArgument, "mode must be acceptability or nli");
  auto pc = probe_config(cfg);
  if (!a.model_id.empty()) pc.model_id = a.model_id;
  std::optional<Corpus> training;
  if (!a.train_path.empty()) training = load_corpus(a.train_path, CorpusFormat::kNliTabular);
  const auto result = run_probing(dataset, *mode, training ? &training->nli : nullptr, pc);
  warn_all(result.warnings);
  save_predictions(result.predictions, a.out);
  if (result.cv) {
    std::cout << "cv_mean_accuracy\t" << result.cv->mean_accuracy << '\n';
    for (std::size_t f = 0; f < result.cv->fold_accuracies.size(); ++f) {
      std::cout << "fold" << f << "\t" << result.cv->fold_accuracies[f] << '\n';
    }
  }
  const bool labelled = std::all_of(dataset.begin(), dataset.end(), [](const auto& r) { return gold_label(r).has_value(); });
  if (labelled) {
    std::cout << "accuracy\t" << accuracy(result.predictions, dataset) << "\nmajority_baseline\t"
              << majority_baseline(dataset) << '\n';
  } else {
    std::cerr << "note: some items are unlabelled; accuracy not computed\n";
  }
  return 0;
}

int cmd_evaluate(const Args& a) {
  const auto dataset = load_dataset(a.dataset_path);
  std::cout << "model\taccuracy\tmajority_baseline\n";
  const double baseline = majority_baseline(dataset);
  for (const auto& p : load_prediction_sets(a.predictions)) {
    std::cout << p.model_id << '\t' << detail::fixed(accuracy(p, dataset)) << '\t' << detail::fixed(baseline)
              << '\n';
  }
  return 0;
}

int cmd_overlap(const Args& a) {
  const auto cfg = resolve(a);
  auto sets = load_prediction_sets(a.predictions);
  std::map<std::string, std::vector<PredictionSet>> by_task;
  for (auto& p : sets) by_task[p.task].push_back(std::move(p));
  const auto m = by_task.size() == 1 ? overlap_matrix(by_task.begin()->second)
                                     : aggregate_overlap(by_task, parse_pooling(cfg.evaluate.pooling));
  const auto tsv = format_matrix_tsv(m);
  if (a.out.empty()) std::cout << tsv;
  else std::ofstream(a.out, std::ios::binary) << tsv;
  if (!a.heatmap.empty()) write_heatmap_ppm(m, a.heatmap);
  return 0;
}

int cmd_restarts(const Args& a) {
  if (!a.values.empty()) {
    std::cout << format_restart_stats(restart_stats(a.values)) << '\n';
    return 0;
  }
  const auto dataset = load_dataset(a.dataset_path);
  std::map<std::string, std::vector<double>> by_model;
  for (const auto& p : load_prediction_sets(a.predictions)) {
    by_model[base_model_id(p.model_id)].push_back(accuracy(p, dataset));
  }
  std::cout << "model\truns\tmean_sd\n";
  for (const auto& [model, accs] : by_model) {
    std::cout << model << '\t' << accs.size() << '\t'
              << (accs.size() >= 2 ? format_restart_stats(restart_stats(accs)) : std::string("-")) << '\n';
  }
  return 0;
}

// Points come either from a TSV (task, model, overlap, accuracy) or from
// datasets + predictions + pretraining corpora.
int cmd_vocab(const Args& a) {
  std::map<std::string, std::vector<std::pair<double, double>>> points;
  if (!a.points.empty()) {
    std::ifstream in(a.points);
    if (!in) throw Error(ErrorCode::kIo, "cannot open " + a.points);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (trim(line).empty() || line[0] == '#') continue;
      const auto f = detail::split_tabs(detail::strip_cr(line));
      if (f.size() != 4) throw Error(ErrorCode::kParse, "points line " + std::to_string(n) + ": need 4 fields");
      if (f[2] == "vocab_overlap") continue;  // header
      try {
        points[f[0]].push_back({std::stod(f[2]), std::stod(f[3])});
      } catch (const std::exception&) {
        throw Error(ErrorCode::kParse, "points line " + std::to_string(n) + ": bad number");
      }
    }
  } else {
    const auto data = load_datasets_by_task(a.datasets);
    const auto vocab = pretraining_vocab(a.pretraining);
    std::cout << "task\tmodel\tvocab_overlap\taccuracy\n";
    for (const auto& p : load_prediction_sets(a.predictions)) {
      const auto task = detail::infer_task(p, data);
      const auto model = base_model_id(p.model_id);
      const auto it = vocab.find(model);
      if (it == vocab.end()) throw Error(ErrorCode::kMissingMetadata, "no pretraining corpus for model '" + model + "'");
      const double o = vocab_overlap(it->second, data.at(task));
      const double acc = accuracy(p, data.at(task));
      points[task].push_back({o, acc});
      std::cout << task << '\t' << model << '\t' << detail::fixed(o) << '\t' << detail::fixed(acc) << '\n';
    }
    std::cout << '\n';
  }
  const auto report = vocabulary_regression(points);
  warn_all(report.warnings);
  std::cout << "scope\tn\tslope\tintercept\tt\tp\tp_bonferroni\n";
  for (const auto& row : report.rows) {
    const auto& r = row.result;
    std::cout << row.name << '\t' << r.n << '\t' << detail::sci(r.slope) << '\t' << detail::sci(r.intercept) << '\t'
              << detail::sci(r.t) << '\t' << detail::sci(r.p) << '\t' << detail::sci(r.p_adjusted) << '\n';
  }
  return 0;
}

int cmd_negation_subsets(const Args& a) {
  const auto dataset = load_dataset(a.dataset_path);
  std::cout << "model\tsubset\tcount\taccuracy\n";
  for (const auto& p : load_prediction_sets(a.predictions)) {
    const auto s = negation_subsets(dataset, p);
    const auto row = [&](const char* name, const SubsetAccuracy& sub) {
      const auto acc = sub.accuracy();
      std::cout << p.model_id << '\t' << name << '\t' << sub.count << '\t'
                << (acc ? detail::fixed(*acc) : std::string("-")) << '\n';
    };
    row("all", s.all);
    row("lexical_only", s.lexical_only);
    row("explicit_only", s.explicit_only);
  }
  return 0;
}

int cmd_report(const Args& a) {
  const auto cfg = resolve(a);
  ReportInputs in;
  in.datasets = load_datasets_by_task(a.datasets);
  in.predictions = load_prediction_sets(a.predictions);
  for (const auto& p : expand(a.responses)) {
    auto r = load_responses(p);
    in.responses.insert(in.responses.end(), r.begin(), r.end());
  }
  in.pretraining_vocab = pretraining_vocab(a.pretraining);
  in.pooling = parse_pooling(cfg.evaluate.pooling);
  const auto summary = write_report(in, a.out);
  warn_all(summary.warnings);
  for (const auto& f : summary.files) std::cout << (fs::path(a.out) / f).string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"funcprobe: function-word probing toolkit"};
  app.require_subcommand(0, 1);
  Args a;
  app.add_option("--seed", a.seed, "master seed");
  app.add_option("--config", a.config, "JSON config file")->check(CLI::ExistingFile);
  bool print_config = false;
  app.add_flag("--print-config", print_config, "print the effective configuration and exit");

  auto* gen = app.add_subcommand("generate", "build a probing set from a corpus");
  gen->add_option("--task", a.task, "task name")->required();
  gen->add_option("--corpus", a.corpus, "source corpus")->required()->check(CLI::ExistingFile);
  gen->add_option("--format", a.format, "lines | paragraphs | nli-tabular (default by task)");
  gen->add_option("--out", a.out, "output dataset (JSONL)")->required();
  gen->add_option("--target-size,--target", a.target, "number of records");
  gen->add_option("--threads", a.threads, "worker threads");
  gen->add_option("--max-tokens", a.max_tokens);
  gen->add_option("--min-tokens", a.min_tokens);
  gen->add_option("--sigma", a.sigma, "EOS offset standard deviation");
  gen->add_option("--preposition-side", a.side, "premise | hypothesis");
  gen->add_option("--lexicons", a.lexicons, "lexicon directory")->check(CLI::ExistingDirectory);

  auto* serve = app.add_subcommand("serve", "run the annotation HTTP service");
  serve->add_option("--store", a.store, "project store directory")->required();
  serve->add_option("--host", a.host);
  serve->add_option("--port", a.port);
  serve->add_option("--static", a.static_dir, "static UI directory");
  serve->add_option("--project", a.project, "create this project on start");
  serve->add_option("--items", a.items_path, "items for --project")->check(CLI::ExistingFile);

  auto* sim = app.add_subcommand("simulate", "synthetic annotators");
  sim->add_option("--items", a.items_path)->check(CLI::ExistingFile);
  sim->add_option("--out", a.out, "response log to write");
  sim->add_option("--store", a.store);
  sim->add_option("--project", a.project);
  sim->add_option("--accuracy", a.accuracies, "per-annotator accuracy")->delimiter(',');
  sim->add_option("--nonsense-rate", a.nonsense_rate);

  auto* agg = app.add_subcommand("aggregate", "majority-vote labels and balance");
  agg->add_option("--responses", a.responses_path)->required()->check(CLI::ExistingFile);
  agg->add_option("--items", a.items_path)->required()->check(CLI::ExistingFile);
  agg->add_option("--out", a.out)->required();
  agg->add_option("--target", a.target, "items per label");

  auto* agr = app.add_subcommand("agreement", "annotator agreement row");
  agr->add_option("--dataset", a.dataset_path)->required()->check(CLI::ExistingFile);
  agr->add_option("--responses", a.responses_path)->required()->check(CLI::ExistingFile);

  auto* probe = app.add_subcommand("probe", "train and run the reference classifier");
  probe->add_option("--task", a.task);
  probe->add_option("--dataset", a.dataset_path)->required()->check(CLI::ExistingFile);
  probe->add_option("--mode", a.mode, "acceptability | nli")->required();
  probe->add_option("--train", a.train_path, "NLI training TSV")->check(CLI::ExistingFile);
  probe->add_option("--out", a.out, "predictions file")->required();
  probe->add_option("--model-id", a.model_id);
  probe->add_option("--activation", a.activation, "tanh | relu");
  probe->add_option("--epochs", a.epochs, "maximum epochs");
  probe->add_option("--hidden", a.hidden);
  probe->add_option("--folds", a.folds);
  probe->add_option("--feature-dim", a.feature_dim);

  auto* eval = app.add_subcommand("evaluate", "accuracy per prediction file");
  eval->add_option("--dataset", a.dataset_path)->required()->check(CLI::ExistingFile);
  eval->add_option("--predictions", a.predictions, "files or globs")->required();

  auto* analyze = app.add_subcommand("analyze", "cross-model analyses");
  analyze->require_subcommand(1);
  auto* ov = analyze->add_subcommand("overlap", "prediction overlap matrix");
  ov->add_option("--predictions", a.predictions)->required();
  ov->add_option("--pooling", a.pooling, "micro | macro");
  ov->add_option("--out", a.out, "matrix TSV (default stdout)");
  ov->add_option("--heatmap", a.heatmap, "PPM image");
  auto* rs = analyze->add_subcommand("restarts", "mean and sd over restarts");
  rs->add_option("--values", a.values, "accuracies");
  rs->add_option("--dataset", a.dataset_path);
  rs->add_option("--predictions", a.predictions);
  auto* vo = analyze->add_subcommand("vocab", "vocabulary overlap regression");
  vo->add_option("--points", a.points, "TSV of task, model, overlap, accuracy");
  vo->add_option("--dataset", a.datasets);
  vo->add_option("--predictions", a.predictions);
  vo->add_option("--pretraining", a.pretraining, "model=corpus path");
  auto* ng = analyze->add_subcommand("negation-subsets", "accuracy on negation subsets");
  ng->add_option("--dataset", a.dataset_path)->required()->check(CLI::ExistingFile);
  ng->add_option("--predictions", a.predictions)->required();

  auto* rep = app.add_subcommand("report", "write a report bundle");
  rep->add_option("--dataset", a.datasets, "datasets, one task each")->required();
  rep->add_option("--predictions", a.predictions)->required();
  rep->add_option("--responses", a.responses);
  rep->add_option("--pretraining", a.pretraining, "model=corpus path");
  rep->add_option("--pooling", a.pooling);
  rep->add_option("--out", a.out, "bundle directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (print_config) {
      std::cout << to_json(resolve(a)).dump(2) << '\n';
      return 0;
    }
    if (gen->parsed()) return cmd_generate(a);
    if (serve->parsed()) return cmd_serve(a);
    if (sim->parsed()) return cmd_simulate(a);
    if (agg->parsed()) return cmd_aggregate(a);
    if (agr->parsed()) return cmd_agreement(a);
    if (probe->parsed()) return cmd_probe(a);
    if (eval->parsed()) return cmd_evaluate(a);
    if (ov->parsed()) return cmd_overlap(a);
    if (rs->parsed()) {
      if (a.values.empty() && (a.dataset_path.empty() || a.predictions.empty())) {
        throw Error(ErrorCode::kInvalidArgument, "give --values, or --dataset and --predictions");
      }
      return cmd_restarts(a);
    }
    if (vo->parsed()) return cmd_vocab(a);
    if (ng->parsed()) return cmd_negation_subsets(a);
    if (rep->parsed()) return cmd_report(a);
    std::cerr << app.help();
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what();
    if (e.item_id()) std::cerr << " [item " << *e.item_id() << "]";
    std::cerr << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
