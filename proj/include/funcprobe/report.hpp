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

#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "funcprobe/annotate.hpp"
#include "funcprobe/dataset.hpp"
#include "funcprobe/evaluate.hpp"

namespace funcprobe {

// Restart runs of one model share a base id: "ccg#1", "ccg#2" -> "ccg".
inline std::string base_model_id(const std::string& model_id) { return model_id.substr(0, model_id.find('#')); }

struct ReportInputs {
  std::map<std::string, std::vector<DatasetRecord>> datasets;  // by task name
  std::vector<PredictionSet> predictions;
  std::vector<AnnotationResponse> responses;
  std::map<std::string, std::set<std::string>> pretraining_vocab;  // by base model id
  Pooling pooling = Pooling::kMicro;
};

struct ReportSummary {
  std::vector<std::string> files;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::string fixed(double v, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Assigns a task to prediction sets that lack one by matching item ids.
inline std::string infer_task(const PredictionSet& p, const std::map<std::string, std::vector<DatasetRecord>>& data) {
  if (!p.task.empty()) return p.task;
  for (const auto& [task, records] : data) {
    if (records.size() != p.labels.size()) continue;
    bool all = true;
    for (const auto& r : records) all = all && p.labels.count(r.id());
    if (all) return task;
  }
  throw Error(ErrorCode::kIdMismatch, "predictions of model '" + p.model_id + "' match no dataset");
}

}  // namespace detail

inline ReportSummary write_report(const ReportInputs& in, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  ReportSummary out;
  std::string summary = "# Probing report\n\n";
  auto emit = [&](const std::string& name, const std::string& content) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + (dir / name).string());
    f << content;
    out.files.push_back(name);
  };

  std::map<std::string, std::vector<PredictionSet>> by_task;
  for (auto p : in.predictions) {
    p.task = detail::infer_task(p, in.datasets);
    by_task[p.task].push_back(p);
  }

  // Accuracy and baselines.
  std::string acc = "task\tmodel\taccuracy\tmajority_baseline\tn\n";
  summary += "## Accuracy\n\n| task | model | accuracy | baseline |\n|---|---|---|---|\n";
  std::map<std::string, std::map<std::string, std::vector<double>>> restarts;  // task -> base model -> accs
  std::map<std::string, std::map<std::string, double>> first_accuracy;
  for (const auto& [task, records] : in.datasets) {
    const double baseline = majority_baseline(records);
    for (const auto& p : by_task[task]) {
      const double a = accuracy(p, records);
      acc += task + "\t" + p.model_id + "\t" + detail::fixed(a) + "\t" + detail::fixed(baseline) + "\t" +
             std::to_string(records.size()) + "\n";
      summary += "| " + task + " | " + p.model_id + " | " + detail::fixed(100 * a, 1) + " | " +
                 detail::fixed(100 * baseline, 1) + " |\n";
      restarts[task][base_model_id(p.model_id)].push_back(a);
      first_accuracy[task].try_emplace(base_model_id(p.model_id), a);
    }
  }
  emit("accuracy.tsv", acc);

  // Agreement.
  if (!in.responses.empty()) {
    std::string ag = "task\tagreement\tunanimous\taccuracy\tsize\n";
    summary += "\n## Annotation agreement\n\n| task | agree | unan. | accuracy | size |\n|---|---|---|---|---|\n";
    for (const auto& [task, records] : in.datasets) {
      try {
        const auto row = format_agreement_row(compute_agreement(in.responses, records));
        std::string tsv = row;
        std::replace(tsv.begin(), tsv.end(), ' ', '\t');
        ag += task + "\t" + tsv + "\n";
        std::string md;
        for (char c : row) md += c == ' ' ? std::string(" | ") : std::string(1, c);
        summary += "| " + task + " | " + md + " |\n";
      } catch (const Error& e) {
        out.warnings.push_back("agreement for " + task + ": " + e.message());
      }
    }
    emit("agreement.tsv", ag);
  }

  // Overlap: one matrix per task over base models (first restart), plus pooled.
  std::map<std::string, std::vector<PredictionSet>> first_runs;
  for (const auto& [task, sets] : by_task) {
    std::set<std::string> seen;
    for (const auto& p : sets) {
      if (!seen.insert(base_model_id(p.model_id)).second) continue;
      auto q = p;
      q.model_id = base_model_id(p.model_id);
      first_runs[task].push_back(q);
    }
  }
  std::map<std::string, std::vector<PredictionSet>> poolable;
  for (const auto& [task, sets] : first_runs) {
    if (sets.size() < 2) continue;
    const auto m = overlap_matrix(sets);
    emit("overlap_" + task + ".tsv", format_matrix_tsv(m));
    poolable[task] = sets;
  }
  if (!poolable.empty()) {
    try {
      const auto pooled = aggregate_overlap(poolable, in.pooling);
      emit("overlap_all.tsv", format_matrix_tsv(pooled));
      write_heatmap_ppm(pooled, dir / "overlap_all.ppm");
      out.files.push_back("overlap_all.ppm");
      summary += "\n## Prediction overlap (all tasks, " +
                 std::string(in.pooling == Pooling::kMicro ? "micro" : "macro") + ")\n\n```\n" +
                 format_matrix_tsv(pooled) + "```\n";
    } catch (const Error& e) {
      out.warnings.push_back("pooled overlap: " + e.message());
    }
  }

  // Restarts.
  std::string rs = "task\tmodel\truns\tmean\tsd\tformatted\n";
  bool any_restart = false;
  for (const auto& [task, models] : restarts) {
    for (const auto& [model, accs] : models) {
      if (accs.size() < 2) continue;
      const auto s = restart_stats(accs);
      rs += task + "\t" + model + "\t" + std::to_string(accs.size()) + "\t" + detail::fixed(s.mean) + "\t" +
            detail::fixed(s.sd) + "\t" + format_restart_stats(s) + "\n";
      any_restart = true;
    }
  }
  if (any_restart) emit("restarts.tsv", rs);

  // Vocabulary overlap regression.
  if (!in.pretraining_vocab.empty()) {
    std::map<std::string, std::vector<std::pair<double, double>>> points;
    std::string vo = "task\tmodel\tvocab_overlap\taccuracy\n";
    for (const auto& [task, models] : first_accuracy) {
      const auto vocab = dataset_vocabulary(in.datasets.at(task));
      for (const auto& [model, a] : models) {
        const auto it = in.pretraining_vocab.find(model);
        if (it == in.pretraining_vocab.end()) continue;
        const double o = vocab_overlap(it->second, vocab);
        points[task].push_back({o, a});
        vo += task + "\t" + model + "\t" + detail::fixed(o) + "\t" + detail::fixed(a) + "\n";
      }
    }
    emit("vocab_overlap.tsv", vo);
    try {
      const auto report = vocabulary_regression(points);
      std::string rg = "scope\tn\tslope\tintercept\tslope_se\tt\tp\tp_bonferroni\n";
      summary += "\n## Vocabulary overlap regression\n\n| scope | slope | p | p (Bonferroni) |\n|---|---|---|---|\n";
      for (const auto& row : report.rows) {
        const auto& r = row.result;
        rg += row.name + "\t" + std::to_string(r.n) + "\t" + detail::sci(r.slope) + "\t" + detail::sci(r.intercept) +
              "\t" + detail::sci(r.slope_se) + "\t" + detail::sci(r.t) + "\t" + detail::sci(r.p) + "\t" +
              detail::sci(r.p_adjusted) + "\n";
        summary += "| " + row.name + " | " + detail::sci(r.slope) + " | " + detail::sci(r.p) + " | " +
                   detail::sci(r.p_adjusted) + " |\n";
      }
      out.warnings.insert(out.warnings.end(), report.warnings.begin(), report.warnings.end());
      emit("regression.tsv", rg);
    } catch (const Error& e) {
      out.warnings.push_back("regression: " + e.message());
    }
  }

  if (!out.warnings.empty()) {
    summary += "\n## Warnings\n\n";
    for (const auto& w : out.warnings) summary += "- " + w + "\n";
  }
  emit("summary.md", summary);
  return out;
}

}  // namespace funcprobe
