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
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "funcprobe/dataset.hpp"
#include "funcprobe/error.hpp"
#include "funcprobe/random.hpp"
#include "funcprobe/text.hpp"
#include "json.hpp"

namespace funcprobe {

struct PredictionSet {
  std::string model_id;
  std::string task;  // empty when unknown
  std::map<std::string, std::string> labels;  // item id -> predicted label
  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;
};

struct FoldAssignment {
  std::size_t k = 0;
  std::map<std::string, std::size_t> fold_of;
  std::vector<std::string> warnings;
};

struct OverlapMatrix {
  std::vector<std::string> model_ids;
  std::vector<std::vector<double>> values;
};

struct RegressionResult {
  std::size_t n = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double t = 0.0;
  double p = 1.0;
  double p_adjusted = 1.0;
};

// ---------------------------------------------------------------------------
// Label helpers

inline std::vector<std::string> gold_labels(const std::vector<DatasetRecord>& dataset) {
  std::vector<std::string> out;
  out.reserve(dataset.size());
  for (const auto& r : dataset) {
    const auto label = gold_label(r);
    if (!label) throw Error(ErrorCode::kMissingMetadata, "item has no label", r.id());
    out.push_back(*label);
  }
  return out;
}

inline double majority_baseline(const std::vector<std::string>& labels) {
  if (labels.empty()) throw Error(ErrorCode::kEmptyInput, "majority baseline of an empty set");
  std::map<std::string, std::size_t> counts;
  for (const auto& l : labels) counts[l]++;
  std::size_t best = 0;
  for (const auto& [label, n] : counts) best = std::max(best, n);
  return static_cast<double>(best) / static_cast<double>(labels.size());
}

inline double majority_baseline(const std::vector<DatasetRecord>& dataset) {
  return majority_baseline(gold_labels(dataset));
}

// ---------------------------------------------------------------------------
// Folds

// Items of each class (classes in label order) are shuffled and dealt
// round-robin, the deal continuing across classes so fold sizes also stay
// within one of each other.
inline FoldAssignment stratified_folds(const std::vector<std::string>& ids, const std::vector<std::string>& labels,
                                       std::size_t k, Rng& rng) {
  if (k < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 folds, got " + std::to_string(k));
  if (ids.size() != labels.size()) throw Error(ErrorCode::kDimensionMismatch, "ids and labels differ in length");
  std::map<std::string, std::vector<std::string>> by_class;
  for (std::size_t i = 0; i < ids.size(); ++i) by_class[labels[i]].push_back(ids[i]);
  FoldAssignment out;
  out.k = k;
  std::size_t next = 0;
  for (auto& [label, members] : by_class) {
    if (members.size() < k) {
      out.warnings.push_back("class '" + label + "' has " + std::to_string(members.size()) + " items for " +
                             std::to_string(k) + " folds");
    }
    rng.shuffle(members);
    for (const auto& id : members) {
      if (!out.fold_of.emplace(id, next % k).second) throw Error(ErrorCode::kDuplicateId, "duplicate item", id);
      ++next;
    }
  }
  return out;
}

inline FoldAssignment stratified_folds(const std::vector<DatasetRecord>& dataset, std::size_t k, Rng& rng) {
  std::vector<std::string> ids;
  for (const auto& r : dataset) ids.push_back(r.id());
  return stratified_folds(ids, gold_labels(dataset), k, rng);
}

// ---------------------------------------------------------------------------
// Accuracy

namespace detail {

inline std::string id_list(const std::vector<std::string>& ids) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(ids.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) out += (i ? ", " : "") + ids[i];
  if (ids.size() > shown) out += ", ... (" + std::to_string(ids.size()) + " total)";
  return out;
}

template <typename A, typename B>
void require_same_ids(const A& expected, const B& got, const std::string& what) {
  std::vector<std::string> missing, extra;
  for (const auto& [id, _] : expected) {
    if (!got.count(id)) missing.push_back(id);
  }
  for (const auto& [id, _] : got) {
    if (!expected.count(id)) extra.push_back(id);
  }
  if (missing.empty() && extra.empty()) return;
  std::string msg = what + ": item ids differ;";
  if (!missing.empty()) msg += " missing [" + id_list(missing) + "]";
  if (!extra.empty()) msg += " extra [" + id_list(extra) + "]";
  throw Error(ErrorCode::kIdMismatch, msg);
}

inline std::map<std::string, std::string> gold_map(const std::vector<DatasetRecord>& dataset) {
  std::map<std::string, std::string> out;
  const auto labels = gold_labels(dataset);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (!out.emplace(dataset[i].id(), labels[i]).second) {
      throw Error(ErrorCode::kDuplicateId, "duplicate item", dataset[i].id());
    }
  }
  return out;
}

}  // namespace detail

inline double accuracy(const PredictionSet& pred, const std::vector<DatasetRecord>& dataset) {
  const auto gold = detail::gold_map(dataset);
  detail::require_same_ids(gold, pred.labels, "accuracy(" + pred.model_id + ")");
  if (gold.empty()) throw Error(ErrorCode::kEmptyInput, "accuracy of an empty set");
  std::size_t correct = 0;
  for (const auto& [id, label] : gold) correct += pred.labels.at(id) == label;
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

// ---------------------------------------------------------------------------
// Cross-validation

struct FoldSplit {
  std::size_t fold = 0;
  std::vector<std::size_t> train;  // indices into the dataset
  std::vector<std::size_t> dev;
  std::vector<std::size_t> test;
};

// Returns one predicted label per test index, in order.
using Trainer = std::function<std::vector<std::string>(const FoldSplit&)>;

struct CvResult {
  std::vector<double> fold_accuracies;  // NaN for a fold with no test items
  double mean_accuracy = 0.0;
  PredictionSet predictions;
};

inline FoldSplit fold_split(const std::vector<DatasetRecord>& dataset, const FoldAssignment& folds, std::size_t f) {
  FoldSplit split;
  split.fold = f;
  const std::size_t dev = (f + 1) % folds.k;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto it = folds.fold_of.find(dataset[i].id());
    if (it == folds.fold_of.end()) throw Error(ErrorCode::kIdMismatch, "item has no fold", dataset[i].id());
    if (it->second == f) {
      split.test.push_back(i);
    } else if (it->second == dev) {
      split.dev.push_back(i);
    } else {
      split.train.push_back(i);
    }
  }
  return split;
}

inline CvResult cross_validate(const std::vector<DatasetRecord>& dataset, const FoldAssignment& folds,
                               const Trainer& trainer) {
  const auto gold = gold_labels(dataset);
  CvResult out;
  out.predictions.model_id = "cv";
  if (!dataset.empty()) out.predictions.task = std::string(task_name(dataset.front().task()));
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t f = 0; f < folds.k; ++f) {
    const auto split = fold_split(dataset, folds, f);
    std::vector<std::string> predicted;
    try {
      predicted = trainer(split);
    } catch (const Error& e) {
      throw Error(e.code(), "fold " + std::to_string(f) + ": " + e.message(), e.item_id());
    }
    if (predicted.size() != split.test.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "fold " + std::to_string(f) + ": trainer returned " +
                                                     std::to_string(predicted.size()) + " predictions for " +
                                                     std::to_string(split.test.size()) + " test items");
    }
    if (split.test.empty()) {
      out.fold_accuracies.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    std::size_t correct = 0;
    for (std::size_t j = 0; j < split.test.size(); ++j) {
      const auto i = split.test[j];
      correct += predicted[j] == gold[i];
      if (!out.predictions.labels.emplace(dataset[i].id(), predicted[j]).second) {
        throw Error(ErrorCode::kDuplicateId, "item tested twice", dataset[i].id());
      }
    }
    const double acc = static_cast<double>(correct) / static_cast<double>(split.test.size());
    out.fold_accuracies.push_back(acc);
    sum += acc;
    ++used;
  }
  out.mean_accuracy = used ? sum / static_cast<double>(used) : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Prediction overlap

namespace detail {

inline std::size_t agreeing(const PredictionSet& a, const PredictionSet& b) {
  if (!a.task.empty() && !b.task.empty() && a.task != b.task) {
    throw Error(ErrorCode::kTaskMismatch, "prediction sets for tasks " + a.task + " and " + b.task);
  }
  require_same_ids(a.labels, b.labels, "overlap(" + a.model_id + ", " + b.model_id + ")");
  std::size_t same = 0;
  for (const auto& [id, label] : a.labels) same += b.labels.at(id) == label;
  return same;
}

inline std::vector<const PredictionSet*> sorted_by_model(const std::vector<PredictionSet>& sets) {
  std::vector<const PredictionSet*> out;
  for (const auto& s : sets) out.push_back(&s);
  std::sort(out.begin(), out.end(), [](auto* x, auto* y) { return x->model_id < y->model_id; });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i]->model_id == out[i - 1]->model_id) {
      throw Error(ErrorCode::kDuplicateId, "model '" + out[i]->model_id + "' appears twice");
    }
  }
  return out;
}

}  // namespace detail

inline double prediction_overlap(const PredictionSet& a, const PredictionSet& b) {
  const auto same = detail::agreeing(a, b);
  if (a.labels.empty()) throw Error(ErrorCode::kEmptyInput, "overlap of empty prediction sets");
  return static_cast<double>(same) / static_cast<double>(a.labels.size());
}

// Rows and columns follow model id order.
inline OverlapMatrix overlap_matrix(const std::vector<PredictionSet>& sets) {
  const auto sorted = detail::sorted_by_model(sets);
  OverlapMatrix m;
  for (auto* s : sorted) m.model_ids.push_back(s->model_id);
  const std::size_t n = sorted.size();
  m.values.assign(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.values[i][j] = m.values[j][i] = prediction_overlap(*sorted[i], *sorted[j]);
    }
  }
  return m;
}

enum class Pooling { kMicro, kMacro };

// Pools several tasks into one matrix: micro counts agreeing items over all
// tasks together, macro averages the per-task overlaps.
inline OverlapMatrix aggregate_overlap(const std::map<std::string, std::vector<PredictionSet>>& by_task,
                                       Pooling pooling = Pooling::kMicro) {
  if (by_task.empty()) throw Error(ErrorCode::kEmptyInput, "no tasks to pool");
  OverlapMatrix m;
  std::vector<std::vector<double>> agree, total;
  for (const auto& [task, sets] : by_task) {
    const auto sorted = detail::sorted_by_model(sets);
    std::vector<std::string> ids;
    for (auto* s : sorted) ids.push_back(s->model_id);
    if (m.model_ids.empty()) {
      m.model_ids = ids;
      agree.assign(ids.size(), std::vector<double>(ids.size(), 0.0));
      total = agree;
    } else if (ids != m.model_ids) {
      throw Error(ErrorCode::kIdMismatch, "task " + task + " has a different set of models");
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const double same = static_cast<double>(detail::agreeing(*sorted[i], *sorted[j]));
        const double size = static_cast<double>(sorted[i]->labels.size());
        if (size == 0) throw Error(ErrorCode::kEmptyInput, "task " + task + " has no predictions");
        agree[i][j] += pooling == Pooling::kMicro ? same : same / size;
        total[i][j] += pooling == Pooling::kMicro ? size : 1.0;
      }
    }
  }
  const std::size_t n = m.model_ids.size();
  m.values.assign(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m.values[i][j] = m.values[j][i] = agree[i][j] / total[i][j];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Random restarts

struct RestartStats {
  double mean = 0.0;
  double sd = 0.0;
};

inline RestartStats restart_stats(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kTooFewValues, "need at least 2 values, got " + std::to_string(values.size()));
  }
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

// Accuracies are fractions; rendered as percentages, e.g. "46.14 (±0.89)".
inline std::string format_restart_stats(const RestartStats& s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f (±%.2f)", 100.0 * s.mean, 100.0 * s.sd);
  return buf;
}

// ---------------------------------------------------------------------------
// Vocabulary overlap

inline void add_vocabulary(std::set<std::string>& vocab, std::string_view text) {
  if (trim(text).empty()) return;
  for (const auto& t : tokenize(text).tokens) {
    if (!is_punctuation_token(t.form)) vocab.insert(to_lower(t.form));
  }
}

inline std::set<std::string> dataset_vocabulary(const std::vector<DatasetRecord>& dataset) {
  std::set<std::string> vocab;
  for (const auto& r : dataset) {
    add_vocabulary(vocab, r.payload().first);
    add_vocabulary(vocab, r.payload().second);
  }
  return vocab;
}

inline double vocab_overlap(const std::set<std::string>& pretraining, const std::set<std::string>& probing) {
  if (probing.empty()) throw Error(ErrorCode::kEmptyInput, "probing vocabulary is empty");
  std::size_t shared = 0;
  for (const auto& w : probing) shared += pretraining.count(w);
  return static_cast<double>(shared) / static_cast<double>(probing.size());
}

inline double vocab_overlap(const std::set<std::string>& pretraining, const std::vector<DatasetRecord>& probing) {
  return vocab_overlap(pretraining, dataset_vocabulary(probing));
}

// ---------------------------------------------------------------------------
// Regression

namespace detail {

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

// Two-sided p-value of a t statistic with df degrees of freedom.
inline double t_two_sided_p(double t, double df) {
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

inline RegressionResult regress(const std::vector<double>& x, const std::vector<double>& y,
                                std::size_t n_comparisons = 1) {
  if (x.size() != y.size()) throw Error(ErrorCode::kDimensionMismatch, "x and y differ in length");
  if (x.size() < 3) throw Error(ErrorCode::kTooFewValues, "regression needs at least 3 points");
  if (n_comparisons < 1) throw Error(ErrorCode::kInvalidArgument, "n_comparisons must be at least 1");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::kDegenerateX, "all x values are equal");
  RegressionResult r;
  r.n = x.size();
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (r.intercept + r.slope * x[i]);
    sse += e * e;
  }
  const double df = n - 2.0;
  r.slope_se = std::sqrt(sse / df / sxx);
  if (r.slope_se > 0.0) {
    r.t = r.slope / r.slope_se;
  } else {
    r.t = r.slope == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), r.slope);
  }
  r.p = t_two_sided_p(r.t, df);
  r.p_adjusted = std::min(1.0, r.p * static_cast<double>(n_comparisons));
  return r;
}

struct RegressionRow {
  std::string name;  // "overall" or a task name
  RegressionResult result;
};

// One pooled regression (unadjusted) plus one per task, each Bonferroni
// adjusted by the number of tasks. Tasks with fewer than 3 points or
// constant x are skipped with a warning.
struct RegressionReport {
  std::vector<RegressionRow> rows;
  std::vector<std::string> warnings;
};

inline RegressionReport vocabulary_regression(
    const std::map<std::string, std::vector<std::pair<double, double>>>& points_by_task) {
  RegressionReport out;
  std::vector<double> all_x, all_y;
  for (const auto& [task, points] : points_by_task) {
    for (const auto& [px, py] : points) {
      all_x.push_back(px);
      all_y.push_back(py);
    }
  }
  out.rows.push_back({"overall", regress(all_x, all_y, 1)});
  const std::size_t m = points_by_task.size();
  for (const auto& [task, points] : points_by_task) {
    std::vector<double> xs, ys;
    for (const auto& [px, py] : points) {
      xs.push_back(px);
      ys.push_back(py);
    }
    try {
      out.rows.push_back({task, regress(xs, ys, m)});
    } catch (const Error& e) {
      out.warnings.push_back("task " + task + ": " + e.message());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Negation subsets

struct SubsetAccuracy {
  std::size_t count = 0;
  std::size_t correct = 0;
  std::optional<double> accuracy() const {
    if (count == 0) return std::nullopt;
    return static_cast<double>(correct) / static_cast<double>(count);
  }
};

struct NegationSubsets {
  SubsetAccuracy all;
  SubsetAccuracy lexical_only;
  SubsetAccuracy explicit_only;
};

enum class NegationSubset { kOther, kLexicalOnly, kExplicitOnly };

inline NegationSubset negation_subset(const NegationPattern& p) {
  const bool lexical = has_lexical(p.premise) || has_lexical(p.hypothesis);
  const bool expl = has_explicit(p.premise) || has_explicit(p.hypothesis);
  if (lexical && !expl) return NegationSubset::kLexicalOnly;
  if (expl && !lexical) return NegationSubset::kExplicitOnly;
  return NegationSubset::kOther;
}

inline NegationSubsets negation_subsets(const std::vector<DatasetRecord>& dataset, const PredictionSet& pred) {
  const auto gold = detail::gold_map(dataset);
  detail::require_same_ids(gold, pred.labels, "negation_subsets(" + pred.model_id + ")");
  NegationSubsets out;
  for (const auto& r : dataset) {
    if (!r.mutation.negation) throw Error(ErrorCode::kMissingMetadata, "item has no negation pattern", r.id());
    const bool ok = pred.labels.at(r.id()) == gold.at(r.id());
    auto add = [&](SubsetAccuracy& s) {
      ++s.count;
      s.correct += ok;
    };
    add(out.all);
    switch (negation_subset(*r.mutation.negation)) {
      case NegationSubset::kLexicalOnly: add(out.lexical_only); break;
      case NegationSubset::kExplicitOnly: add(out.explicit_only); break;
      case NegationSubset::kOther: break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Prediction files: one JSON object per line,
// {"item_id", "predicted_label", optional "model_id", optional "task"}.

inline void write_predictions(std::ostream& out, const PredictionSet& set) {
  for (const auto& [id, label] : set.labels) {
    nlohmann::json j = {{"item_id", id}, {"predicted_label", label}};
    if (!set.model_id.empty()) j["model_id"] = set.model_id;
    if (!set.task.empty()) j["task"] = set.task;
    out << j.dump() << '\n';
  }
}

inline void save_predictions(const PredictionSet& set, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_predictions(out, set);
}

inline PredictionSet read_predictions(std::istream& in, const std::string& default_model_id = {}) {
  PredictionSet set;
  set.model_id = default_model_id;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto id = j.at("item_id").get<std::string>();
      if (!set.labels.emplace(id, j.at("predicted_label").get<std::string>()).second) {
        throw Error(ErrorCode::kDuplicateId, "duplicate prediction", id);
      }
      if (first) {
        if (j.contains("model_id")) set.model_id = j["model_id"].get<std::string>();
        if (j.contains("task")) set.task = j["task"].get<std::string>();
        first = false;
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "prediction line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return set;
}

inline PredictionSet load_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_predictions(in, path.stem().string());
}

// ---------------------------------------------------------------------------
// Heat map as binary PPM; 0 renders white, 1 dark blue.

inline void write_heatmap_ppm(const OverlapMatrix& m, const std::filesystem::path& path, int cell = 24) {
  const int n = static_cast<int>(m.values.size());
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "empty matrix");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  const int side = n * cell;
  out << "P6\n" << side << ' ' << side << "\n255\n";
  for (int py = 0; py < side; ++py) {
    for (int px = 0; px < side; ++px) {
      const double v = std::clamp(m.values[py / cell][px / cell], 0.0, 1.0);
      const unsigned char rgb[3] = {static_cast<unsigned char>(255 - v * 247), static_cast<unsigned char>(255 - v * 207),
                                    static_cast<unsigned char>(255 - v * 148)};
      out.write(reinterpret_cast<const char*>(rgb), 3);
    }
  }
}

inline std::string format_matrix_tsv(const OverlapMatrix& m) {
  std::string out = "model";
  for (const auto& id : m.model_ids) out += "\t" + id;
  out += "\n";
  char buf[32];
  for (std::size_t i = 0; i < m.model_ids.size(); ++i) {
    out += m.model_ids[i];
    for (double v : m.values[i]) {
      std::snprintf(buf, sizeof buf, "\t%.4f", v);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace funcprobe
