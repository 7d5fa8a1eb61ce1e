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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "funcprobe/corpus.hpp"
#include "funcprobe/dataset.hpp"
#include "funcprobe/error.hpp"
#include "funcprobe/evaluate.hpp"
#include "funcprobe/random.hpp"
#include "funcprobe/text.hpp"

namespace funcprobe {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr std::size_t kDefaultFeatureDim = 256;

// ---------------------------------------------------------------------------
// Sentence features

namespace detail {

inline void add_hashed(Vector& v, std::string_view feature, double weight) {
  const std::uint64_t h = fnv1a64(feature);
  const auto bucket = static_cast<Eigen::Index>(h % static_cast<std::uint64_t>(v.size()));
  v[bucket] += (h >> 63) ? -weight : weight;
}

// Unigram plus padded character trigrams of one token.
inline void add_token_features(Vector& v, const std::string& token, double weight) {
  add_hashed(v, "u:" + token, weight);
  const std::string padded = "<" + token + ">";
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) add_hashed(v, "c:" + padded.substr(i, 3), weight);
}

}  // namespace detail

// Signed hashed counts of unigrams, bigrams and character trigrams, scaled by
// 1/sqrt(n), plus a max-pool over per-token vectors weighted by relative
// position.
inline Vector embed_sentence(const std::vector<std::string>& tokens, std::size_t dim = kDefaultFeatureDim) {
  if (tokens.empty()) throw Error(ErrorCode::kEmptyInput, "cannot embed an empty token list");
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "feature dimension must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  std::vector<std::string> lower;
  for (const auto& t : tokens) lower.push_back(to_lower(t));
  const double n = static_cast<double>(lower.size());

  Vector counts = Vector::Zero(d);
  for (std::size_t i = 0; i < lower.size(); ++i) {
    detail::add_token_features(counts, lower[i], 1.0);
    if (i + 1 < lower.size()) detail::add_hashed(counts, "b:" + lower[i] + " " + lower[i + 1], 1.0);
  }
  counts /= std::sqrt(n);

  Vector pooled = Vector::Zero(d);
  for (std::size_t i = 0; i < lower.size(); ++i) {
    Vector token = Vector::Zero(d);
    detail::add_token_features(token, lower[i], (static_cast<double>(i) + 1.0) / n);
    pooled = i == 0 ? token : pooled.cwiseMax(token);
  }
  return counts + pooled;
}

inline Vector embed_text(std::string_view text, std::size_t dim = kDefaultFeatureDim) {
  return embed_sentence(tokenize(text).words(), dim);
}

inline Vector pair_features(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pair_features on sizes " + std::to_string(u.size()) + " and " + std::to_string(v.size()));
  }
  const auto d = u.size();
  Vector out(4 * d);
  out << u, v, u.cwiseProduct(v), (u - v).cwiseAbs();
  return out;
}

inline Vector concat(const Vector& u, const Vector& v) {
  Vector out(u.size() + v.size());
  out << u, v;
  return out;
}

// ---------------------------------------------------------------------------
// MLP: input -> hidden -> softmax

enum class Activation { kTanh, kRelu };

struct TrainConfig {
  std::size_t hidden = 512;
  Activation activation = Activation::kTanh;
  double learning_rate = 1e-3;
  double momentum = 0.9;
  double lr_decay = 0.5;
  std::size_t plateau_patience = 4;
  std::size_t early_stop_patience = 20;
  double min_learning_rate = 1e-6;
  std::size_t max_epochs = 100;
  std::size_t batch_size = 32;
  double dropout = 0.2;
  std::uint64_t seed = 0;

  void validate() const {
    if (hidden == 0 || batch_size == 0 || max_epochs == 0 || !(learning_rate > 0) || !(min_learning_rate > 0) ||
        !(lr_decay > 0 && lr_decay < 1) || momentum < 0 || momentum >= 1) {
      throw Error(ErrorCode::kInvalidArgument, "invalid training configuration");
    }
    if (dropout < 0 || dropout >= 1) throw Error(ErrorCode::kInvalidArgument, "dropout must lie in [0, 1)");
  }
};

struct MlpParams {
  Matrix w1;  // hidden x input
  Vector b1;
  Matrix w2;  // classes x hidden
  Vector b2;
  Activation activation = Activation::kTanh;

  Eigen::Index input_dim() const { return w1.cols(); }
  Eigen::Index classes() const { return w2.rows(); }
  std::size_t size() const {
    return static_cast<std::size_t>(w1.size() + b1.size() + w2.size() + b2.size());
  }
  // Flat coordinate access in the order w1, b1, w2, b2 (column-major).
  double& at(std::size_t i) {
    const auto idx = static_cast<Eigen::Index>(i);
    if (idx < w1.size()) return w1.data()[idx];
    if (idx < w1.size() + b1.size()) return b1.data()[idx - w1.size()];
    if (idx < w1.size() + b1.size() + w2.size()) return w2.data()[idx - w1.size() - b1.size()];
    return b2.data()[idx - w1.size() - b1.size() - w2.size()];
  }
};

inline MlpParams init_mlp(Eigen::Index input, Eigen::Index hidden, Eigen::Index classes, Activation act, Rng& rng) {
  MlpParams p;
  p.activation = act;
  auto fill = [&](Matrix& m, Eigen::Index rows, Eigen::Index cols) {
    const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
    m.resize(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = (2.0 * rng.uniform() - 1.0) * limit;
    }
  };
  fill(p.w1, hidden, input);
  fill(p.w2, classes, hidden);
  p.b1 = Vector::Zero(hidden);
  p.b2 = Vector::Zero(classes);
  return p;
}

inline Vector softmax(const Vector& logits) {
  const Vector shifted = (logits.array() - logits.maxCoeff()).exp().matrix();
  return shifted / shifted.sum();
}

struct Gradients {
  Matrix w1;
  Vector b1;
  Matrix w2;
  Vector b2;
};

namespace detail {

inline Matrix activate(const Matrix& z, Activation a) {
  return a == Activation::kTanh ? Matrix(z.array().tanh()) : Matrix(z.cwiseMax(0.0));
}

inline Matrix activation_grad(const Matrix& z, const Matrix& h, Activation a) {
  if (a == Activation::kTanh) return (1.0 - h.array().square()).matrix();
  return (z.array() > 0.0).cast<double>().matrix();
}

inline Matrix softmax_columns(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index c = 0; c < logits.cols(); ++c) out.col(c) = softmax(logits.col(c));
  return out;
}

}  // namespace detail

// Column-per-example probabilities, no dropout.
inline Matrix predict_proba(const MlpParams& p, const Matrix& x) {
  const Matrix h = detail::activate((p.w1 * x).colwise() + p.b1, p.activation);
  return detail::softmax_columns((p.w2 * h).colwise() + p.b2);
}

// Mean cross-entropy over the columns of x and its gradients. `mask` (same
// shape as the hidden layer, already scaled for inverted dropout) is applied
// when given.
inline double loss_and_gradients(const MlpParams& p, const Matrix& x, const std::vector<int>& y, Gradients* g,
                                 const Matrix* mask = nullptr) {
  const Matrix z = (p.w1 * x).colwise() + p.b1;
  const Matrix a = detail::activate(z, p.activation);
  const Matrix h = mask ? Matrix(a.cwiseProduct(*mask)) : a;
  const Matrix probs = detail::softmax_columns((p.w2 * h).colwise() + p.b2);
  const double n = static_cast<double>(x.cols());
  double loss = 0.0;
  for (Eigen::Index c = 0; c < x.cols(); ++c) loss -= std::log(std::max(probs(y[c], c), 1e-300));
  loss /= n;
  if (g) {
    Matrix delta2 = probs;
    for (Eigen::Index c = 0; c < x.cols(); ++c) delta2(y[c], c) -= 1.0;
    delta2 /= n;
    g->w2 = delta2 * h.transpose();
    g->b2 = delta2.rowwise().sum();
    Matrix delta1 = p.w2.transpose() * delta2;
    if (mask) delta1 = delta1.cwiseProduct(*mask);
    delta1 = delta1.cwiseProduct(detail::activation_grad(z, a, p.activation));
    g->w1 = delta1 * x.transpose();
    g->b1 = delta1.rowwise().sum();
  }
  return loss;
}

// Largest relative error between analytic and central-difference gradients
// over `coordinates` randomly chosen parameters; |a - n| / max(|a| + |n|, 1e-8).
// Dropout is not applied.
inline double grad_check(const MlpParams& params, const Vector& x, int label, Rng& rng,
                         std::size_t coordinates = 100, double step = 1e-5) {
  Matrix xm = x;
  const std::vector<int> y = {label};
  Gradients g;
  loss_and_gradients(params, xm, y, &g);
  MlpParams flat_grad = params;
  flat_grad.w1 = g.w1;
  flat_grad.b1 = g.b1;
  flat_grad.w2 = g.w2;
  flat_grad.b2 = g.b2;
  MlpParams probe = params;
  double worst = 0.0;
  const std::size_t total = params.size();
  auto relu_pattern = [&](const MlpParams& q) { return Eigen::ArrayX<bool>((q.w1 * x + q.b1).array() > 0.0); };
  const bool relu = params.activation == Activation::kRelu;
  std::size_t skipped = 0;
  for (std::size_t k = 0; k < coordinates;) {
    const std::size_t i = rng.uniform_index(total);
    const double saved = probe.at(i);
    probe.at(i) = saved + step;
    const double up = loss_and_gradients(probe, xm, y, nullptr);
    const bool crossed_up = relu && (relu_pattern(probe) != relu_pattern(params)).any();
    probe.at(i) = saved - step;
    const double down = loss_and_gradients(probe, xm, y, nullptr);
    const bool crossed_down = relu && (relu_pattern(probe) != relu_pattern(params)).any();
    probe.at(i) = saved;
    // A step across a ReLU kink has no meaningful finite difference.
    if ((crossed_up || crossed_down) && ++skipped < 100 * coordinates) continue;
    ++k;
    const double numeric = (up - down) / (2.0 * step);
    const double analytic = flat_grad.at(i);
    worst = std::max(worst, std::fabs(analytic - numeric) / std::max(std::fabs(analytic) + std::fabs(numeric), 1e-8));
  }
  return worst;
}

struct TrainLog {
  std::vector<double> step_losses;
  std::vector<double> dev_accuracies;  // one per epoch
  double best_dev_accuracy = 0.0;
  std::size_t best_epoch = 0;
  std::size_t epochs = 0;
  double final_learning_rate = 0.0;
  std::string stop_reason;
};

struct TrainedMlp {
  MlpParams params;
  TrainLog log;
};

inline std::vector<int> predict_classes(const MlpParams& p, const Matrix& x) {
  const Matrix probs = predict_proba(p, x);
  std::vector<int> out(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index c = 0; c < x.cols(); ++c) probs.col(c).maxCoeff(&out[static_cast<std::size_t>(c)]);
  return out;
}

inline double class_accuracy(const MlpParams& p, const Matrix& x, const std::vector<int>& y) {
  if (x.cols() == 0) return 0.0;
  const auto pred = predict_classes(p, x);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < y.size(); ++i) ok += pred[i] == y[i];
  return static_cast<double>(ok) / static_cast<double>(y.size());
}

// Runs `steps` mini-batch updates of plain momentum SGD; exposed for tests.
class SgdTrainer {
 public:
  SgdTrainer(MlpParams& params, const TrainConfig& cfg, Rng& rng) : p_(params), cfg_(cfg), rng_(rng) {
    v_.w1 = Matrix::Zero(p_.w1.rows(), p_.w1.cols());
    v_.b1 = Vector::Zero(p_.b1.size());
    v_.w2 = Matrix::Zero(p_.w2.rows(), p_.w2.cols());
    v_.b2 = Vector::Zero(p_.b2.size());
  }

  double step(const Matrix& x, const std::vector<int>& y, double lr) {
    Matrix mask;
    const Matrix* mask_ptr = nullptr;
    if (cfg_.dropout > 0.0) {
      mask.resize(p_.w1.rows(), x.cols());
      const double keep = 1.0 - cfg_.dropout;
      for (Eigen::Index c = 0; c < mask.cols(); ++c) {
        for (Eigen::Index r = 0; r < mask.rows(); ++r) mask(r, c) = rng_.uniform() < keep ? 1.0 / keep : 0.0;
      }
      mask_ptr = &mask;
    }
    Gradients g;
    const double loss = loss_and_gradients(p_, x, y, &g, mask_ptr);
    if (!std::isfinite(loss)) throw Error(ErrorCode::kNonFiniteLoss, "training loss is not finite");
    v_.w1 = cfg_.momentum * v_.w1 - lr * g.w1;
    v_.b1 = cfg_.momentum * v_.b1 - lr * g.b1;
    v_.w2 = cfg_.momentum * v_.w2 - lr * g.w2;
    v_.b2 = cfg_.momentum * v_.b2 - lr * g.b2;
    p_.w1 += v_.w1;
    p_.b1 += v_.b1;
    p_.w2 += v_.w2;
    p_.b2 += v_.b2;
    return loss;
  }

 private:
  MlpParams& p_;
  const TrainConfig& cfg_;
  Rng& rng_;
  Gradients v_;
};

// Trains on columns of x_train, evaluating on the dev set once per epoch.
// The learning rate halves once more than `plateau_patience` evaluations pass
// without a new best; training stops after `early_stop_patience` evaluations
// without a new best or when the rate falls below the minimum. Returns the
// best dev checkpoint. An empty dev set falls back to the training set.
inline TrainedMlp train_mlp(const Matrix& x_train, const std::vector<int>& y_train, const Matrix& x_dev,
                            const std::vector<int>& y_dev, int classes, const TrainConfig& cfg) {
  cfg.validate();
  if (static_cast<std::size_t>(x_train.cols()) != y_train.size() ||
      static_cast<std::size_t>(x_dev.cols()) != y_dev.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "feature and label counts differ");
  }
  if (x_train.cols() == 0) throw Error(ErrorCode::kEmptyInput, "no training examples");
  std::vector<bool> seen(static_cast<std::size_t>(classes), false);
  std::size_t distinct = 0;
  for (int y : y_train) {
    if (y < 0 || y >= classes) throw Error(ErrorCode::kOutOfRange, "label index out of range");
    if (!seen[static_cast<std::size_t>(y)]) {
      seen[static_cast<std::size_t>(y)] = true;
      ++distinct;
    }
  }
  if (distinct < 2) throw Error(ErrorCode::kDegenerateLabels, "training labels contain a single class");
  const bool own_dev = x_dev.cols() == 0;
  const Matrix& xd = own_dev ? x_train : x_dev;
  const std::vector<int>& yd = own_dev ? y_train : y_dev;

  Rng rng(cfg.seed);
  TrainedMlp out;
  out.params = init_mlp(x_train.rows(), static_cast<Eigen::Index>(cfg.hidden), classes, cfg.activation, rng);
  MlpParams current = out.params;
  SgdTrainer sgd(current, cfg, rng);
  double lr = cfg.learning_rate;
  std::size_t since_best = 0;
  std::size_t since_decay = 0;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(x_train.cols()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
  out.log.best_dev_accuracy = -1.0;
  out.log.stop_reason = "max-epochs";
  for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      Matrix xb(x_train.rows(), static_cast<Eigen::Index>(end - start));
      std::vector<int> yb;
      for (std::size_t i = start; i < end; ++i) {
        xb.col(static_cast<Eigen::Index>(i - start)) = x_train.col(order[i]);
        yb.push_back(y_train[static_cast<std::size_t>(order[i])]);
      }
      out.log.step_losses.push_back(sgd.step(xb, yb, lr));
    }
    const double acc = class_accuracy(current, xd, yd);
    out.log.dev_accuracies.push_back(acc);
    out.log.epochs = epoch + 1;
    if (acc > out.log.best_dev_accuracy) {
      out.log.best_dev_accuracy = acc;
      out.log.best_epoch = epoch;
      out.params = current;
      since_best = 0;
      since_decay = 0;
      continue;
    }
    ++since_best;
    ++since_decay;
    if (since_best >= cfg.early_stop_patience) {
      out.log.stop_reason = "early-stop";
      break;
    }
    if (since_decay > cfg.plateau_patience) {
      lr *= cfg.lr_decay;
      since_decay = 0;
      if (lr < cfg.min_learning_rate) {
        out.log.stop_reason = "min-learning-rate";
        break;
      }
    }
  }
  out.log.final_learning_rate = lr;
  return out;
}

// ---------------------------------------------------------------------------
// Probing

enum class ProbeMode { kAcceptability, kNli };

inline std::optional<ProbeMode> parse_probe_mode(std::string_view s) {
  if (s == "acceptability") return ProbeMode::kAcceptability;
  if (s == "nli") return ProbeMode::kNli;
  return std::nullopt;
}

// Read access to a probing set that counts every label lookup.
class AuditedDataset {
 public:
  explicit AuditedDataset(const std::vector<DatasetRecord>& records) : records_(records) {}

  std::size_t size() const { return records_.size(); }
  const std::string& id(std::size_t i) const { return records_[i].id(); }
  const Payload& payload(std::size_t i) const { return records_[i].payload(); }
  Task task(std::size_t i) const { return records_[i].task(); }
  std::string label(std::size_t i) const {
    ++label_reads_;
    const auto l = gold_label(records_[i]);
    if (!l) throw Error(ErrorCode::kMissingMetadata, "item has no label", records_[i].id());
    return *l;
  }
  std::size_t label_reads() const { return label_reads_; }
  const std::vector<DatasetRecord>& records() const { return records_; }

 private:
  const std::vector<DatasetRecord>& records_;
  mutable std::size_t label_reads_ = 0;
};

struct ProbeConfig {
  std::size_t feature_dim = kDefaultFeatureDim;
  std::size_t folds = 10;
  double nli_dev_fraction = 0.1;
  TrainConfig train;
  std::string model_id = "reference";
};

struct ProbeResult {
  PredictionSet predictions;
  std::optional<CvResult> cv;
  std::vector<std::string> classes;
  std::size_t probing_label_reads = 0;  // label lookups on the probing set
  std::vector<std::string> warnings;
};

inline Vector item_features(Task task, const Payload& p, std::size_t dim) {
  switch (task_format(task)) {
    case TaskFormat::kSingleSentence: return embed_text(p.first, dim);
    case TaskFormat::kSentencePair: return concat(embed_text(p.first, dim), embed_text(p.second, dim));
    case TaskFormat::kNli: return pair_features(embed_text(p.first, dim), embed_text(p.second, dim));
  }
  return {};
}

namespace detail {

inline Matrix feature_matrix(const std::vector<Vector>& columns, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return Matrix(columns.empty() ? 0 : columns.front().size(), 0);
  Matrix m(columns[idx.front()].size(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = columns[idx[j]];
  return m;
}

inline Task require_single_task(const AuditedDataset& data) {
  if (data.size() == 0) throw Error(ErrorCode::kEmptyInput, "probing set is empty");
  const Task task = data.task(0);
  for (std::size_t i = 1; i < data.size(); ++i) {
    if (data.task(i) != task) throw Error(ErrorCode::kTaskMismatch, "probing set mixes tasks", data.id(i));
  }
  return task;
}

}  // namespace detail

// Acceptability: 10-fold CV (8 train, 1 dev, 1 test) on the probing set.
inline ProbeResult probe_acceptability(const AuditedDataset& data, const ProbeConfig& cfg) {
  const Task task = detail::require_single_task(data);
  if (!is_acceptability(task)) {
    throw Error(ErrorCode::kTaskMismatch, "task " + std::string(task_name(task)) + " is not an acceptability task");
  }
  ProbeResult out;
  out.classes = {"natural", "unnatural"};
  std::vector<Vector> features;
  std::vector<std::string> ids, labels;
  std::vector<int> y;
  for (std::size_t i = 0; i < data.size(); ++i) {
    features.push_back(item_features(task, data.payload(i), cfg.feature_dim));
    ids.push_back(data.id(i));
    labels.push_back(data.label(i));
    const auto it = std::find(out.classes.begin(), out.classes.end(), labels.back());
    if (it == out.classes.end()) throw Error(ErrorCode::kInvalidArgument, "unexpected label " + labels.back(), ids.back());
    y.push_back(static_cast<int>(it - out.classes.begin()));
  }
  Rng fold_rng(derive_seed(cfg.train.seed, "folds"));
  const auto folds = stratified_folds(ids, labels, cfg.folds, fold_rng);
  out.warnings = folds.warnings;
  const auto cv = cross_validate(data.records(), folds, [&](const FoldSplit& split) {
    auto pick = [&](const std::vector<std::size_t>& idx) {
      std::vector<int> out_y;
      for (auto i : idx) out_y.push_back(y[i]);
      return out_y;
    };
    TrainConfig tc = cfg.train;
    tc.seed = derive_seed(cfg.train.seed, "fold" + std::to_string(split.fold));
    const auto model = train_mlp(detail::feature_matrix(features, split.train), pick(split.train),
                                 detail::feature_matrix(features, split.dev), pick(split.dev), 2, tc);
    std::vector<std::string> predicted;
    if (split.test.empty()) return predicted;
    for (int c : predict_classes(model.params, detail::feature_matrix(features, split.test))) {
      predicted.push_back(out.classes[static_cast<std::size_t>(c)]);
    }
    return predicted;
  });
  out.predictions = cv.predictions;
  out.predictions.model_id = cfg.model_id;
  out.predictions.task = std::string(task_name(task));
  out.cv = cv;
  out.probing_label_reads = data.label_reads();
  return out;
}

// NLI: train a 3-class pair classifier on the training records, then predict
// the probing set zero-shot. Probing labels are never consulted.
inline ProbeResult probe_nli(const AuditedDataset& data, const std::vector<NliRecord>& training,
                             const ProbeConfig& cfg) {
  const Task task = detail::require_single_task(data);
  if (is_acceptability(task)) {
    throw Error(ErrorCode::kTaskMismatch, "task " + std::string(task_name(task)) + " is not an NLI task");
  }
  if (training.empty()) throw Error(ErrorCode::kMissingTrainingFile, "NLI mode needs a labeled training set");
  ProbeResult out;
  out.classes = {"entailment", "neutral", "contradiction"};
  std::vector<Vector> features;
  std::vector<int> y;
  for (const auto& r : training) {
    if (!r.gold_label) continue;
    features.push_back(pair_features(embed_text(r.premise.text, cfg.feature_dim),
                                     embed_text(r.hypothesis.text, cfg.feature_dim)));
    y.push_back(static_cast<int>(*r.gold_label));
  }
  if (features.empty()) throw Error(ErrorCode::kMissingTrainingFile, "training set has no labeled pairs");
  std::vector<std::size_t> order(features.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng split_rng(derive_seed(cfg.train.seed, "nli-dev"));
  split_rng.shuffle(order);
  const auto n_dev = static_cast<std::size_t>(cfg.nli_dev_fraction * static_cast<double>(order.size()));
  const std::vector<std::size_t> dev(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_dev));
  const std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(n_dev), order.end());
  auto pick = [&](const std::vector<std::size_t>& idx) {
    std::vector<int> out_y;
    for (auto i : idx) out_y.push_back(y[i]);
    return out_y;
  };
  const auto model = train_mlp(detail::feature_matrix(features, train), pick(train),
                               detail::feature_matrix(features, dev), pick(dev), 3, cfg.train);

  std::vector<Vector> probe_features;
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < data.size(); ++i) {
    probe_features.push_back(item_features(task, data.payload(i), cfg.feature_dim));
    all.push_back(i);
  }
  const auto predicted = predict_classes(model.params, detail::feature_matrix(probe_features, all));
  out.predictions.model_id = cfg.model_id;
  out.predictions.task = std::string(task_name(task));
  for (std::size_t i = 0; i < data.size(); ++i) {
    out.predictions.labels[data.id(i)] = out.classes[static_cast<std::size_t>(predicted[i])];
  }
  out.probing_label_reads = data.label_reads();
  return out;
}

inline ProbeResult run_probing(const std::vector<DatasetRecord>& dataset, ProbeMode mode,
                               const std::vector<NliRecord>* training, const ProbeConfig& cfg) {
  AuditedDataset data(dataset);
  if (mode == ProbeMode::kAcceptability) return probe_acceptability(data, cfg);
  if (!training) throw Error(ErrorCode::kMissingTrainingFile, "NLI mode needs --train");
  return probe_nli(data, *training, cfg);
}

}  // namespace funcprobe
