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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "funcprobe/error.hpp"
#include "funcprobe/evaluate.hpp"
#include "funcprobe/model.hpp"
#include "funcprobe/mutate.hpp"
#include "funcprobe/service.hpp"

namespace funcprobe {

// Every tunable default in one place. The JSON form mirrors this layout;
// a config file may set any subset of keys.
struct ToolkitConfig {
  std::uint64_t seed = 0;

  struct Generate {
    std::size_t target_size = 500;
    std::size_t min_tokens = 1;
    std::size_t max_tokens = kDefaultMaxTokens;
    double eos_sigma = 2.0;
    int eos_max_resamples = 100;
    std::string preposition_side = "hypothesis";
    unsigned threads = 1;
    std::string lexicons;  // directory; empty = bundled lists
  } generate;

  struct Annotate {
    std::size_t target_per_label = 250;
    int responses_per_item = kResponsesPerItem;
    bool distinct_annotators = true;
  } annotate;

  struct Simulate {
    std::vector<double> accuracies = {0.8, 0.8, 0.8};
    double nonsense_rate = 0.0;
  } simulate;

  struct Serve {
    std::string host = "127.0.0.1";
    int port = 8080;
  } serve;

  struct Probe {
    std::size_t feature_dim = kDefaultFeatureDim;
    std::size_t folds = 10;
    double nli_dev_fraction = 0.1;
    TrainConfig train;
  } probe;

  struct Evaluate {
    std::string pooling = "micro";
  } evaluate;
};

inline std::string_view activation_name(Activation a) { return a == Activation::kTanh ? "tanh" : "relu"; }

inline Activation parse_activation(std::string_view s) {
  if (s == "tanh") return Activation::kTanh;
  if (s == "relu") return Activation::kRelu;
  throw Error(ErrorCode::kInvalidArgument, "unknown activation '" + std::string(s) + "'");
}

inline Side parse_side(std::string_view s) {
  if (s == "premise") return Side::kPremise;
  if (s == "hypothesis") return Side::kHypothesis;
  throw Error(ErrorCode::kInvalidArgument, "unknown side '" + std::string(s) + "'");
}

inline Pooling parse_pooling(std::string_view s) {
  if (s == "micro") return Pooling::kMicro;
  if (s == "macro") return Pooling::kMacro;
  throw Error(ErrorCode::kInvalidArgument, "unknown pooling '" + std::string(s) + "'");
}

inline nlohmann::json to_json(const ToolkitConfig& c) {
  const auto& t = c.probe.train;
  return {
      {"seed", c.seed},
      {"generate",
       {{"target_size", c.generate.target_size},
        {"min_tokens", c.generate.min_tokens},
        {"max_tokens", c.generate.max_tokens},
        {"eos_sigma", c.generate.eos_sigma},
        {"eos_max_resamples", c.generate.eos_max_resamples},
        {"preposition_side", c.generate.preposition_side},
        {"threads", c.generate.threads},
        {"lexicons", c.generate.lexicons}}},
      {"annotate",
       {{"target_per_label", c.annotate.target_per_label},
        {"responses_per_item", c.annotate.responses_per_item},
        {"distinct_annotators", c.annotate.distinct_annotators}}},
      {"simulate", {{"accuracies", c.simulate.accuracies}, {"nonsense_rate", c.simulate.nonsense_rate}}},
      {"serve", {{"host", c.serve.host}, {"port", c.serve.port}}},
      {"probe",
       {{"feature_dim", c.probe.feature_dim},
        {"folds", c.probe.folds},
        {"nli_dev_fraction", c.probe.nli_dev_fraction},
        {"train",
         {{"hidden", t.hidden},
          {"activation", activation_name(t.activation)},
          {"learning_rate", t.learning_rate},
          {"momentum", t.momentum},
          {"lr_decay", t.lr_decay},
          {"plateau_patience", t.plateau_patience},
          {"early_stop_patience", t.early_stop_patience},
          {"min_learning_rate", t.min_learning_rate},
          {"max_epochs", t.max_epochs},
          {"batch_size", t.batch_size},
          {"dropout", t.dropout}}}}},
      {"evaluate", {{"pooling", c.evaluate.pooling}}},
  };
}

namespace detail {

template <typename T>
void read_key(const nlohmann::json& obj, const char* key, T& field, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    field = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kParse, "config key '" + where + key + "' has the wrong type");
  }
}

inline void check_keys(const nlohmann::json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::kParse, "config section '" + where + "' must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (!known.count(k)) throw Error(ErrorCode::kParse, "unknown config key '" + where + k + "'");
  }
}

}  // namespace detail

// Overlays `j` onto `base`. Unknown keys are rejected so typos surface.
inline ToolkitConfig merge_config(ToolkitConfig c, const nlohmann::json& j) {
  using detail::check_keys;
  using detail::read_key;
  check_keys(j, {"seed", "generate", "annotate", "simulate", "serve", "probe", "evaluate"}, "");
  read_key(j, "seed", c.seed, "");
  if (j.contains("generate")) {
    const auto& g = j["generate"];
    check_keys(g, {"target_size", "min_tokens", "max_tokens", "eos_sigma", "eos_max_resamples", "preposition_side",
                   "threads", "lexicons"},
               "generate.");
    read_key(g, "target_size", c.generate.target_size, "generate.");
    read_key(g, "min_tokens", c.generate.min_tokens, "generate.");
    read_key(g, "max_tokens", c.generate.max_tokens, "generate.");
    read_key(g, "eos_sigma", c.generate.eos_sigma, "generate.");
    read_key(g, "eos_max_resamples", c.generate.eos_max_resamples, "generate.");
    read_key(g, "preposition_side", c.generate.preposition_side, "generate.");
    read_key(g, "threads", c.generate.threads, "generate.");
    read_key(g, "lexicons", c.generate.lexicons, "generate.");
  }
  if (j.contains("annotate")) {
    const auto& a = j["annotate"];
    check_keys(a, {"target_per_label", "responses_per_item", "distinct_annotators"}, "annotate.");
    read_key(a, "target_per_label", c.annotate.target_per_label, "annotate.");
    read_key(a, "responses_per_item", c.annotate.responses_per_item, "annotate.");
    read_key(a, "distinct_annotators", c.annotate.distinct_annotators, "annotate.");
  }
  if (j.contains("simulate")) {
    const auto& s = j["simulate"];
    check_keys(s, {"accuracies", "nonsense_rate"}, "simulate.");
    read_key(s, "accuracies", c.simulate.accuracies, "simulate.");
    read_key(s, "nonsense_rate", c.simulate.nonsense_rate, "simulate.");
  }
  if (j.contains("serve")) {
    const auto& s = j["serve"];
    check_keys(s, {"host", "port"}, "serve.");
    read_key(s, "host", c.serve.host, "serve.");
    read_key(s, "port", c.serve.port, "serve.");
  }
  if (j.contains("probe")) {
    const auto& p = j["probe"];
    check_keys(p, {"feature_dim", "folds", "nli_dev_fraction", "train"}, "probe.");
    read_key(p, "feature_dim", c.probe.feature_dim, "probe.");
    read_key(p, "folds", c.probe.folds, "probe.");
    read_key(p, "nli_dev_fraction", c.probe.nli_dev_fraction, "probe.");
    if (p.contains("train")) {
      const auto& t = p["train"];
      auto& tc = c.probe.train;
      check_keys(t, {"hidden", "activation", "learning_rate", "momentum", "lr_decay", "plateau_patience",
                     "early_stop_patience", "min_learning_rate", "max_epochs", "batch_size", "dropout"},
                 "probe.train.");
      const std::string w = "probe.train.";
      read_key(t, "hidden", tc.hidden, w);
      std::string act(activation_name(tc.activation));
      read_key(t, "activation", act, w);
      tc.activation = parse_activation(act);
      read_key(t, "learning_rate", tc.learning_rate, w);
      read_key(t, "momentum", tc.momentum, w);
      read_key(t, "lr_decay", tc.lr_decay, w);
      read_key(t, "plateau_patience", tc.plateau_patience, w);
      read_key(t, "early_stop_patience", tc.early_stop_patience, w);
      read_key(t, "min_learning_rate", tc.min_learning_rate, w);
      read_key(t, "max_epochs", tc.max_epochs, w);
      read_key(t, "batch_size", tc.batch_size, w);
      read_key(t, "dropout", tc.dropout, w);
    }
  }
  if (j.contains("evaluate")) {
    const auto& e = j["evaluate"];
    check_keys(e, {"pooling"}, "evaluate.");
    read_key(e, "pooling", c.evaluate.pooling, "evaluate.");
  }
  parse_side(c.generate.preposition_side);
  parse_pooling(c.evaluate.pooling);
  c.probe.train.validate();
  return c;
}

inline ToolkitConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
  return merge_config({}, j);
}

inline BuildConfig build_config(const ToolkitConfig& c) {
  BuildConfig b;
  b.target_size = c.generate.target_size;
  b.min_tokens = c.generate.min_tokens;
  b.max_tokens = c.generate.max_tokens;
  b.eos.sigma = c.generate.eos_sigma;
  b.eos.max_resamples = c.generate.eos_max_resamples;
  b.preposition_side = parse_side(c.generate.preposition_side);
  b.threads = c.generate.threads;
  if (!c.generate.lexicons.empty()) b.lexicons = load_lexicons(c.generate.lexicons);
  return b;
}

inline ProbeConfig probe_config(const ToolkitConfig& c) {
  ProbeConfig p;
  p.feature_dim = c.probe.feature_dim;
  p.folds = c.probe.folds;
  p.nli_dev_fraction = c.probe.nli_dev_fraction;
  p.train = c.probe.train;
  p.train.seed = c.seed;
  return p;
}

}  // namespace funcprobe
