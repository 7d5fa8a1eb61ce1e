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

#include "funcprobe/config.hpp"

#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"

namespace funcprobe {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;  // sentinel: nothing thrown
}

TEST(ConfigTest, ShippedDefaultsFileMatchesTheBuiltInDefaults) {
  const auto shipped = load_config(std::filesystem::path(FUNCPROBE_DATA) / "config" / "defaults.json");
  EXPECT_EQ(to_json(shipped), to_json(ToolkitConfig{}));
}

TEST(ConfigTest, DefaultValues) {
  const ToolkitConfig c;
  EXPECT_EQ(c.generate.max_tokens, 40u);
  EXPECT_DOUBLE_EQ(c.generate.eos_sigma, 2.0);
  EXPECT_EQ(c.generate.preposition_side, "hypothesis");
  EXPECT_EQ(c.annotate.responses_per_item, 3);
  EXPECT_EQ(c.probe.train.hidden, 512u);
  EXPECT_EQ(c.probe.train.batch_size, 32u);
  EXPECT_EQ(c.probe.train.activation, Activation::kTanh);
  EXPECT_EQ(c.probe.folds, 10u);
  EXPECT_EQ(c.probe.feature_dim, 256u);
  EXPECT_EQ(c.evaluate.pooling, "micro");
}

TEST(ConfigTest, PartialOverlayKeepsTheRest) {
  const auto c = merge_config({}, nlohmann::json::parse(
                                      R"({"seed": 9, "generate": {"target_size": 40},
                                          "probe": {"train": {"activation": "relu", "hidden": 64}}})"));
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.generate.target_size, 40u);
  EXPECT_EQ(c.generate.max_tokens, 40u);
  EXPECT_EQ(c.probe.train.activation, Activation::kRelu);
  EXPECT_EQ(c.probe.train.hidden, 64u);
  EXPECT_DOUBLE_EQ(c.probe.train.learning_rate, 1e-3);
}

TEST(ConfigTest, RoundTripThroughJson) {
  ToolkitConfig c;
  c.seed = 5;
  c.simulate.accuracies = {0.7, 0.9};
  c.evaluate.pooling = "macro";
  c.probe.train.dropout = 0.1;
  EXPECT_EQ(to_json(merge_config({}, to_json(c))), to_json(c));
}

TEST(ConfigTest, BadInputIsRejected) {
  EXPECT_EQ(CodeOf([] { merge_config({}, nlohmann::json::parse(R"({"generate": {"target_sise": 3}})")); }),
            ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { merge_config({}, nlohmann::json::parse(R"({"extra": 1})")); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { merge_config({}, nlohmann::json::parse(R"({"seed": "x"})")); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { merge_config({}, nlohmann::json::parse(R"({"evaluate": {"pooling": "mean"}})")); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { merge_config({}, nlohmann::json::parse(R"({"probe": {"train": {"dropout": 1.5}}})")); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { load_config("/nonexistent/config.json"); }), ErrorCode::kIo);
}

TEST(ConfigTest, DerivedModuleConfigs) {
  ToolkitConfig c;
  c.seed = 3;
  c.generate.preposition_side = "premise";
  c.generate.eos_sigma = 1.5;
  const auto b = build_config(c);
  EXPECT_EQ(b.preposition_side, Side::kPremise);
  EXPECT_DOUBLE_EQ(b.eos.sigma, 1.5);
  const auto p = probe_config(c);
  EXPECT_EQ(p.train.seed, 3u);
  EXPECT_EQ(p.folds, 10u);
}

}  // namespace
}  // namespace funcprobe
