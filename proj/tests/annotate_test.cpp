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

#include "funcprobe/annotate.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "gtest/gtest.h"

namespace funcprobe {
namespace {

using V = ResponseValue;

std::vector<AnnotationResponse> Responses(const std::string& item, const std::vector<V>& values) {
  std::vector<AnnotationResponse> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({"ann" + std::to_string(i), item, "2026-01-01T00:00:00Z", values[i]});
  }
  return out;
}

V N() { return V::of(Judgment::kNatural); }
V U() { return V::of(Judgment::kUnnatural); }
V X() { return V::of(Judgment::kNeither); }

DatasetRecord Item(const std::string& id, Task task, bool mutated) {
  DatasetRecord r;
  r.mutation.example_id = id;
  r.mutation.task = task;
  r.mutation.is_mutated = mutated;
  r.mutation.mutated = {"text " + id, task_format(task) == TaskFormat::kSingleSentence ? "" : "second"};
  r.mutation.original = r.mutation.mutated;
  if (is_acceptability(task)) r.expected_label = expected_acceptability(mutated);
  return r;
}

TEST(BatchTest, SizesFollowTheTaskFormat) {
  std::vector<std::string> ids(12);
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = "i" + std::to_string(i);
  Rng rng(1);
  const auto single = make_batches(ids, TaskFormat::kSingleSentence, rng);
  ASSERT_EQ(single.size(), 3u);
  EXPECT_EQ(single[0].size(), 5u);
  EXPECT_EQ(single[1].size(), 5u);
  EXPECT_EQ(single[2].size(), 2u);
  EXPECT_EQ(make_batches(ids, TaskFormat::kSentencePair, rng).size(), 4u);
  const auto nli = make_batches({ids.begin(), ids.begin() + 6}, TaskFormat::kNli, rng);
  ASSERT_EQ(nli.size(), 1u);
  EXPECT_EQ(nli[0].size(), 6u);
}

TEST(BatchTest, ShuffledPartitionAndDeterministic) {
  std::vector<std::string> ids(40);
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = "i" + std::to_string(i);
  Rng a(9), b(9), c(10);
  const auto x = make_batches(ids, TaskFormat::kSingleSentence, a);
  EXPECT_EQ(x, make_batches(ids, TaskFormat::kSingleSentence, b));
  EXPECT_NE(x, make_batches(ids, TaskFormat::kSingleSentence, c));
  std::multiset<std::string> seen;
  for (const auto& batch : x) seen.insert(batch.begin(), batch.end());
  EXPECT_EQ(seen, std::multiset<std::string>(ids.begin(), ids.end()));
  EXPECT_NE(x[0], std::vector<std::string>(ids.begin(), ids.begin() + 5));
}

TEST(BatchTest, EmptyInputIsRejected) {
  Rng rng(1);
  EXPECT_THROW(make_batches({}, TaskFormat::kNli, rng), Error);
}

TEST(LikertTest, Mapping) {
  EXPECT_EQ(map_likert(5), NliLabel::kEntailment);
  EXPECT_EQ(map_likert(4), NliLabel::kEntailment);
  EXPECT_EQ(map_likert(3), NliLabel::kNeutral);
  EXPECT_EQ(map_likert(2), NliLabel::kContradiction);
  EXPECT_EQ(map_likert(1), NliLabel::kContradiction);
  for (int bad : {0, 6, -1}) {
    try {
      map_likert(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
    }
  }
}

TEST(AggregateAcceptabilityTest, Examples) {
  auto r = aggregate_acceptability(Responses("a", {U(), U(), N()}), "unnatural", "a");
  EXPECT_EQ(r.final_label, "unnatural");
  EXPECT_FALSE(r.unanimous);
  EXPECT_EQ(r.responses_used, 3);

  r = aggregate_acceptability(Responses("a", {N(), U(), X()}), "natural");
  EXPECT_EQ(r.discard_reason, DiscardReason::kNoMajority);

  r = aggregate_acceptability(Responses("a", {N(), N(), N()}), "unnatural");
  EXPECT_EQ(r.discard_reason, DiscardReason::kLabelMismatch);
  EXPECT_FALSE(r.final_label.has_value());

  r = aggregate_acceptability(Responses("a", {X(), X(), N()}), "natural");
  EXPECT_EQ(r.discard_reason, DiscardReason::kLabelMismatch);
}

TEST(AggregateAcceptabilityTest, WrongCountAndWrongValueType) {
  try {
    aggregate_acceptability(Responses("a", {N(), N()}), "natural", "a");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWrongResponseCount);
    EXPECT_EQ(e.item_id(), "a");
  }
  try {
    aggregate_acceptability(Responses("a", {N(), N(), V::of_likert(4)}), "natural", "a");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormatViolation);
  }
}

// Oracle: sort the three judgments; a majority exists iff the middle element
// equals one of its neighbours, and the majority is the middle element.
TEST(AggregateAcceptabilityTest, ExhaustiveAgainstSortedTripleOracle) {
  const std::array<Judgment, 3> all = {Judgment::kNatural, Judgment::kUnnatural, Judgment::kNeither};
  int checked = 0;
  for (auto a : all) {
    for (auto b : all) {
      for (auto c : all) {
        for (std::string expected : {"natural", "unnatural"}) {
          std::array<int, 3> s = {static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)};
          std::sort(s.begin(), s.end());
          const bool has_majority = s[1] == s[0] || s[1] == s[2];
          const auto majority = static_cast<Judgment>(s[1]);
          const auto r = aggregate_acceptability(Responses("x", {V::of(a), V::of(b), V::of(c)}), expected);
          EXPECT_NE(r.final_label.has_value(), r.discard_reason.has_value());
          EXPECT_EQ(r.unanimous, s[0] == s[2]);
          if (!has_majority) {
            EXPECT_EQ(r.discard_reason, DiscardReason::kNoMajority);
          } else if (judgment_name(majority) != expected) {
            EXPECT_EQ(r.discard_reason, DiscardReason::kLabelMismatch);
          } else {
            EXPECT_EQ(r.final_label, expected);
          }
          ++checked;
        }
      }
    }
  }
  EXPECT_EQ(checked, 54);
}

TEST(AggregateNliTest, Examples) {
  auto r = aggregate_nli(Responses("n", {V::of_likert(5), V::of_likert(4), V::of_likert(2)}));
  EXPECT_EQ(r.final_label, "entailment");
  EXPECT_FALSE(r.unanimous);
  r = aggregate_nli(Responses("n", {V::of_likert(5), V::nonsense(), V::of_likert(1)}));
  EXPECT_EQ(r.discard_reason, DiscardReason::kNonsenseFlagged);
  r = aggregate_nli(Responses("n", {V::of_likert(5), V::of_likert(3), V::of_likert(1)}));
  EXPECT_EQ(r.discard_reason, DiscardReason::kNoMajority);
  r = aggregate_nli(Responses("n", {V::of_likert(1), V::of_likert(2), V::of_likert(1)}));
  EXPECT_EQ(r.final_label, "contradiction");
  EXPECT_TRUE(r.unanimous);
}

TEST(AggregateNliTest, LikertSevenIsAFormatViolationNamingTheItem) {
  try {
    aggregate_nli(Responses("n7", {V::of_likert(7), V::of_likert(4), V::of_likert(4)}), "n7");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormatViolation);
    EXPECT_EQ(e.item_id(), "n7");
  }
}

// Oracle over all 6^3 value triples: a direct table of the mapping plus
// explicit counting.
TEST(AggregateNliTest, ExhaustiveAgainstCountingOracle) {
  const char* table[] = {"", "contradiction", "contradiction", "neutral", "entailment", "entailment"};
  int checked = 0;
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; b <= 5; ++b) {
      for (int c = 0; c <= 5; ++c) {
        auto value = [](int x) { return x == 0 ? V::nonsense() : V::of_likert(x); };
        const auto r = aggregate_nli(Responses("x", {value(a), value(b), value(c)}));
        EXPECT_NE(r.final_label.has_value(), r.discard_reason.has_value());
        if (a == 0 || b == 0 || c == 0) {
          EXPECT_EQ(r.discard_reason, DiscardReason::kNonsenseFlagged);
        } else {
          const std::string la = table[a], lb = table[b], lc = table[c];
          std::string expected;
          if (la == lb || la == lc) expected = la;
          else if (lb == lc) expected = lb;
          if (expected.empty()) {
            EXPECT_EQ(r.discard_reason, DiscardReason::kNoMajority);
          } else {
            EXPECT_EQ(r.final_label, expected);
            EXPECT_EQ(r.unanimous, la == lb && lb == lc);
          }
        }
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 216);
}

TEST(AggregateTest, OrderInvariant) {
  std::vector<std::vector<V>> cases = {{U(), N(), U()}, {X(), N(), N()}, {N(), U(), X()}};
  for (auto values : cases) {
    std::sort(values.begin(), values.end(), [](const V& x, const V& y) { return x.judgment < y.judgment; });
    const auto first = aggregate_acceptability(Responses("x", values), "natural");
    do {
      const auto r = aggregate_acceptability(Responses("x", values), "natural");
      EXPECT_EQ(r.final_label, first.final_label);
      EXPECT_EQ(r.discard_reason, first.discard_reason);
      EXPECT_EQ(r.unanimous, first.unanimous);
    } while (std::next_permutation(values.begin(), values.end(),
                                   [](const V& x, const V& y) { return x.judgment < y.judgment; }));
  }
  std::vector<int> likert = {1, 3, 4};
  const auto first = aggregate_nli(Responses("x", {V::of_likert(1), V::of_likert(3), V::of_likert(4)}));
  do {
    const auto r = aggregate_nli(
        Responses("x", {V::of_likert(likert[0]), V::of_likert(likert[1]), V::of_likert(likert[2])}));
    EXPECT_EQ(r.discard_reason, first.discard_reason);
  } while (std::next_permutation(likert.begin(), likert.end()));
}

std::vector<DatasetRecord> Labeled(std::size_t unnatural, std::size_t natural, std::size_t natural_unanimous) {
  std::vector<DatasetRecord> out;
  for (std::size_t i = 0; i < unnatural; ++i) {
    auto r = Item("u" + std::to_string(i), Task::kWhWords, true);
    r.final_label = "unnatural";
    r.unanimous = i % 2 == 0;
    out.push_back(r);
  }
  for (std::size_t i = 0; i < natural; ++i) {
    auto r = Item("n" + std::to_string(i), Task::kWhWords, false);
    r.final_label = "natural";
    r.unanimous = i < natural_unanimous;
    out.push_back(r);
  }
  Rng rng(77);
  rng.shuffle(out);
  return out;
}

std::map<std::string, int> LabelCounts(const std::vector<DatasetRecord>& records) {
  std::map<std::string, int> counts;
  for (const auto& r : records) counts[*r.final_label]++;
  return counts;
}

TEST(BalanceTest, PrioritizesUnanimousNaturals) {
  Rng rng(5);
  const auto out = balance_dataset(Labeled(250, 400, 300), 250, rng);
  EXPECT_TRUE(out.warnings.empty());
  const auto counts = LabelCounts(out.records);
  EXPECT_EQ(counts.at("unnatural"), 250);
  EXPECT_EQ(counts.at("natural"), 250);
  for (const auto& r : out.records) {
    if (r.final_label == "natural") EXPECT_TRUE(*r.unanimous) << r.id();
  }
}

TEST(BalanceTest, FillsWithSeededDrawAfterUnanimous) {
  const auto input = Labeled(100, 300, 40);
  Rng a(5), b(5), c(6);
  const auto x = balance_dataset(input, 100, a);
  EXPECT_EQ(x.records, balance_dataset(input, 100, b).records);
  EXPECT_NE(x.records, balance_dataset(input, 100, c).records);
  int unanimous_naturals = 0;
  for (const auto& r : x.records) unanimous_naturals += r.final_label == "natural" && *r.unanimous;
  EXPECT_EQ(unanimous_naturals, 40);
}

TEST(BalanceTest, LimitedByTheMinorityWithWarning) {
  Rng rng(5);
  auto out = balance_dataset(Labeled(10, 5, 0), std::nullopt, rng);
  EXPECT_EQ(LabelCounts(out.records), (std::map<std::string, int>{{"natural", 5}, {"unnatural", 5}}));
  EXPECT_EQ(out.warnings.size(), 1u);

  out = balance_dataset(Labeled(0, 20, 5), 250, rng);
  EXPECT_TRUE(out.records.empty());
  EXPECT_EQ(out.warnings.size(), 1u);
}

TEST(BalanceTest, CountsAlwaysEqualAndOrderPreserved) {
  for (std::size_t u : {0u, 1u, 7u, 30u}) {
    for (std::size_t n : {0u, 3u, 30u}) {
      if (u + n == 0) continue;
      Rng rng(u * 100 + n);
      const auto input = Labeled(u, n, n / 2);
      const auto out = balance_dataset(input, std::nullopt, rng);
      const auto counts = LabelCounts(out.records);
      EXPECT_EQ(counts.count("natural") ? counts.at("natural") : 0,
                counts.count("unnatural") ? counts.at("unnatural") : 0);
      std::size_t pos = 0;
      for (const auto& r : out.records) {
        while (pos < input.size() && input[pos].id() != r.id()) ++pos;
        EXPECT_LT(pos, input.size()) << "order changed";
      }
    }
  }
}

TEST(BalanceTest, NliPassesThrough) {
  std::vector<DatasetRecord> records;
  for (int i = 0; i < 7; ++i) {
    auto r = Item("q" + std::to_string(i), Task::kQuantification, i % 2);
    r.final_label = i % 3 == 0 ? "entailment" : "contradiction";
    records.push_back(r);
  }
  Rng rng(1);
  const auto out = balance_dataset(records, 2, rng);
  EXPECT_EQ(out.records, records);
}

TEST(AgreementTest, AllIdentical) {
  std::vector<AnnotationResponse> responses;
  std::vector<DatasetRecord> dataset;
  for (int i = 0; i < 4; ++i) {
    auto r = Item("i" + std::to_string(i), Task::kWhWords, false);
    r.final_label = "natural";
    dataset.push_back(r);
    const auto rs = Responses(r.id(), {N(), N(), N()});
    responses.insert(responses.end(), rs.begin(), rs.end());
  }
  const auto s = compute_agreement(responses, dataset);
  EXPECT_DOUBLE_EQ(s.pairwise_agreement, 1.0);
  EXPECT_DOUBLE_EQ(s.unanimous_fraction, 1.0);
  EXPECT_DOUBLE_EQ(s.individual_accuracy, 1.0);
  EXPECT_EQ(s.dataset_size, 4u);
}

TEST(AgreementTest, SingleSplitNliItem) {
  auto r = Item("n", Task::kNegation, true);
  r.final_label = "entailment";
  const auto s = compute_agreement(Responses("n", {V::of_likert(5), V::of_likert(4), V::of_likert(1)}), {r});
  EXPECT_DOUBLE_EQ(s.pairwise_agreement, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.unanimous_fraction, 0.0);
  EXPECT_DOUBLE_EQ(s.individual_accuracy, 2.0 / 3.0);
}

TEST(AgreementTest, MissingResponsesNameTheItem) {
  auto r = Item("lonely", Task::kWhWords, false);
  r.final_label = "natural";
  try {
    compute_agreement(Responses("lonely", {N(), N()}), {r});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingResponses);
    EXPECT_EQ(e.item_id(), "lonely");
  }
}

// 238 unanimous items and 353 with a 2-1 split give the negation row.
TEST(AgreementTest, RowFormat) {
  std::vector<AnnotationResponse> responses;
  std::vector<DatasetRecord> dataset;
  for (int i = 0; i < 591; ++i) {
    auto r = Item("neg" + std::to_string(i), Task::kNegation, false);
    r.final_label = "contradiction";
    dataset.push_back(r);
    const auto rs = Responses(r.id(), {V::of_likert(1), V::of_likert(2), V::of_likert(i < 238 ? 1 : 3)});
    responses.insert(responses.end(), rs.begin(), rs.end());
  }
  const auto s = compute_agreement(responses, dataset);
  EXPECT_EQ(format_agreement_row(s), "60.2 40.3 80.1 591");
}

TEST(AgreementTest, RetainedItemsMeetTheAccuracyFloor) {
  Rng rng(3);
  const std::array<V, 3> values = {N(), U(), X()};
  for (int trial = 0; trial < 200; ++trial) {
    const auto rs = Responses("t", {values[rng.uniform_index(3)], values[rng.uniform_index(3)],
                                    values[rng.uniform_index(3)]});
    const auto result = aggregate_acceptability(rs, "natural", "t");
    if (!result.retained()) continue;
    auto r = Item("t", Task::kWhWords, false);
    r.final_label = result.final_label;
    const auto s = compute_agreement(rs, {r});
    EXPECT_GE(s.individual_accuracy, 2.0 / 3.0 - 1e-12);
    if (result.unanimous) {
      EXPECT_DOUBLE_EQ(s.individual_accuracy, 1.0);
      EXPECT_DOUBLE_EQ(s.pairwise_agreement, 1.0);
    }
  }
}

TEST(AggregateDatasetTest, EndToEnd) {
  std::vector<DatasetRecord> items;
  std::vector<AnnotationResponse> responses;
  auto add = [&](const DatasetRecord& item, const std::vector<V>& values) {
    items.push_back(item);
    const auto rs = Responses(item.id(), values);
    responses.insert(responses.end(), rs.begin(), rs.end());
  };
  add(Item("m0", Task::kWhWords, true), {U(), U(), U()});
  add(Item("m1", Task::kWhWords, true), {U(), U(), N()});
  add(Item("m2", Task::kWhWords, true), {N(), N(), U()});  // label mismatch
  add(Item("u0", Task::kWhWords, false), {N(), N(), N()});
  add(Item("u1", Task::kWhWords, false), {N(), N(), U()});
  add(Item("u2", Task::kWhWords, false), {N(), N(), N()});
  add(Item("q0", Task::kQuantification, true), {V::of_likert(1), V::of_likert(1), V::nonsense()});
  add(Item("q1", Task::kQuantification, true), {V::of_likert(1), V::of_likert(2), V::of_likert(4)});
  items.push_back(Item("pending", Task::kWhWords, false));

  const auto out = aggregate_dataset(items, responses, std::nullopt, 1);
  EXPECT_EQ(out.pending, std::vector<std::string>{"pending"});
  EXPECT_EQ(out.results.size(), 8u);
  std::set<std::string> ids;
  for (const auto& r : out.dataset) {
    ids.insert(r.id());
    EXPECT_EQ(r.n_responses, 3);
  }
  EXPECT_EQ(ids, (std::set<std::string>{"m0", "m1", "u0", "u2", "q1"}));
  for (const auto& res : out.results) {
    if (!res.retained()) EXPECT_EQ(ids.count(res.item_id), 0u);
  }
  const auto agreement = compute_agreement(responses, out.dataset);
  EXPECT_EQ(agreement.dataset_size, 5u);
}

TEST(ResponseLogTest, RoundTripAndTruncation) {
  std::vector<AnnotationResponse> rs = Responses("a", {N(), V::of_likert(3), V::nonsense()});
  std::stringstream buffer;
  for (const auto& r : rs) write_response(buffer, r);
  const std::string good = buffer.str();
  {
    std::istringstream in(good);
    const auto log = read_response_log(in);
    EXPECT_EQ(log.responses, rs);
    EXPECT_EQ(log.valid_bytes, good.size());
    EXPECT_TRUE(log.warnings.empty());
  }
  {
    std::istringstream in(good + "{\"annotator_id\":\"x\",\"ite");
    const auto log = read_response_log(in);
    EXPECT_EQ(log.responses, rs);
    EXPECT_EQ(log.valid_bytes, good.size());
    EXPECT_EQ(log.warnings.size(), 1u);
  }
  {
    std::istringstream in("garbage\n" + good);
    EXPECT_THROW(read_response_log(in), Error);
  }
  {
    std::istringstream in(good.substr(0, good.size() - 1));
    const auto log = read_response_log(in);
    EXPECT_EQ(log.responses.size(), 3u);
    EXPECT_TRUE(log.missing_final_newline);
  }
}

}  // namespace
}  // namespace funcprobe
