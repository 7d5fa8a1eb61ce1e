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
#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "funcprobe/corpus.hpp"
#include "funcprobe/dataset.hpp"
#include "funcprobe/error.hpp"
#include "funcprobe/random.hpp"
#include "funcprobe/text.hpp"
#include "json.hpp"

namespace funcprobe {

enum class Judgment { kNatural, kUnnatural, kNeither };

inline std::string_view judgment_name(Judgment j) {
  switch (j) {
    case Judgment::kNatural: return "natural";
    case Judgment::kUnnatural: return "unnatural";
    case Judgment::kNeither: return "neither";
  }
  return "";
}

inline std::optional<Judgment> parse_judgment(std::string_view name) {
  if (name == "natural") return Judgment::kNatural;
  if (name == "unnatural") return Judgment::kUnnatural;
  if (name == "neither") return Judgment::kNeither;
  return std::nullopt;
}

// A single answer: a 3-way judgment (acceptability), a Likert score, or the
// NLI "does not make sense" flag. Serialized as "natural" | 4 | "nonsense".
struct ResponseValue {
  enum class Kind { kJudgment, kLikert, kNonsense };
  Kind kind = Kind::kJudgment;
  Judgment judgment = Judgment::kNatural;
  int likert = 0;

  static ResponseValue of(Judgment j) { return {Kind::kJudgment, j, 0}; }
  static ResponseValue of_likert(int score) { return {Kind::kLikert, Judgment::kNatural, score}; }
  static ResponseValue nonsense() { return {Kind::kNonsense, Judgment::kNatural, 0}; }

  friend bool operator==(const ResponseValue&, const ResponseValue&) = default;
};

struct AnnotationResponse {
  std::string annotator_id;
  std::string item_id;
  std::string timestamp;
  ResponseValue value;
  friend bool operator==(const AnnotationResponse&, const AnnotationResponse&) = default;
};

enum class DiscardReason { kNoMajority, kNonsenseFlagged, kLabelMismatch };

inline std::string_view discard_reason_name(DiscardReason r) {
  switch (r) {
    case DiscardReason::kNoMajority: return "no-majority";
    case DiscardReason::kNonsenseFlagged: return "nonsense-flagged";
    case DiscardReason::kLabelMismatch: return "label-mismatch";
  }
  return "";
}

struct AggregationResult {
  std::string item_id;
  std::optional<std::string> final_label;
  std::optional<DiscardReason> discard_reason;
  bool unanimous = false;
  int responses_used = 0;

  bool retained() const { return final_label.has_value(); }
};

struct AgreementStats {
  double pairwise_agreement = 0.0;
  double unanimous_fraction = 0.0;
  double individual_accuracy = 0.0;
  std::size_t dataset_size = 0;
};

inline constexpr int kResponsesPerItem = 3;

// ---------------------------------------------------------------------------
// Batching

inline std::size_t batch_size(TaskFormat format) {
  switch (format) {
    case TaskFormat::kSingleSentence: return 5;
    case TaskFormat::kSentencePair: return 3;
    case TaskFormat::kNli: return 6;
  }
  return 5;
}

inline std::vector<std::vector<std::string>> make_batches(std::vector<std::string> item_ids, TaskFormat format,
                                                          Rng& rng) {
  if (item_ids.empty()) throw Error(ErrorCode::kEmptyInput, "no items to batch");
  rng.shuffle(item_ids);
  const std::size_t size = batch_size(format);
  std::vector<std::vector<std::string>> batches;
  for (std::size_t i = 0; i < item_ids.size(); i += size) {
    const auto end = std::min(item_ids.size(), i + size);
    batches.emplace_back(item_ids.begin() + static_cast<std::ptrdiff_t>(i),
                         item_ids.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

// ---------------------------------------------------------------------------
// Labels

inline NliLabel map_likert(int score) {
  if (score < 1 || score > 5) {
    throw Error(ErrorCode::kOutOfRange, "Likert score " + std::to_string(score) + " outside 1-5");
  }
  if (score >= 4) return NliLabel::kEntailment;
  if (score == 3) return NliLabel::kNeutral;
  return NliLabel::kContradiction;
}

// Checks that a response fits the item's task format.
inline void validate_response(const ResponseValue& v, TaskFormat format, const std::string& item_id) {
  if (format == TaskFormat::kNli) {
    if (v.kind == ResponseValue::Kind::kJudgment) {
      throw Error(ErrorCode::kFormatViolation, "NLI items take a Likert score 1-5 or nonsense", item_id);
    }
    if (v.kind == ResponseValue::Kind::kLikert && (v.likert < 1 || v.likert > 5)) {
      throw Error(ErrorCode::kFormatViolation, "Likert value " + std::to_string(v.likert) + " outside 1-5",
                  item_id);
    }
  } else if (v.kind != ResponseValue::Kind::kJudgment) {
    throw Error(ErrorCode::kFormatViolation, "acceptability items take natural, unnatural or neither", item_id);
  }
}

// Label a response contributes to agreement counts: the judgment itself, the
// mapped NLI label for Likert scores, or "nonsense".
inline std::string response_label(const ResponseValue& v) {
  switch (v.kind) {
    case ResponseValue::Kind::kJudgment: return std::string(judgment_name(v.judgment));
    case ResponseValue::Kind::kLikert: return std::string(nli_label_name(map_likert(v.likert)));
    case ResponseValue::Kind::kNonsense: return "nonsense";
  }
  return "";
}

namespace detail {

struct Majority {
  std::string label;
  int count = 0;
};

inline Majority majority_of(const std::vector<std::string>& labels) {
  std::map<std::string, int> counts;
  for (const auto& l : labels) counts[l]++;
  Majority best;
  for (const auto& [label, n] : counts) {
    if (n > best.count) best = {label, n};
  }
  return best;
}

inline void require_count(std::size_t n, const std::string& item_id) {
  if (n != kResponsesPerItem) {
    throw Error(ErrorCode::kWrongResponseCount,
                "expected " + std::to_string(kResponsesPerItem) + " responses, got " + std::to_string(n), item_id);
  }
}

}  // namespace detail

inline AggregationResult aggregate_acceptability(std::span<const AnnotationResponse> responses,
                                                 std::string_view expected_label, const std::string& item_id = {}) {
  detail::require_count(responses.size(), item_id);
  std::vector<std::string> labels;
  for (const auto& r : responses) {
    validate_response(r.value, TaskFormat::kSingleSentence, item_id);
    labels.push_back(std::string(judgment_name(r.value.judgment)));
  }
  const auto m = detail::majority_of(labels);
  AggregationResult out;
  out.item_id = item_id;
  out.responses_used = static_cast<int>(responses.size());
  out.unanimous = m.count == kResponsesPerItem;
  if (m.count * 2 <= kResponsesPerItem) {
    out.discard_reason = DiscardReason::kNoMajority;
  } else if (m.label == "neither" || m.label != expected_label) {
    out.discard_reason = DiscardReason::kLabelMismatch;
  } else {
    out.final_label = m.label;
  }
  return out;
}

inline AggregationResult aggregate_nli(std::span<const AnnotationResponse> responses, const std::string& item_id = {}) {
  detail::require_count(responses.size(), item_id);
  AggregationResult out;
  out.item_id = item_id;
  out.responses_used = static_cast<int>(responses.size());
  std::vector<std::string> labels;
  bool flagged = false;
  for (const auto& r : responses) {
    validate_response(r.value, TaskFormat::kNli, item_id);
    flagged = flagged || r.value.kind == ResponseValue::Kind::kNonsense;
    labels.push_back(response_label(r.value));
  }
  const auto m = detail::majority_of(labels);
  out.unanimous = m.count == kResponsesPerItem;
  if (flagged) {
    out.discard_reason = DiscardReason::kNonsenseFlagged;
  } else if (m.count * 2 <= kResponsesPerItem) {
    out.discard_reason = DiscardReason::kNoMajority;
  } else {
    out.final_label = m.label;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Balancing

struct BalanceResult {
  std::vector<DatasetRecord> records;
  std::vector<std::string> warnings;
};

namespace detail {

// Picks `n` of `pool` (indices into records), unanimous items first and the
// remainder by seeded draw. Returns the chosen indices.
inline std::vector<std::size_t> pick_prioritized(const std::vector<DatasetRecord>& records,
                                                 const std::vector<std::size_t>& pool, std::size_t n, Rng& rng) {
  std::vector<std::size_t> unanimous, rest;
  for (auto i : pool) (records[i].unanimous.value_or(false) ? unanimous : rest).push_back(i);
  std::vector<std::size_t> chosen;
  auto draw = [&](std::vector<std::size_t> from, std::size_t k) {
    if (k < from.size()) {
      rng.shuffle(from);
      from.resize(k);
    }
    chosen.insert(chosen.end(), from.begin(), from.end());
  };
  const std::size_t from_unanimous = std::min(n, unanimous.size());
  draw(unanimous, from_unanimous);
  draw(rest, n - from_unanimous);
  return chosen;
}

}  // namespace detail

// Records must already carry final_label (and unanimous). Acceptability sets
// are cut to equal natural/unnatural counts; NLI records pass through.
// Output keeps input order.
inline BalanceResult balance_dataset(const std::vector<DatasetRecord>& records,
                                     std::optional<std::size_t> target_per_label, Rng& rng) {
  BalanceResult out;
  if (records.empty()) {
    out.warnings.push_back("no retained items; balanced set is empty");
    return out;
  }
  const Task task = records.front().task();
  for (const auto& r : records) {
    if (r.task() != task) throw Error(ErrorCode::kInvalidArgument, "balance_dataset needs a single task", r.id());
    if (!r.final_label) throw Error(ErrorCode::kInvalidArgument, "record has no final label", r.id());
  }
  if (!is_acceptability(task)) {
    out.records = records;
    return out;
  }
  std::vector<std::size_t> natural, unnatural;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (*records[i].final_label == "natural") {
      natural.push_back(i);
    } else if (*records[i].final_label == "unnatural") {
      unnatural.push_back(i);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unexpected label '" + *records[i].final_label + "'", records[i].id());
    }
  }
  std::size_t n = std::min(natural.size(), unnatural.size());
  if (target_per_label) n = std::min(n, *target_per_label);
  const std::size_t wanted = target_per_label.value_or(std::max(natural.size(), unnatural.size()));
  if (n < wanted) {
    out.warnings.push_back("insufficient items for task " + std::string(task_name(task)) + ": " +
                           std::to_string(unnatural.size()) + " unnatural, " + std::to_string(natural.size()) +
                           " natural; emitting " + std::to_string(n) + " per label");
  }
  auto keep = detail::pick_prioritized(records, unnatural, n, rng);
  const auto nat = detail::pick_prioritized(records, natural, n, rng);
  keep.insert(keep.end(), nat.begin(), nat.end());
  std::sort(keep.begin(), keep.end());
  for (auto i : keep) out.records.push_back(records[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Agreement

inline std::unordered_map<std::string, std::vector<AnnotationResponse>> group_by_item(
    const std::vector<AnnotationResponse>& responses) {
  std::unordered_map<std::string, std::vector<AnnotationResponse>> out;
  for (const auto& r : responses) out[r.item_id].push_back(r);
  return out;
}

inline AgreementStats compute_agreement(const std::vector<AnnotationResponse>& responses,
                                        const std::vector<DatasetRecord>& dataset) {
  const auto by_item = group_by_item(responses);
  AgreementStats s;
  s.dataset_size = dataset.size();
  if (dataset.empty()) return s;
  double pairwise = 0.0;
  std::size_t unanimous = 0;
  std::size_t correct = 0;
  std::size_t total = 0;
  for (const auto& record : dataset) {
    const auto it = by_item.find(record.id());
    const std::size_t n = it == by_item.end() ? 0 : it->second.size();
    if (n < kResponsesPerItem) {
      throw Error(ErrorCode::kMissingResponses,
                  "item has " + std::to_string(n) + " of " + std::to_string(kResponsesPerItem) + " responses",
                  record.id());
    }
    detail::require_count(n, record.id());
    const auto final_label = gold_label(record);
    if (!final_label) throw Error(ErrorCode::kMissingMetadata, "item has no final label", record.id());
    std::vector<std::string> labels;
    for (const auto& r : it->second) labels.push_back(response_label(r.value));
    int agreeing = 0;
    for (std::size_t a = 0; a < labels.size(); ++a) {
      for (std::size_t b = a + 1; b < labels.size(); ++b) agreeing += labels[a] == labels[b];
    }
    pairwise += agreeing / 3.0;
    unanimous += agreeing == 3;
    for (const auto& l : labels) correct += l == *final_label;
    total += labels.size();
  }
  s.pairwise_agreement = pairwise / static_cast<double>(dataset.size());
  s.unanimous_fraction = static_cast<double>(unanimous) / static_cast<double>(dataset.size());
  s.individual_accuracy = static_cast<double>(correct) / static_cast<double>(total);
  return s;
}

// "60.2 40.3 80.1 591": percentages to one decimal, then the dataset size.
inline std::string format_agreement_row(const AgreementStats& s) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.1f %.1f %.1f %zu", 100.0 * s.pairwise_agreement, 100.0 * s.unanimous_fraction,
                100.0 * s.individual_accuracy, s.dataset_size);
  return buf;
}

// ---------------------------------------------------------------------------
// Whole-dataset aggregation

struct AggregateOutput {
  std::vector<DatasetRecord> dataset;
  std::vector<AggregationResult> results;  // one per item with enough responses
  std::vector<std::string> pending;        // items still short of responses
  std::vector<std::string> warnings;
};

// Aggregates every item with at least three responses (the first three in log
// order), attaches final labels and balances each task separately.
inline AggregateOutput aggregate_dataset(const std::vector<DatasetRecord>& items,
                                         const std::vector<AnnotationResponse>& responses,
                                         std::optional<std::size_t> target_per_label, std::uint64_t seed) {
  AggregateOutput out;
  const auto by_item = group_by_item(responses);
  std::map<Task, std::vector<DatasetRecord>> retained;
  for (const auto& item : items) {
    const auto it = by_item.find(item.id());
    if (it == by_item.end() || it->second.size() < kResponsesPerItem) {
      out.pending.push_back(item.id());
      continue;
    }
    std::span<const AnnotationResponse> used(it->second.data(), kResponsesPerItem);
    if (it->second.size() > kResponsesPerItem) {
      out.warnings.push_back("item " + item.id() + " has " + std::to_string(it->second.size()) +
                             " responses; using the first " + std::to_string(kResponsesPerItem));
    }
    AggregationResult result;
    if (is_acceptability(item.task())) {
      if (!item.expected_label) throw Error(ErrorCode::kMissingMetadata, "item has no expected label", item.id());
      result = aggregate_acceptability(used, *item.expected_label, item.id());
    } else {
      result = aggregate_nli(used, item.id());
    }
    out.results.push_back(result);
    if (!result.retained()) continue;
    DatasetRecord record = item;
    record.final_label = result.final_label;
    record.unanimous = result.unanimous;
    record.n_responses = result.responses_used;
    retained[item.task()].push_back(std::move(record));
  }
  for (auto& [task, records] : retained) {
    Rng rng(derive_seed(seed, std::string(task_name(task))));
    auto balanced = balance_dataset(records, target_per_label, rng);
    out.dataset.insert(out.dataset.end(), balanced.records.begin(), balanced.records.end());
    out.warnings.insert(out.warnings.end(), balanced.warnings.begin(), balanced.warnings.end());
  }
  if (out.dataset.empty()) out.warnings.push_back("no items were retained");
  return out;
}

// ---------------------------------------------------------------------------
// Response log (newline-delimited JSON, append-only)

inline std::string utc_timestamp(std::chrono::system_clock::time_point t = std::chrono::system_clock::now()) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline nlohmann::json to_json(const ResponseValue& v) {
  switch (v.kind) {
    case ResponseValue::Kind::kJudgment: return std::string(judgment_name(v.judgment));
    case ResponseValue::Kind::kLikert: return v.likert;
    case ResponseValue::Kind::kNonsense: return "nonsense";
  }
  return nullptr;
}

inline ResponseValue response_value_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return ResponseValue::of_likert(j.get<int>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nonsense") return ResponseValue::nonsense();
    if (const auto judgment = parse_judgment(s)) return ResponseValue::of(*judgment);
    throw Error(ErrorCode::kParse, "unknown response value '" + s + "'");
  }
  throw Error(ErrorCode::kParse, "response value must be a string or an integer");
}

inline nlohmann::json to_json(const AnnotationResponse& r) {
  return {{"annotator_id", r.annotator_id}, {"item_id", r.item_id}, {"timestamp", r.timestamp},
          {"value", to_json(r.value)}};
}

inline AnnotationResponse response_from_json(const nlohmann::json& j) {
  try {
    return {j.at("annotator_id").get<std::string>(), j.at("item_id").get<std::string>(),
            j.value("timestamp", std::string{}), response_value_from_json(j.at("value"))};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad response record: ") + e.what());
  }
}

inline void write_response(std::ostream& out, const AnnotationResponse& r) { out << to_json(r).dump() << '\n'; }

struct ResponseLog {
  std::vector<AnnotationResponse> responses;
  std::size_t valid_bytes = 0;  // length of the well-formed prefix
  bool missing_final_newline = false;
  std::vector<std::string> warnings;
};

// A malformed final line (a torn append) is dropped with a warning; a
// malformed line followed by more data is a parse error.
inline ResponseLog read_response_log(std::istream& in) {
  ResponseLog log;
  std::string line;
  std::size_t offset = 0;
  std::size_t line_no = 0;
  std::optional<std::string> bad;
  while (std::getline(in, line)) {
    ++line_no;
    const bool terminated = !in.eof();
    const std::size_t next = offset + line.size() + (terminated ? 1 : 0);
    if (bad) throw Error(ErrorCode::kParse, *bad);
    if (trim(line).empty()) {
      offset = next;
      if (terminated) log.valid_bytes = offset;
      continue;
    }
    try {
      log.responses.push_back(response_from_json(nlohmann::json::parse(line)));
      log.valid_bytes = next;
      log.missing_final_newline = !terminated;
    } catch (const std::exception& e) {
      bad = "response log line " + std::to_string(line_no) + ": " + e.what();
    }
    offset = next;
  }
  if (bad) log.warnings.push_back(*bad + "; dropping the incomplete trailing record");
  return log;
}

inline std::vector<AnnotationResponse> load_responses(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_response_log(in).responses;
}

}  // namespace funcprobe
