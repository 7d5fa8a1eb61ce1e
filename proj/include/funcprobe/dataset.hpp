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

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "funcprobe/error.hpp"
#include "json.hpp"

namespace funcprobe {

enum class Task {
  kWhWords,
  kDefiniteness,
  kCoordination,
  kEndOfSentence,
  kPrepositions,
  kComparatives,
  kQuantification,
  kSpatial,
  kNegation,
};

inline constexpr std::array<Task, 9> kAllTasks = {
    Task::kWhWords,      Task::kDefiniteness,    Task::kCoordination,
    Task::kEndOfSentence, Task::kPrepositions,   Task::kComparatives,
    Task::kQuantification, Task::kSpatial,       Task::kNegation};

// How an item is shown to annotators and models.
enum class TaskFormat { kSingleSentence, kSentencePair, kNli };

inline std::string_view task_name(Task task) {
  switch (task) {
    case Task::kWhWords: return "wh";
    case Task::kDefiniteness: return "definiteness";
    case Task::kCoordination: return "coordination";
    case Task::kEndOfSentence: return "eos";
    case Task::kPrepositions: return "prepositions";
    case Task::kComparatives: return "comparatives";
    case Task::kQuantification: return "quantification";
    case Task::kSpatial: return "spatial";
    case Task::kNegation: return "negation";
  }
  return "";
}

inline std::optional<Task> parse_task(std::string_view name) {
  for (Task t : kAllTasks) {
    if (task_name(t) == name) return t;
  }
  return std::nullopt;
}

inline Task require_task(std::string_view name) {
  if (auto t = parse_task(name)) return *t;
  throw Error(ErrorCode::kInvalidArgument, "unknown task '" + std::string(name) + "'");
}

inline TaskFormat task_format(Task task) {
  switch (task) {
    case Task::kWhWords:
    case Task::kDefiniteness:
    case Task::kCoordination: return TaskFormat::kSingleSentence;
    case Task::kEndOfSentence: return TaskFormat::kSentencePair;
    default: return TaskFormat::kNli;
  }
}

inline bool is_acceptability(Task task) { return task_format(task) != TaskFormat::kNli; }

inline std::string_view task_format_name(TaskFormat format) {
  switch (format) {
    case TaskFormat::kSingleSentence: return "acceptability-single";
    case TaskFormat::kSentencePair: return "acceptability-pair";
    case TaskFormat::kNli: return "nli-likert";
  }
  return "";
}

// Item text. `second` is empty for single-sentence items; it holds the second
// segment for sentence pairs and the hypothesis for NLI.
struct Payload {
  std::string first;
  std::string second;
  friend bool operator==(const Payload&, const Payload&) = default;
};

struct ChangedSpan {
  int segment = 0;  // 0 = first sentence / premise, 1 = second / hypothesis
  std::size_t position = 0;
  std::vector<std::string> old_tokens;
  std::vector<std::string> new_tokens;
  friend bool operator==(const ChangedSpan&, const ChangedSpan&) = default;
};

enum class NegationMutation { kNone, kLexical, kExplicit, kBoth };

inline constexpr std::array<NegationMutation, 4> kNegationMutations = {
    NegationMutation::kNone, NegationMutation::kLexical, NegationMutation::kExplicit,
    NegationMutation::kBoth};

inline std::string_view negation_mutation_name(NegationMutation m) {
  switch (m) {
    case NegationMutation::kNone: return "none";
    case NegationMutation::kLexical: return "lexical";
    case NegationMutation::kExplicit: return "explicit";
    case NegationMutation::kBoth: return "both";
  }
  return "";
}

inline std::optional<NegationMutation> parse_negation_mutation(std::string_view name) {
  for (auto m : kNegationMutations) {
    if (negation_mutation_name(m) == name) return m;
  }
  return std::nullopt;
}

inline bool has_lexical(NegationMutation m) {
  return m == NegationMutation::kLexical || m == NegationMutation::kBoth;
}
inline bool has_explicit(NegationMutation m) {
  return m == NegationMutation::kExplicit || m == NegationMutation::kBoth;
}

struct NegationPattern {
  NegationMutation premise = NegationMutation::kNone;
  NegationMutation hypothesis = NegationMutation::kNone;

  // "p:<premise>/h:<hypothesis>", e.g. "p:none/h:explicit".
  std::string code() const {
    return "p:" + std::string(negation_mutation_name(premise)) + "/h:" +
           std::string(negation_mutation_name(hypothesis));
  }
  friend bool operator==(const NegationPattern&, const NegationPattern&) = default;
};

inline std::array<NegationPattern, 16> all_negation_patterns() {
  std::array<NegationPattern, 16> out{};
  std::size_t i = 0;
  for (auto p : kNegationMutations) {
    for (auto h : kNegationMutations) out[i++] = {p, h};
  }
  return out;
}

struct EosSplit {
  std::size_t correct = 0;  // token count of the first sentence
  std::size_t used = 0;     // split actually emitted
  friend bool operator==(const EosSplit&, const EosSplit&) = default;
};

struct MutationRecord {
  std::string example_id;
  Task task = Task::kWhWords;
  Payload original;
  Payload mutated;
  bool is_mutated = false;
  std::vector<ChangedSpan> changed_spans;
  std::string mutation_kind;
  std::uint64_t rng_seed = 0;
  std::optional<NegationPattern> negation;
  std::optional<EosSplit> eos;
  friend bool operator==(const MutationRecord&, const MutationRecord&) = default;
};

// One line of the dataset interchange format: the item shown to annotators
// (the mutated payload), its heuristic label and full mutation provenance,
// plus aggregation results once annotated.
struct DatasetRecord {
  MutationRecord mutation;
  std::optional<std::string> expected_label;
  std::optional<std::string> final_label;
  std::optional<bool> unanimous;
  std::optional<int> n_responses;

  const std::string& id() const { return mutation.example_id; }
  Task task() const { return mutation.task; }
  const Payload& payload() const { return mutation.mutated; }
  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

// Acceptability label implied by mutation status.
inline std::string expected_acceptability(bool is_mutated) { return is_mutated ? "unnatural" : "natural"; }

namespace detail {

inline nlohmann::json payload_to_json(TaskFormat format, const Payload& p) {
  switch (format) {
    case TaskFormat::kSingleSentence: return {{"text", p.first}};
    case TaskFormat::kSentencePair: return {{"sentences", {p.first, p.second}}};
    case TaskFormat::kNli: return {{"premise", p.first}, {"hypothesis", p.second}};
  }
  return {};
}

inline Payload payload_from_json(TaskFormat format, const nlohmann::json& j) {
  switch (format) {
    case TaskFormat::kSingleSentence: return {j.at("text").get<std::string>(), {}};
    case TaskFormat::kSentencePair: {
      const auto& s = j.at("sentences");
      if (!s.is_array() || s.size() != 2) throw Error(ErrorCode::kParse, "'sentences' must hold two strings");
      return {s[0].get<std::string>(), s[1].get<std::string>()};
    }
    case TaskFormat::kNli:
      return {j.at("premise").get<std::string>(), j.at("hypothesis").get<std::string>()};
  }
  return {};
}

}  // namespace detail

inline nlohmann::json to_json(const DatasetRecord& r) {
  const auto format = task_format(r.task());
  const auto& m = r.mutation;
  nlohmann::json j = detail::payload_to_json(format, m.mutated);
  j["id"] = m.example_id;
  j["task"] = task_name(m.task);
  j["expected_label"] = r.expected_label ? nlohmann::json(*r.expected_label) : nlohmann::json(nullptr);

  nlohmann::json spans = nlohmann::json::array();
  for (const auto& s : m.changed_spans) {
    spans.push_back({{"segment", s.segment}, {"position", s.position}, {"old", s.old_tokens},
                     {"new", s.new_tokens}});
  }
  nlohmann::json meta = {{"is_mutated", m.is_mutated},
                         {"kind", m.mutation_kind},
                         {"changed_spans", spans},
                         {"seed", m.rng_seed},
                         {"original", detail::payload_to_json(format, m.original)}};
  if (m.negation) {
    meta["pattern"] = {{"code", m.negation->code()},
                       {"premise", negation_mutation_name(m.negation->premise)},
                       {"hypothesis", negation_mutation_name(m.negation->hypothesis)}};
  }
  if (m.eos) meta["split"] = {{"correct", m.eos->correct}, {"used", m.eos->used}};
  j["mutation"] = std::move(meta);

  if (r.final_label) j["final_label"] = *r.final_label;
  if (r.unanimous) j["unanimous"] = *r.unanimous;
  if (r.n_responses) j["n_responses"] = *r.n_responses;
  return j;
}

inline DatasetRecord dataset_record_from_json(const nlohmann::json& j) {
  DatasetRecord r;
  auto& m = r.mutation;
  m.example_id = j.at("id").get<std::string>();
  m.task = require_task(j.at("task").get<std::string>());
  const auto format = task_format(m.task);
  m.mutated = detail::payload_from_json(format, j);
  if (j.contains("expected_label") && !j["expected_label"].is_null()) {
    r.expected_label = j["expected_label"].get<std::string>();
  }
  if (j.contains("mutation")) {
    const auto& meta = j["mutation"];
    m.is_mutated = meta.value("is_mutated", false);
    m.mutation_kind = meta.value("kind", "");
    m.rng_seed = meta.value("seed", std::uint64_t{0});
    m.original = meta.contains("original") ? detail::payload_from_json(format, meta["original"]) : m.mutated;
    for (const auto& s : meta.value("changed_spans", nlohmann::json::array())) {
      m.changed_spans.push_back({s.at("segment").get<int>(), s.at("position").get<std::size_t>(),
                                 s.at("old").get<std::vector<std::string>>(),
                                 s.at("new").get<std::vector<std::string>>()});
    }
    if (meta.contains("pattern")) {
      const auto& p = meta["pattern"];
      const auto pm = parse_negation_mutation(p.at("premise").get<std::string>());
      const auto hm = parse_negation_mutation(p.at("hypothesis").get<std::string>());
      if (!pm || !hm) throw Error(ErrorCode::kParse, "bad negation pattern", m.example_id);
      m.negation = NegationPattern{*pm, *hm};
    }
    if (meta.contains("split")) {
      m.eos = EosSplit{meta["split"].at("correct").get<std::size_t>(),
                       meta["split"].at("used").get<std::size_t>()};
    }
  } else {
    m.original = m.mutated;
  }
  if (j.contains("final_label")) r.final_label = j["final_label"].get<std::string>();
  if (j.contains("unanimous")) r.unanimous = j["unanimous"].get<bool>();
  if (j.contains("n_responses")) r.n_responses = j["n_responses"].get<int>();
  return r;
}

// Newline-delimited JSON; keys are emitted in sorted order, so equal datasets
// serialize to identical bytes.
inline void write_dataset(std::ostream& out, const std::vector<DatasetRecord>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

inline void save_dataset(const std::vector<DatasetRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_dataset(out, records);
}

inline std::vector<DatasetRecord> read_dataset(std::istream& in) {
  std::vector<DatasetRecord> records;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(dataset_record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, "dataset line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

inline std::vector<DatasetRecord> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_dataset(in);
}

// Label used for scoring: the annotated label when present, else the
// heuristic one.
inline std::optional<std::string> gold_label(const DatasetRecord& r) {
  return r.final_label ? r.final_label : r.expected_label;
}

}  // namespace funcprobe
