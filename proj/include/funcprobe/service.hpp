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
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "funcprobe/annotate.hpp"
#include "funcprobe/dataset.hpp"
#include "funcprobe/error.hpp"
#include "funcprobe/random.hpp"
#include "json.hpp"

namespace funcprobe {

inline constexpr std::string_view kApiSchema = "funcprobe/v1";

struct ProjectConfig {
  std::string project_id;
  Task task = Task::kWhWords;
  std::size_t batch_size = 5;
  int required_responses = kResponsesPerItem;
  bool distinct_annotators = true;
  std::string created_at;
};

struct Assignment {
  std::string assignment_id;
  std::string project_id;
  std::string annotator_id;
  std::vector<std::string> item_ids;
  std::string issued_at;
  bool completed = false;
};

struct SubmittedResponse {
  std::string item_id;
  ResponseValue value;
};

struct LabelProgress {
  std::size_t total = 0;
  std::size_t complete = 0;
};

struct Progress {
  std::size_t total = 0;
  std::size_t complete = 0;   // at least the required number of responses
  std::size_t in_flight = 0;  // some responses or held by an open assignment
  std::size_t untouched = 0;
  std::size_t responses = 0;
  std::map<std::string, LabelProgress> by_expected_label;  // acceptability only
};

namespace detail {

struct JsonlRecovery {
  std::vector<nlohmann::json> records;
  std::vector<std::string> warnings;
};

// Reads a newline-delimited JSON file. A malformed last line is cut off the
// file with a warning; a missing final newline is restored.
inline JsonlRecovery recover_jsonl(const std::filesystem::path& path) {
  JsonlRecovery out;
  if (!std::filesystem::exists(path)) return out;
  std::ifstream in(path, std::ios::binary);
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  std::size_t pos = 0;
  std::size_t valid = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    const auto nl = content.find('\n', pos);
    const bool last = nl == std::string::npos;
    const std::string line = content.substr(pos, last ? std::string::npos : nl - pos);
    const std::size_t next = last ? content.size() : nl + 1;
    ++line_no;
    if (!trim(line).empty()) {
      try {
        out.records.push_back(nlohmann::json::parse(line));
      } catch (const nlohmann::json::exception&) {
        if (!last && trim(std::string_view(content).substr(next)).size() > 0) {
          throw Error(ErrorCode::kParse, path.string() + ": line " + std::to_string(line_no) + " is malformed");
        }
        out.warnings.push_back(path.string() + ": dropped incomplete record on line " + std::to_string(line_no));
        break;
      }
    }
    valid = next;
    pos = next;
  }
  if (valid < content.size()) {
    std::filesystem::resize_file(path, valid);
  } else if (!content.empty() && content.back() != '\n') {
    std::ofstream(path, std::ios::binary | std::ios::app) << '\n';
  }
  return out;
}

inline void append_lines(const std::filesystem::path& path, const std::string& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + path.string());
  out << lines;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write to " + path.string() + " failed");
}

inline bool valid_project_id(std::string_view id) {
  return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
  });
}

}  // namespace detail

inline nlohmann::json to_json(const ProjectConfig& p) {
  return {{"schema", kApiSchema},
          {"project_id", p.project_id},
          {"task", task_name(p.task)},
          {"batch_size", p.batch_size},
          {"required_responses", p.required_responses},
          {"distinct_annotators", p.distinct_annotators},
          {"created_at", p.created_at}};
}

inline nlohmann::json to_json(const Assignment& a) {
  return {{"assignment_id", a.assignment_id}, {"project_id", a.project_id}, {"annotator_id", a.annotator_id},
          {"item_ids", a.item_ids},           {"issued_at", a.issued_at},   {"completed", a.completed}};
}

inline nlohmann::json to_json(const Progress& p) {
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [label, lp] : p.by_expected_label) labels[label] = {{"total", lp.total}, {"complete", lp.complete}};
  return {{"total", p.total},         {"complete", p.complete},   {"in_flight", p.in_flight},
          {"untouched", p.untouched}, {"responses", p.responses}, {"by_expected_label", labels}};
}

struct StoreOptions {
  std::function<std::string()> clock = [] { return utc_timestamp(); };
  std::uint64_t seed = 0;  // item ordering for batches
};

// Per-project directory store: project.json, items.jsonl, responses.jsonl
// and assignments.jsonl. Logs are append-only; each project's writes go
// through one mutex.
class ProjectStore {
 public:
  explicit ProjectStore(std::filesystem::path root, StoreOptions options = {})
      : root_(std::move(root)), options_(std::move(options)) {
    std::filesystem::create_directories(root_);
    for (const auto& entry : std::filesystem::directory_iterator(root_)) {
      if (entry.is_directory() && std::filesystem::exists(entry.path() / "project.json")) load(entry.path());
    }
  }

  const std::vector<std::string>& warnings() const { return warnings_; }

  ProjectConfig create_project(const std::string& project_id, const std::vector<DatasetRecord>& items,
                               int required_responses = kResponsesPerItem, bool distinct_annotators = true) {
    if (!detail::valid_project_id(project_id)) {
      throw Error(ErrorCode::kInvalidArgument, "project id must be 1-64 characters of [A-Za-z0-9_-]");
    }
    if (items.empty()) throw Error(ErrorCode::kEmptyInput, "project has no items");
    if (required_responses < 1) throw Error(ErrorCode::kInvalidArgument, "required responses must be at least 1");
    std::set<std::string> ids;
    for (const auto& r : items) {
      if (r.task() != items.front().task()) throw Error(ErrorCode::kTaskMismatch, "items mix tasks", r.id());
      if (!ids.insert(r.id()).second) throw Error(ErrorCode::kDuplicateId, "duplicate item", r.id());
    }
    std::unique_lock lock(projects_mutex_);
    if (projects_.count(project_id)) throw Error(ErrorCode::kConflict, "project '" + project_id + "' exists");
    auto state = std::make_unique<State>();
    state->dir = root_ / project_id;
    state->config = {project_id, items.front().task(), batch_size(task_format(items.front().task())),
                     required_responses, distinct_annotators, options_.clock()};
    state->items = items;
    index_items(*state);
    std::filesystem::create_directories(state->dir);
    save_dataset(items, state->dir / "items.jsonl");
    std::ofstream(state->dir / "project.json", std::ios::binary) << to_json(state->config).dump(2) << '\n';
    const auto config = state->config;
    projects_.emplace(project_id, std::move(state));
    return config;
  }

  std::vector<ProjectConfig> list_projects() const {
    std::shared_lock lock(projects_mutex_);
    std::vector<ProjectConfig> out;
    for (const auto& [id, state] : projects_) out.push_back(state->config);
    return out;
  }

  ProjectConfig project(const std::string& project_id) const { return find(project_id).config; }

  std::vector<DatasetRecord> items(const std::string& project_id) const { return find(project_id).items; }

  // Snapshot of the response log in append order.
  std::vector<AnnotationResponse> responses(const std::string& project_id) const {
    const auto& s = find(project_id);
    std::lock_guard lock(s.mutex);
    return s.responses;
  }

  std::optional<Assignment> next_batch(const std::string& project_id, const std::string& annotator_id) {
    if (annotator_id.empty()) throw Error(ErrorCode::kInvalidArgument, "annotator id is required");
    auto& s = find(project_id);
    std::lock_guard lock(s.mutex);
    for (const auto& id : s.open_by_annotator[annotator_id]) return s.assignments.at(id);

    const auto& answered = s.answered[annotator_id];
    const auto& held = s.assigned_to[annotator_id];
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      const auto& id = s.items[i].id();
      if (s.response_count[id] >= s.config.required_responses || answered.count(id)) continue;
      if (s.config.distinct_annotators && held.count(id)) continue;
      eligible.push_back(i);
    }
    if (eligible.empty()) return std::nullopt;
    // Least-covered items first; ties in a fixed per-project shuffled order.
    std::stable_sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t b) {
      const auto& ia = s.items[a].id();
      const auto& ib = s.items[b].id();
      const int ca = s.response_count[ia] + s.holds[ia];
      const int cb = s.response_count[ib] + s.holds[ib];
      if (ca != cb) return ca < cb;
      return s.rank[a] < s.rank[b];
    });
    eligible.resize(std::min(eligible.size(), s.config.batch_size));

    Assignment a;
    a.assignment_id = project_id + "-a" + std::to_string(s.assignments.size() + 1);
    a.project_id = project_id;
    a.annotator_id = annotator_id;
    a.issued_at = options_.clock();
    for (auto i : eligible) a.item_ids.push_back(s.items[i].id());
    Rng order(derive_seed(options_.seed, a.assignment_id));
    order.shuffle(a.item_ids);

    nlohmann::json event = to_json(a);
    event.erase("completed");
    event["event"] = "issued";
    detail::append_lines(s.dir / "assignments.jsonl", event.dump() + "\n");
    apply_issued(s, a);
    return a;
  }

  struct Ack {
    std::string assignment_id;
    std::size_t accepted = 0;
  };

  Ack submit_responses(const std::string& project_id, const std::string& assignment_id,
                       const std::vector<SubmittedResponse>& submitted) {
    auto& s = find(project_id);
    std::lock_guard lock(s.mutex);
    const auto it = s.assignments.find(assignment_id);
    if (it == s.assignments.end()) {
      throw Error(ErrorCode::kUnknownAssignment, "no assignment '" + assignment_id + "' in project " + project_id);
    }
    Assignment& a = it->second;
    if (a.completed) throw Error(ErrorCode::kConflict, "assignment " + assignment_id + " was already submitted");
    const std::set<std::string> expected(a.item_ids.begin(), a.item_ids.end());
    std::set<std::string> seen;
    const TaskFormat format = task_format(s.config.task);
    for (const auto& r : submitted) {
      if (!expected.count(r.item_id)) {
        throw Error(ErrorCode::kFormatViolation, "item is not part of assignment " + assignment_id, r.item_id);
      }
      if (!seen.insert(r.item_id).second) throw Error(ErrorCode::kFormatViolation, "item answered twice", r.item_id);
      validate_response(r.value, format, r.item_id);
      if (s.config.distinct_annotators && s.answered[a.annotator_id].count(r.item_id)) {
        throw Error(ErrorCode::kConflict, "annotator already answered this item", r.item_id);
      }
    }
    for (const auto& id : a.item_ids) {
      if (!seen.count(id)) throw Error(ErrorCode::kFormatViolation, "missing response", id);
    }
    const std::string now = options_.clock();
    std::string lines;
    std::vector<AnnotationResponse> records;
    for (const auto& r : submitted) {
      records.push_back({a.annotator_id, r.item_id, now, r.value});
      lines += to_json(records.back()).dump() + "\n";
    }
    detail::append_lines(s.dir / "responses.jsonl", lines);
    for (auto& r : records) apply_response(s, std::move(r));
    const nlohmann::json done = {{"event", "completed"}, {"assignment_id", assignment_id}, {"completed_at", now}};
    detail::append_lines(s.dir / "assignments.jsonl", done.dump() + "\n");
    apply_completed(s, assignment_id);
    return {assignment_id, records.size()};
  }

  Progress progress(const std::string& project_id) const {
    const auto& s = find(project_id);
    std::lock_guard lock(s.mutex);
    Progress p;
    p.total = s.items.size();
    p.responses = s.responses.size();
    const bool acceptability = is_acceptability(s.config.task);
    for (const auto& item : s.items) {
      const auto rc = s.response_count.count(item.id()) ? s.response_count.at(item.id()) : 0;
      const auto holds = s.holds.count(item.id()) ? s.holds.at(item.id()) : 0;
      const bool complete = rc >= s.config.required_responses;
      if (complete) {
        ++p.complete;
      } else if (rc > 0 || holds > 0) {
        ++p.in_flight;
      } else {
        ++p.untouched;
      }
      if (acceptability && item.expected_label) {
        auto& lp = p.by_expected_label[*item.expected_label];
        ++lp.total;
        lp.complete += complete;
      }
    }
    return p;
  }

 private:
  struct State {
    std::filesystem::path dir;
    ProjectConfig config;
    std::vector<DatasetRecord> items;
    std::vector<std::size_t> rank;  // batch tie-break order
    std::vector<AnnotationResponse> responses;
    std::map<std::string, Assignment> assignments;
    std::unordered_map<std::string, int> response_count;
    std::unordered_map<std::string, int> holds;  // open assignments per item
    std::unordered_map<std::string, std::set<std::string>> answered;     // annotator -> items
    std::unordered_map<std::string, std::set<std::string>> assigned_to;  // annotator -> items
    std::unordered_map<std::string, std::vector<std::string>> open_by_annotator;
    mutable std::mutex mutex;
  };

  State& find(const std::string& project_id) const {
    std::shared_lock lock(projects_mutex_);
    const auto it = projects_.find(project_id);
    if (it == projects_.end()) throw Error(ErrorCode::kUnknownProject, "no project '" + project_id + "'");
    return *it->second;
  }

  void index_items(State& s) const {
    s.rank.resize(s.items.size());
    std::vector<std::size_t> order(s.items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(derive_seed(options_.seed, s.config.project_id));
    rng.shuffle(order);
    for (std::size_t r = 0; r < order.size(); ++r) s.rank[order[r]] = r;
  }

  static void apply_issued(State& s, const Assignment& a) {
    s.assignments[a.assignment_id] = a;
    if (a.completed) return;
    for (const auto& id : a.item_ids) {
      s.holds[id]++;
      s.assigned_to[a.annotator_id].insert(id);
    }
    s.open_by_annotator[a.annotator_id].push_back(a.assignment_id);
  }

  static void apply_completed(State& s, const std::string& assignment_id) {
    auto& a = s.assignments.at(assignment_id);
    if (a.completed) return;
    a.completed = true;
    for (const auto& id : a.item_ids) s.holds[id]--;
    auto& open = s.open_by_annotator[a.annotator_id];
    open.erase(std::remove(open.begin(), open.end(), assignment_id), open.end());
  }

  static void apply_response(State& s, AnnotationResponse r) {
    s.response_count[r.item_id]++;
    s.answered[r.annotator_id].insert(r.item_id);
    s.responses.push_back(std::move(r));
  }

  void load(const std::filesystem::path& dir) {
    auto state = std::make_unique<State>();
    state->dir = dir;
    std::ifstream in(dir / "project.json");
    nlohmann::json j;
    try {
      in >> j;
      state->config.project_id = j.at("project_id").get<std::string>();
      state->config.task = require_task(j.at("task").get<std::string>());
      state->config.batch_size = j.at("batch_size").get<std::size_t>();
      state->config.required_responses = j.at("required_responses").get<int>();
      state->config.distinct_annotators = j.at("distinct_annotators").get<bool>();
      state->config.created_at = j.value("created_at", std::string{});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, (dir / "project.json").string() + ": " + e.what());
    }
    state->items = load_dataset(dir / "items.jsonl");
    index_items(*state);
    auto assignments = detail::recover_jsonl(dir / "assignments.jsonl");
    auto responses = detail::recover_jsonl(dir / "responses.jsonl");
    warnings_.insert(warnings_.end(), assignments.warnings.begin(), assignments.warnings.end());
    warnings_.insert(warnings_.end(), responses.warnings.begin(), responses.warnings.end());
    for (const auto& e : assignments.records) {
      if (e.value("event", "") == "issued") {
        Assignment a;
        a.assignment_id = e.at("assignment_id").get<std::string>();
        a.project_id = state->config.project_id;
        a.annotator_id = e.at("annotator_id").get<std::string>();
        a.item_ids = e.at("item_ids").get<std::vector<std::string>>();
        a.issued_at = e.value("issued_at", std::string{});
        apply_issued(*state, a);
      } else if (e.value("event", "") == "completed") {
        const auto id = e.at("assignment_id").get<std::string>();
        if (state->assignments.count(id)) apply_completed(*state, id);
      }
    }
    for (const auto& r : responses.records) apply_response(*state, response_from_json(r));
    // A crash between the response append and the completion event leaves an
    // open assignment whose responses are already logged.
    for (auto& [id, a] : state->assignments) {
      if (a.completed) continue;
      const auto& answered = state->answered[a.annotator_id];
      if (std::all_of(a.item_ids.begin(), a.item_ids.end(), [&](const auto& item) { return answered.count(item); })) {
        const nlohmann::json done = {{"event", "completed"}, {"assignment_id", id}, {"completed_at", options_.clock()}};
        detail::append_lines(dir / "assignments.jsonl", done.dump() + "\n");
        apply_completed(*state, id);
      }
    }
    const auto project_id = state->config.project_id;
    projects_.emplace(project_id, std::move(state));
  }

  std::filesystem::path root_;
  StoreOptions options_;
  mutable std::shared_mutex projects_mutex_;
  std::map<std::string, std::unique_ptr<State>> projects_;
  std::vector<std::string> warnings_;
};

// ---------------------------------------------------------------------------
// Simulated annotators

struct AnnotatorProfile {
  std::vector<double> accuracies = {0.8, 0.8, 0.8};  // one per annotator
  double nonsense_rate = 0.0;                         // NLI only
};

namespace detail {

inline int likert_for(NliLabel label, Rng& rng) {
  switch (label) {
    case NliLabel::kEntailment: return 4 + static_cast<int>(rng.uniform_index(2));
    case NliLabel::kNeutral: return 3;
    case NliLabel::kContradiction: return 1 + static_cast<int>(rng.uniform_index(2));
  }
  return 3;
}

}  // namespace detail

// One simulated answer. A correct answer gives the item's expected label;
// a wrong one is drawn uniformly from the remaining options. NLI items without
// an expected label use `latent`.
inline ResponseValue simulate_response(const DatasetRecord& item, double accuracy, double nonsense_rate,
                                       std::optional<NliLabel> latent, Rng& rng) {
  const bool correct = rng.bernoulli(accuracy);
  if (is_acceptability(item.task())) {
    const auto expected = parse_judgment(item.expected_label.value_or(""));
    if (!expected) throw Error(ErrorCode::kMissingMetadata, "item has no expected label", item.id());
    if (correct) return ResponseValue::of(*expected);
    std::vector<Judgment> others;
    for (auto j : {Judgment::kNatural, Judgment::kUnnatural, Judgment::kNeither}) {
      if (j != *expected) others.push_back(j);
    }
    return ResponseValue::of(others[rng.uniform_index(others.size())]);
  }
  if (nonsense_rate > 0.0 && rng.bernoulli(nonsense_rate)) return ResponseValue::nonsense();
  std::optional<NliLabel> target = item.expected_label ? parse_nli_label(*item.expected_label) : latent;
  if (!target) throw Error(ErrorCode::kMissingMetadata, "item has no NLI label", item.id());
  if (correct) return ResponseValue::of_likert(detail::likert_for(*target, rng));
  std::vector<NliLabel> others;
  for (auto l : {NliLabel::kEntailment, NliLabel::kNeutral, NliLabel::kContradiction}) {
    if (l != *target) others.push_back(l);
  }
  return ResponseValue::of_likert(detail::likert_for(others[rng.uniform_index(others.size())], rng));
}

// A full response log: every annotator in the profile answers every item.
// Each item draws from its own seeded stream.
inline std::vector<AnnotationResponse> simulate_annotators(const std::vector<DatasetRecord>& items,
                                                           const AnnotatorProfile& profile, std::uint64_t seed) {
  if (profile.accuracies.empty()) throw Error(ErrorCode::kInvalidArgument, "profile has no annotators");
  for (double a : profile.accuracies) {
    if (a < 0.0 || a > 1.0) throw Error(ErrorCode::kInvalidArgument, "accuracy must lie in [0, 1]");
  }
  std::vector<AnnotationResponse> out;
  const auto base = std::chrono::sys_days{std::chrono::year{2026} / 1 / 1};
  std::size_t tick = 0;
  for (const auto& item : items) {
    Rng rng(derive_seed(seed, item.id()));
    const auto latent = static_cast<NliLabel>(rng.uniform_index(3));
    for (std::size_t a = 0; a < profile.accuracies.size(); ++a) {
      const auto value = simulate_response(item, profile.accuracies[a], profile.nonsense_rate, latent, rng);
      out.push_back({"sim-" + std::to_string(a + 1), item.id(),
                     utc_timestamp(base + std::chrono::seconds(tick++)), value});
    }
  }
  return out;
}

// Drives a project through the store until every annotator runs out of
// batches. Returns the number of responses submitted.
inline std::size_t simulate_project(ProjectStore& store, const std::string& project_id,
                                    const AnnotatorProfile& profile, std::uint64_t seed) {
  const auto items = store.items(project_id);
  std::unordered_map<std::string, const DatasetRecord*> by_id;
  for (const auto& r : items) by_id[r.id()] = &r;
  std::size_t submitted = 0;
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (std::size_t a = 0; a < profile.accuracies.size(); ++a) {
      const std::string annotator = "sim-" + std::to_string(a + 1);
      const auto batch = store.next_batch(project_id, annotator);
      if (!batch) continue;
      std::vector<SubmittedResponse> answers;
      for (const auto& id : batch->item_ids) {
        Rng rng(derive_seed(seed, id + "/" + annotator));
        Rng latent_rng(derive_seed(seed, id));
        const auto latent = static_cast<NliLabel>(latent_rng.uniform_index(3));
        answers.push_back({id, simulate_response(*by_id.at(id), profile.accuracies[a], profile.nonsense_rate,
                                                 latent, rng)});
      }
      submitted += store.submit_responses(project_id, batch->assignment_id, answers).accepted;
      progressed = true;
    }
  }
  return submitted;
}

}  // namespace funcprobe
