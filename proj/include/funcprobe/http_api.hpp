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

#include <filesystem>
#include <string>

#include "funcprobe/service.hpp"
#include "httplib.h"
#include "json.hpp"

namespace funcprobe {

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownProject:
    case ErrorCode::kUnknownAssignment: return 404;
    case ErrorCode::kConflict:
    case ErrorCode::kDuplicateId: return 409;
    case ErrorCode::kFormatViolation: return 422;
    case ErrorCode::kIo: return 500;
    default: return 400;
  }
}

inline nlohmann::json item_view(const DatasetRecord& r) {
  nlohmann::json j = {{"item_id", r.id()}};
  const auto& p = r.payload();
  switch (task_format(r.task())) {
    case TaskFormat::kSingleSentence: j["text"] = p.first; break;
    case TaskFormat::kSentencePair: j["sentences"] = {p.first, p.second}; break;
    case TaskFormat::kNli:
      j["premise"] = p.first;
      j["hypothesis"] = p.second;
      break;
  }
  return j;
}

// JSON API under /api/v1 over a ProjectStore. Every body carries "schema".
class ApiServer {
 public:
  explicit ApiServer(ProjectStore& store) : store_(store) { routes(); }

  httplib::Server& server() { return server_; }

  // Serves a directory of static files (the annotation UI) at "/".
  bool mount_static(const std::filesystem::path& dir) { return server_.set_mount_point("/", dir.string()); }

  bool listen(const std::string& host, int port) { return server_.listen(host, port); }
  int bind_any_port(const std::string& host) { return server_.bind_to_any_port(host); }
  bool listen_after_bind() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }

 private:
  static void reply(httplib::Response& res, int status, nlohmann::json body) {
    body["schema"] = kApiSchema;
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static void reply_error(httplib::Response& res, const Error& e) {
    nlohmann::json body = {{"code", error_code_name(e.code())}, {"message", e.message()}};
    if (e.item_id()) body["item_id"] = *e.item_id();
    reply(res, http_status(e.code()), body);
  }

  template <typename F>
  static httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const Error& e) {
        reply_error(res, e);
      } catch (const nlohmann::json::exception& e) {
        reply_error(res, Error(ErrorCode::kParse, std::string("bad request body: ") + e.what()));
      } catch (const std::exception& e) {
        reply_error(res, Error(ErrorCode::kIo, e.what()));
      }
    };
  }

  static nlohmann::json parse_body(const httplib::Request& req) {
    try {
      return nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, std::string("request body is not JSON: ") + e.what());
    }
  }

  void routes() {
    server_.Get("/api/v1/projects", guarded([this](const httplib::Request&, httplib::Response& res) {
                  nlohmann::json list = nlohmann::json::array();
                  for (const auto& p : store_.list_projects()) {
                    auto j = to_json(p);
                    j.erase("schema");
                    j["n_items"] = store_.items(p.project_id).size();
                    list.push_back(j);
                  }
                  reply(res, 200, {{"projects", list}});
                }));

    server_.Post("/api/v1/projects", guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const auto body = parse_body(req);
                   std::vector<DatasetRecord> items;
                   if (body.contains("items")) {
                     for (const auto& j : body.at("items")) items.push_back(dataset_record_from_json(j));
                   } else if (body.contains("items_path")) {
                     items = load_dataset(body.at("items_path").get<std::string>());
                   } else {
                     throw Error(ErrorCode::kInvalidArgument, "body needs 'items' or 'items_path'");
                   }
                   const auto config = store_.create_project(body.at("project_id").get<std::string>(), items,
                                                             body.value("required_responses", kResponsesPerItem),
                                                             body.value("distinct_annotators", true));
                   auto j = to_json(config);
                   j["n_items"] = items.size();
                   reply(res, 201, {{"project", j}});
                 }));

    server_.Get(R"(/api/v1/projects/([A-Za-z0-9_-]+)/batch)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const std::string project_id = req.matches[1];
                  const auto annotator = req.get_param_value("annotator");
                  const auto batch = store_.next_batch(project_id, annotator);
                  if (!batch) {
                    reply(res, 200, {{"assignment", nullptr}});
                    return;
                  }
                  const auto items = store_.items(project_id);
                  std::map<std::string, const DatasetRecord*> by_id;
                  for (const auto& r : items) by_id[r.id()] = &r;
                  const Task task = store_.project(project_id).task;
                  auto a = to_json(*batch);
                  a["task"] = task_name(task);
                  a["format"] = task_format_name(task_format(task));
                  a["items"] = nlohmann::json::array();
                  for (const auto& id : batch->item_ids) a["items"].push_back(item_view(*by_id.at(id)));
                  reply(res, 200, {{"assignment", a}});
                }));

    server_.Post(R"(/api/v1/projects/([A-Za-z0-9_-]+)/responses)",
                 guarded([this](const httplib::Request& req, httplib::Response& res) {
                   const std::string project_id = req.matches[1];
                   const auto body = parse_body(req);
                   std::vector<SubmittedResponse> responses;
                   for (const auto& r : body.at("responses")) {
                     const auto item_id = r.at("item_id").get<std::string>();
                     try {
                       responses.push_back({item_id, response_value_from_json(r.at("value"))});
                     } catch (const Error& e) {
                       throw Error(ErrorCode::kFormatViolation, e.message(), item_id);
                     }
                   }
                   const auto ack =
                       store_.submit_responses(project_id, body.at("assignment_id").get<std::string>(), responses);
                   reply(res, 200, {{"assignment_id", ack.assignment_id}, {"accepted", ack.accepted}});
                 }));

    server_.Get(R"(/api/v1/projects/([A-Za-z0-9_-]+)/progress)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  reply(res, 200, {{"progress", to_json(store_.progress(req.matches[1]))}});
                }));
  }

  ProjectStore& store_;
  httplib::Server server_;
};

}  // namespace funcprobe
