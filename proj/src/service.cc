/* Copyright 2026 The procmine Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "procmine/service.h"

#include <charconv>
#include <chrono>
#include <set>
#include <thread>

#include "httplib.h"
#include "procmine/analytics.h"
#include "procmine/discovery.h"
#include "procmine/errors.h"
#include "procmine/json_export.h"
#include "procmine/workspace.h"

namespace procmine {
namespace {

HttpResponse json_response(int status, const Json& body) {
  return HttpResponse{status, "application/json", body.dump()};
}

HttpResponse error_response(int status, const std::string& code, const std::string& message) {
  return json_response(status, {{"error", code}, {"message", message}});
}

HttpResponse bad_parameter(const std::string& field, const std::string& message) {
  return json_response(400, {{"error", "bad_parameter"}, {"field", field}, {"message", message}});
}

std::optional<HttpResponse> reject_unknown(const QueryParams& query,
                                           const std::set<std::string>& allowed) {
  for (const auto& [name, _] : query) {
    if (!allowed.contains(name)) return bad_parameter(name, "unknown parameter");
    if (query.count(name) > 1) return bad_parameter(name, "parameter given more than once");
  }
  return std::nullopt;
}

std::optional<std::string> param(const QueryParams& query, const std::string& name) {
  auto it = query.find(name);
  if (it == query.end()) return std::nullopt;
  return it->second;
}

EventLog filter_by_dates(const EventLog& log, std::optional<Timestamp> from,
                         std::optional<Timestamp> to) {
  EventLog out{log.process_key, {}};
  for (const auto& trace : log.traces) {
    if (trace.events.empty()) continue;
    if (from && trace.events.front().start < *from) continue;
    if (to && trace.events.back().end > *to) continue;
    out.traces.push_back(trace);
  }
  return out;
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    const auto slash = path.find('/');
    const auto part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

}  // namespace

Service::Service(const std::filesystem::path& output_dir) {
  const ArtifactStore store(output_dir);
  for (const auto& key : store.keys()) {
    Process p{*store.load_log(key), store.model_xml(key), std::nullopt};
    if (p.model_xml) {
      try {
        for (auto& graph : parse_bpmn_definitions(*p.model_xml)) {
          if (graph.process_id == key) p.graph = std::move(graph);
        }
      } catch (const Error&) {
        p.model_xml.reset();
      }
    }
    processes_.emplace(key, std::move(p));
  }
}

HttpResponse Service::handle(std::string_view method, std::string_view path,
                             const QueryParams& query) const {
  if (method != "GET") return error_response(405, "method_not_allowed", "only GET is supported");
  const auto parts = split_path(path);
  if (parts.size() < 2 || parts[0] != "api" || parts[1] != "processes") {
    return error_response(404, "not_found", "no endpoint at " + std::string(path));
  }
  if (parts.size() == 2) {
    if (auto bad = reject_unknown(query, {})) return *bad;
    Json out = Json::array();
    for (const auto& [key, p] : processes_) {
      out.push_back({{"key", key},
                     {"n_cases", p.log.traces.size()},
                     {"n_events", p.log.event_count()}});
    }
    return json_response(200, out);
  }
  const std::string key(parts[2]);
  const auto it = processes_.find(key);
  if (it == processes_.end()) {
    return error_response(404, "unknown_process", "unknown process key '" + key + "'");
  }
  return process_endpoint(it->second, {parts.begin() + 3, parts.end()}, query);
}

HttpResponse Service::process_endpoint(const Process& p,
                                       const std::vector<std::string_view>& parts,
                                       const QueryParams& query) const {
  const std::string_view what = parts.empty() ? "" : parts[0];

  if (what == "dfg" && parts.size() == 1) {
    if (auto bad = reject_unknown(query, {"types", "from", "to"})) return *bad;
    const std::string types = param(query, "types").value_or("all");
    if (types != "task" && types != "all") return bad_parameter("types", "expected task or all");
    std::optional<Timestamp> bounds[2];
    const char* names[2] = {"from", "to"};
    for (int i = 0; i < 2; ++i) {
      if (auto v = param(query, names[i])) {
        bounds[i] = parse_iso8601(*v);
        if (!bounds[i]) return bad_parameter(names[i], "expected an ISO-8601 timestamp");
      }
    }
    if (bounds[0] && bounds[1] && *bounds[0] > *bounds[1]) {
      return bad_parameter("from", "from is after to");
    }
    EventLog log = types == "task" ? filter_activity_types(p.log, task_activity_types()) : p.log;
    if (bounds[0] || bounds[1]) log = filter_by_dates(log, bounds[0], bounds[1]);
    return json_response(200, to_json(discover_dfg(log)));
  }

  if (what == "cases" && parts.size() == 1) {
    if (auto bad = reject_unknown(query, {"top"})) return *bad;
    auto cases = case_statistics(p.log);
    if (auto top = param(query, "top")) {
      std::size_t n = 0;
      const auto* end = top->data() + top->size();
      auto [ptr, ec] = std::from_chars(top->data(), end, n);
      if (top->empty() || ec != std::errc() || ptr != end || n == 0) {
        return bad_parameter("top", "expected a positive integer");
      }
      if (cases.size() > n) cases.resize(n);
    }
    return json_response(200, case_list_json(cases));
  }

  if (what == "cases" && parts.size() == 2) {
    if (auto bad = reject_unknown(query, {})) return *bad;
    for (const auto& trace : p.log.traces) {
      if (trace.case_id == parts[1]) return json_response(200, case_detail_json(trace));
    }
    return error_response(404, "unknown_case", "unknown case '" + std::string(parts[1]) + "'");
  }

  if (what == "sna" && parts.size() == 1) {
    if (auto bad = reject_unknown(query, {"metric"})) return *bad;
    const auto metric = parse_sna_metric(param(query, "metric").value_or("handover"));
    if (!metric) {
      return bad_parameter("metric", "expected handover, working_together or similar_activities");
    }
    return json_response(200, to_json(social_network(p.log, *metric)));
  }

  if (what == "model" && parts.size() == 1) {
    if (auto bad = reject_unknown(query, {})) return *bad;
    if (!p.model_xml) return error_response(404, "no_model", "no model for this process");
    return HttpResponse{200, "application/xml", *p.model_xml};
  }

  if (what == "decoration" && parts.size() == 1) {
    if (auto bad = reject_unknown(query, {})) return *bad;
    if (!p.graph) return error_response(404, "no_model", "no model for this process");
    return json_response(200, to_json(*p.graph, decorate_model(*p.graph, p.log)));
  }

  return error_response(404, "not_found", "no such process endpoint");
}

void Service::serve(const std::string& host, int port,
                    const std::optional<std::filesystem::path>& ui_dir,
                    const std::atomic<bool>* stop) const {
  httplib::Server server;
  server.Get(R"(/api/.*)", [this](const httplib::Request& req, httplib::Response& res) {
    QueryParams query(req.params.begin(), req.params.end());
    const HttpResponse r = handle("GET", req.path, query);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  });
  if (ui_dir && !server.set_mount_point("/", ui_dir->string())) {
    throw Error("ui directory not found: " + ui_dir->string());
  }
  if (!server.bind_to_port(host, port)) {
    throw Error("cannot listen on " + host + ":" + std::to_string(port));
  }
  std::thread watcher;
  if (stop) {
    watcher = std::thread([&server, stop] {
      while (!stop->load()) std::this_thread::sleep_for(std::chrono::milliseconds(20));
      server.stop();
    });
  }
  server.listen_after_bind();
  if (watcher.joinable()) watcher.join();
}

}  // namespace procmine
