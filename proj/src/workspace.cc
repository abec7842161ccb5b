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

#include "procmine/workspace.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "procmine/bpmn.h"
#include "procmine/errors.h"
#include "procmine/extractor.h"

namespace procmine {
namespace {

namespace fs = std::filesystem;

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error("cannot replace " + path.string() + ": " + ec.message());
}

bool is_model_file(const fs::path& p) {
  const std::string name = p.filename().string();
  auto ends_with = [&](std::string_view suffix) {
    return name.size() >= suffix.size() &&
           name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with(".bpmn") || ends_with(".bpmn20.xml");
}

std::string string_member(const nlohmann::json& doc, const char* name) {
  const auto it = doc.find(name);
  if (it == doc.end()) return {};
  if (!it->is_string() || it->get<std::string>().empty()) {
    throw ValidationError(std::string("config: '") + name + "' must be a non-empty string");
  }
  return it->get<std::string>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::size_t publish_models(const Config& config, const ArtifactStore& store,
                           std::vector<std::string>& warnings) {
  std::size_t published = 0;
  const std::string& source = config.model_source;
  if (source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0) {
    for (const auto& [key, xml] : fetch_model_xml_from_rest(source, &warnings)) {
      store.write_model(key, xml);
      ++published;
    }
    return published;
  }
  std::error_code ec;
  if (!fs::is_directory(source, ec)) throw SourceError("models: not a directory: " + source);
  std::vector<fs::path> files;
  for (auto it = fs::recursive_directory_iterator(source, ec); !ec && it != fs::end(it);
       it.increment(ec)) {
    if (it->is_regular_file() && is_model_file(it->path())) files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    const auto xml = read_file(file);
    if (!xml) {
      warnings.push_back(file.string() + ": unreadable, skipped");
      continue;
    }
    try {
      for (const auto& graph : parse_bpmn_definitions(*xml)) {
        if (graph.nodes.empty() || graph.process_id.empty()) continue;
        store.write_model(graph.process_id, *xml);
        ++published;
      }
    } catch (const Error& e) {
      warnings.push_back(file.string() + ": " + e.what() + ", skipped");
    }
  }
  return published;
}

}  // namespace

Config parse_config(std::string_view text, const fs::path& base_dir, const EnvLookup& env) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: expected a JSON object");
  static const std::set<std::string> kKnown = {
      "csv_dir",    "db_url",    "models_dir", "rest_url",     "state_path",
      "output_dir", "activity_type_filter",    "service_port", "ui_dir"};
  for (const auto& [name, _] : doc.items()) {
    if (!kKnown.contains(name)) throw ValidationError("config: unknown member '" + name + "'");
  }

  Config config;
  const std::string csv_dir = string_member(doc, "csv_dir");
  std::string db_url = string_member(doc, "db_url");
  if (const char* v = env("PM_DB_URL"); v && *v) {
    config.event_source = v;
  } else if (!csv_dir.empty() && !db_url.empty()) {
    throw ValidationError("config: 'csv_dir' and 'db_url' are mutually exclusive");
  } else if (!csv_dir.empty()) {
    config.event_source = resolve(base_dir, csv_dir).string();
  } else if (!db_url.empty()) {
    if (db_url.rfind("sqlite:", 0) == 0) {
      std::string path = db_url.substr(7);
      if (path.rfind("//", 0) == 0) path = path.substr(2);
      db_url = "sqlite:" + resolve(base_dir, path).string();
    }
    config.event_source = db_url;
  } else {
    throw ValidationError("config: one of 'csv_dir' or 'db_url' is required");
  }

  const std::string models_dir = string_member(doc, "models_dir");
  const std::string rest_url = string_member(doc, "rest_url");
  if (!models_dir.empty() && !rest_url.empty()) {
    throw ValidationError("config: 'models_dir' and 'rest_url' are mutually exclusive");
  }
  if (const char* v = env("PM_REST_URL"); v && *v) {
    config.model_source = v;
  } else if (!rest_url.empty()) {
    config.model_source = rest_url;
  } else if (!models_dir.empty()) {
    config.model_source = resolve(base_dir, models_dir).string();
  }

  const std::string state = string_member(doc, "state_path");
  const std::string output = string_member(doc, "output_dir");
  if (output.empty()) throw ValidationError("config: 'output_dir' is required");
  config.output_dir = resolve(base_dir, output);
  config.state_path = state.empty() ? config.output_dir / "watermark.json" : resolve(base_dir, state);

  if (auto it = doc.find("activity_type_filter"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("config: 'activity_type_filter' must be an array");
    for (const auto& t : *it) {
      if (!t.is_string()) {
        throw ValidationError("config: 'activity_type_filter' must hold strings");
      }
      config.activity_type_filter.insert(t.get<std::string>());
    }
  }
  if (auto it = doc.find("service_port"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<int>() < 1 || it->get<int>() > 65535) {
      throw ValidationError("config: 'service_port' must be an integer in [1, 65535]");
    }
    config.service_port = it->get<int>();
  }
  if (const std::string ui = string_member(doc, "ui_dir"); !ui.empty()) {
    config.ui_dir = resolve(base_dir, ui);
  }
  return config;
}

Config load_config(const fs::path& path, const EnvLookup& env) {
  const auto text = read_file(path);
  if (!text) throw ValidationError("config: cannot read " + path.string());
  return parse_config(*text, path.parent_path(), env);
}

ArtifactStore::ArtifactStore(fs::path dir) : dir_(std::move(dir)) {}

std::vector<std::string> ArtifactStore::keys() const {
  std::vector<std::string> out;
  std::error_code ec;
  for (auto it = fs::directory_iterator(dir_, ec); !ec && it != fs::end(it); it.increment(ec)) {
    if (it->is_regular_file() && it->path().extension() == ".csv") {
      out.push_back(it->path().stem().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<EventLog> ArtifactStore::load_log(const std::string& key) const {
  const auto text = read_file(dir_ / (key + ".csv"));
  if (!text) return std::nullopt;
  return import_csv(*text, key);
}

std::optional<std::string> ArtifactStore::model_xml(const std::string& key) const {
  return read_file(dir_ / (key + ".bpmn"));
}

void ArtifactStore::write_log(const EventLog& log) const {
  fs::create_directories(dir_);
  write_atomically(dir_ / (log.process_key + ".xes"), export_xes(log));
  write_atomically(dir_ / (log.process_key + ".csv"), export_csv(log));
}

void ArtifactStore::write_model(const std::string& key, const std::string& xml) const {
  fs::create_directories(dir_);
  write_atomically(dir_ / (key + ".bpmn"), xml);
}

ExtractReport run_extract(const Config& config) {
  ExtractReport report;
  if (config.state_path.has_parent_path()) fs::create_directories(config.state_path.parent_path());
  WatermarkLock lock(config.state_path);
  const WatermarkState state = load_watermark(config.state_path);
  auto source = open_source(config.event_source);
  ExtractionResult extracted = incremental_extract(*source, state);
  report.rejected_duplicates = extracted.rejected_duplicates;
  report.warnings = extracted.details.warnings;

  const ArtifactStore store(config.output_dir);
  for (auto& [key, delta] : extracted.delta) {
    EventLog base = store.load_log(key).value_or(EventLog{key, {}});
    std::unordered_set<std::string> known;
    for (const auto& trace : base.traces) {
      for (const auto& e : trace.events) known.insert(e.event_id);
    }
    std::vector<CaseEvent> fresh;
    for (auto& [case_id, event] : flatten(delta)) {
      if (known.contains(event.event_id)) continue;
      if (!config.activity_type_filter.empty() &&
          !config.activity_type_filter.contains(event.activity_type)) {
        continue;
      }
      fresh.emplace_back(case_id, std::move(event));
    }
    report.new_events[key] = fresh.size();
    report.total_new_events += fresh.size();
    if (fresh.empty()) continue;
    store.write_log(merge_logs(base, build_log(std::move(fresh), key)));
  }
  if (!config.model_source.empty()) {
    report.models_published = publish_models(config, store, report.warnings);
  }
  save_watermark(config.state_path, extracted.state);
  return report;
}

}  // namespace procmine
