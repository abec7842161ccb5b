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

#ifndef PROCMINE_WORKSPACE_H_
#define PROCMINE_WORKSPACE_H_

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "procmine/eventlog.h"

namespace procmine {

struct Config {
  std::string event_source;  // CSV fixture directory or "sqlite:<path>"
  std::string model_source;  // model directory or http(s) REST base URL; empty for none
  std::filesystem::path state_path;
  std::filesystem::path output_dir;
  std::set<std::string> activity_type_filter;  // empty keeps every type
  int service_port = 8080;
  std::optional<std::filesystem::path> ui_dir;
};

using EnvLookup = std::function<const char*(const char*)>;

// Reads a JSON config file. Members: csv_dir or db_url (exactly one),
// models_dir or rest_url (optional), state_path, output_dir,
// activity_type_filter, service_port, ui_dir. Relative paths are resolved
// against the file's directory. PM_DB_URL replaces the event-data source and
// PM_REST_URL the model source. Throws ValidationError naming the member.
Config load_config(const std::filesystem::path& path, const EnvLookup& env = &std::getenv);
Config parse_config(std::string_view text, const std::filesystem::path& base_dir,
                    const EnvLookup& env = &std::getenv);

// Extracted artifacts under an output directory: <key>.csv and <key>.xes per
// process, <key>.bpmn per published model.
class ArtifactStore {
 public:
  explicit ArtifactStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  // Process keys with a stored log, sorted.
  std::vector<std::string> keys() const;
  std::optional<EventLog> load_log(const std::string& key) const;
  std::optional<std::string> model_xml(const std::string& key) const;

  // Replaces <key>.csv and <key>.xes atomically.
  void write_log(const EventLog& log) const;
  void write_model(const std::string& key, const std::string& xml) const;

 private:
  std::filesystem::path dir_;
};

struct ExtractReport {
  std::map<std::string, std::size_t> new_events;  // per process key
  std::size_t total_new_events = 0;
  std::size_t rejected_duplicates = 0;
  std::size_t models_published = 0;
  std::vector<std::string> warnings;
};

// One incremental extraction run: reads rows past the stored watermark,
// appends them to the stored logs, publishes models, then persists the new
// watermark. Holds the watermark lock for the whole run. Rows whose event id
// is already stored are skipped, so rerunning after a crash is harmless.
ExtractReport run_extract(const Config& config);

}  // namespace procmine

#endif  // PROCMINE_WORKSPACE_H_
