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

#ifndef PROCMINE_SERVICE_H_
#define PROCMINE_SERVICE_H_

#include <atomic>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "procmine/bpmn.h"
#include "procmine/eventlog.h"

namespace procmine {

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

using QueryParams = std::multimap<std::string, std::string>;

// Read-only JSON API over the artifacts of an output directory. Everything is
// loaded at construction; requests never touch the disk.
//
//   GET /api/processes
//   GET /api/processes/{key}/dfg?types=task|all&from=&to=
//   GET /api/processes/{key}/cases?top=N
//   GET /api/processes/{key}/cases/{case_id}
//   GET /api/processes/{key}/sna?metric=handover|working_together|similar_activities
//   GET /api/processes/{key}/model
//   GET /api/processes/{key}/decoration
//
// Errors are JSON objects {"error", "message"} plus "field" for 400s.
class Service {
 public:
  explicit Service(const std::filesystem::path& output_dir);

  HttpResponse handle(std::string_view method, std::string_view path,
                      const QueryParams& query) const;

  // Blocks serving HTTP on host:port; static files from `ui_dir` under "/".
  // Returns once `stop` becomes true.
  void serve(const std::string& host, int port,
             const std::optional<std::filesystem::path>& ui_dir,
             const std::atomic<bool>* stop = nullptr) const;

 private:
  struct Process {
    EventLog log;
    std::optional<std::string> model_xml;
    std::optional<BpmnGraph> graph;
  };

  HttpResponse process_endpoint(const Process& p, const std::vector<std::string_view>& parts,
                                const QueryParams& query) const;

  std::map<std::string, Process> processes_;
};

}  // namespace procmine

#endif  // PROCMINE_SERVICE_H_
