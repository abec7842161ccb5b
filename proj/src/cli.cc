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

#include "procmine/cli.h"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "procmine/analytics.h"
#include "procmine/bpmn.h"
#include "procmine/conformance.h"
#include "procmine/discovery.h"
#include "procmine/errors.h"
#include "procmine/json_export.h"
#include "procmine/process_tree.h"
#include "procmine/service.h"
#include "procmine/workspace.h"

namespace procmine {
namespace {

namespace fs = std::filesystem;

class UnknownProcess : public Error {
 public:
  using Error::Error;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

EventLog require_log(const Config& config, const std::string& key) {
  const ArtifactStore store(config.output_dir);
  if (auto log = store.load_log(key)) return *log;
  std::string known;
  for (const auto& k : store.keys()) known += (known.empty() ? "" : ", ") + k;
  throw UnknownProcess("unknown process key '" + key + "'; known keys: " +
                       (known.empty() ? "(none, run extract first)" : known));
}

bool is_bpmn_path(const fs::path& p) {
  const std::string name = p.filename().string();
  return p.extension() == ".bpmn" ||
         (name.size() > 4 && name.compare(name.size() - 4, 4, ".xml") == 0);
}

// Events of the model's labelled nodes only; gateways are silent in the net.
EventLog restrict_to_labelled_nodes(const EventLog& log, const BpmnGraph& graph) {
  EventLog out{log.process_key, {}};
  for (const auto& trace : log.traces) {
    Trace kept{trace.case_id, {}};
    for (const auto& e : trace.events) {
      auto it = graph.nodes.find(e.activity_id);
      if (it == graph.nodes.end()) continue;
      const auto kind = it->second.kind;
      if (kind == BpmnNodeKind::kTask || kind == BpmnNodeKind::kStartEvent ||
          kind == BpmnNodeKind::kEndEvent) {
        kept.events.push_back(e);
      }
    }
    out.traces.push_back(std::move(kept));
  }
  return out;
}

struct LoadedModel {
  PetriNet net;
  std::optional<BpmnGraph> graph;
};

LoadedModel load_model(const fs::path& path) {
  const std::string text = read_text(path);
  if (is_bpmn_path(path)) {
    BpmnGraph graph = parse_bpmn(text);
    PetriNet net = bpmn_to_petri(graph);
    return {std::move(net), std::move(graph)};
  }
  if (path.extension() == ".json") {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::exception& e) {
      throw ParseError(path.string() + ": " + e.what());
    }
    return {petri_net_from_json(doc), std::nullopt};
  }
  return {tree_to_petri(parse_process_tree(text)), std::nullopt};
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Process mining over workflow-engine history tables", "procmine"};
  app.require_subcommand(1);
  std::string config_path = "procmine.json";
  app.add_option("--config", config_path, "Config file (JSON)");

  std::string process;
  std::string model_path;

  auto* extract = app.add_subcommand("extract", "Incremental extraction into output_dir");

  auto* discover = app.add_subcommand("discover", "Discover a DFG, process tree or Petri net");
  std::string format = "dfg";
  double noise = 0.0;
  discover->add_option("--process", process, "Process key")->required();
  discover->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"dfg", "tree", "pnml-like-json"}));
  discover->add_option("--noise", noise, "Inductive miner edge-frequency threshold")
      ->check(CLI::Range(0.0, 1.0));

  auto* conform = app.add_subcommand("conform", "Fitness and precision against a model");
  conform->add_option("--process", process, "Process key")->required();
  conform->add_option("--model", model_path, "BPMN file, net JSON or process tree text")
      ->required();

  auto* sna = app.add_subcommand("sna", "Social-network matrix");
  std::string metric = "handover";
  bool normalize = false;
  sna->add_option("--process", process, "Process key")->required();
  sna->add_option("--metric", metric, "Metric")
      ->check(CLI::IsMember({"handover", "working_together", "similar_activities"}));
  sna->add_flag("--normalize", normalize, "Row-normalize the handover matrix");

  auto* cases = app.add_subcommand("cases", "Cases by duration");
  std::size_t top = 0;
  cases->add_option("--process", process, "Process key")->required();
  cases->add_option("--top", top, "Keep the N longest cases")->check(CLI::PositiveNumber);

  auto* decisions = app.add_subcommand("decisions", "Guards at exclusive gateways");
  double floor = 0.75;
  decisions->add_option("--process", process, "Process key")->required();
  decisions->add_option("--model", model_path, "BPMN file")->required();
  decisions->add_option("--accuracy-floor", floor, "Minimum training accuracy")
      ->check(CLI::Range(0.0, 1.0));

  auto* serve = app.add_subcommand("serve", "Serve the JSON API");
  std::string host = "127.0.0.1";
  int port = 0;
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (default from config)")->check(CLI::Range(1, 65535));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    const Config config = load_config(config_path);

    if (extract->parsed()) {
      const ExtractReport report = run_extract(config);
      for (const auto& w : report.warnings) err << "warning: " << w << "\n";
      for (const auto& [key, n] : report.new_events) out << key << ": " << n << " new events\n";
      if (report.rejected_duplicates) {
        out << report.rejected_duplicates << " duplicate rows rejected\n";
      }
      if (report.models_published) out << report.models_published << " models published\n";
      out << report.total_new_events << " new events\n";
      return kExitOk;
    }

    if (serve->parsed()) {
      const Service service(config.output_dir);
      const int p = port ? port : config.service_port;
      err << "serving " << config.output_dir.string() << " on http://" << host << ":" << p << "\n";
      service.serve(host, p, config.ui_dir);
      return kExitOk;
    }

    const EventLog log = require_log(config, process);

    if (discover->parsed()) {
      if (format == "dfg") {
        out << to_json(discover_dfg(log)).dump(2) << "\n";
      } else {
        const ProcessTree tree = inductive_miner(log, MinerOptions{noise});
        if (format == "tree") {
          out << to_string(tree) << "\n";
        } else {
          out << to_json(tree_to_petri(tree)).dump(2) << "\n";
        }
      }
    } else if (conform->parsed()) {
      const LoadedModel model = load_model(model_path);
      const EventLog replayed = model.graph ? restrict_to_labelled_nodes(log, *model.graph) : log;
      Json doc = {{"fitness", to_json(replay_fitness(replayed, model.net))},
                  {"precision", to_json(etc_precision(replayed, model.net))}};
      out << doc.dump(2) << "\n";
    } else if (sna->parsed()) {
      const SnaMetric m = *parse_sna_metric(metric);
      const ResourceMatrix matrix =
          m == SnaMetric::kHandover ? handover_of_work(log, normalize) : social_network(log, m);
      out << to_json(matrix).dump(2) << "\n";
    } else if (cases->parsed()) {
      auto list = case_statistics(log);
      if (top && list.size() > top) list.resize(top);
      out << case_list_json(list).dump(2) << "\n";
    } else if (decisions->parsed()) {
      const BpmnGraph graph = parse_bpmn(read_text(model_path));
      const DecisionResult result = decision_mining(log, graph, DecisionOptions{floor});
      for (const auto& w : result.warnings) err << "warning: " << w << "\n";
      out << to_json(result).dump(2) << "\n";
    }
    return kExitOk;
  } catch (const UnknownProcess& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnknownProcess;
  } catch (const SourceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSourceUnreachable;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace procmine
