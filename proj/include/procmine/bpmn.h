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

#ifndef PROCMINE_BPMN_H_
#define PROCMINE_BPMN_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "procmine/errors.h"
#include "procmine/eventlog.h"
#include "procmine/petri_net.h"

namespace procmine {

inline constexpr std::string_view kBpmnModelNamespace =
    "http://www.omg.org/spec/BPMN/20100524/MODEL";

enum class BpmnNodeKind { kStartEvent, kEndEvent, kTask, kExclusiveGateway, kParallelGateway, kOther };

struct BpmnNode {
  std::string id;
  std::string name;
  BpmnNodeKind kind = BpmnNodeKind::kOther;
  std::string element;  // BPMN element local name, e.g. "userTask", "inclusiveGateway"

  // Name when present, otherwise the id; matches how the engine logs activities.
  const std::string& label() const { return name.empty() ? id : name; }
};

struct SequenceFlow {
  std::string id;
  std::string source;
  std::string target;
};

// Flow nodes and sequence flows of one BPMN process. Nodes nested in
// subprocesses are included; their subprocess node has kind kOther.
struct BpmnGraph {
  std::string process_id;
  std::string process_name;
  std::map<std::string, BpmnNode> nodes;
  std::vector<SequenceFlow> flows;

  std::vector<const SequenceFlow*> incoming(std::string_view node_id) const;
  std::vector<const SequenceFlow*> outgoing(std::string_view node_id) const;
};

std::string_view node_kind_name(BpmnNodeKind kind);

class UnsupportedConstruct : public Error {
 public:
  UnsupportedConstruct(std::string kind, std::string node_id);

  const std::string& kind() const { return kind_; }
  const std::string& node_id() const { return node_id_; }

 private:
  std::string kind_;
  std::string node_id_;
};

// Parses every <process> of a BPMN 2.0 definitions document. Throws
// ParseError on malformed XML, a non-BPMN root, or a sequence flow that
// references a missing node (flow and node ids named).
std::vector<BpmnGraph> parse_bpmn_definitions(std::string_view xml);

// The first process that declares flow nodes.
BpmnGraph parse_bpmn(std::string_view xml);

struct ModelLoadResult {
  std::map<std::string, BpmnGraph> models;  // keyed by process definition key
  std::vector<std::string> warnings;        // skipped files, failed definitions
};

// Recursively scans `dir` for *.bpmn and *.bpmn20.xml files.
ModelLoadResult load_models_from_directory(const std::filesystem::path& dir);

// Lists the latest process definitions under `base_url` and fetches each
// diagram's bpmn20Xml. Throws SourceError when the listing itself fails;
// per-definition failures are collected as warnings.
ModelLoadResult load_models_from_rest(const std::string& base_url);

// Raw XML of each model, keyed like the graphs; used to publish models.
std::map<std::string, std::string> fetch_model_xml_from_rest(const std::string& base_url,
                                                             std::vector<std::string>* warnings);

// Chooses the REST loader for http:// and https:// sources, the directory
// loader otherwise.
ModelLoadResult load_models(const std::string& source);

// Converts start/end events, tasks, exclusive and parallel gateways. Throws
// UnsupportedConstruct for any other node kind and ValidationError for
// structural problems (start-event count other than one, tasks or events with
// more than one incoming or outgoing flow, disconnected nodes).
PetriNet bpmn_to_petri(const BpmnGraph& graph);

struct NodeDecoration {
  std::size_t frequency = 0;
  double mean_duration_seconds = 0.0;
};

struct DecoratedModel {
  std::map<std::string, NodeDecoration> nodes;  // every graph node
  std::map<std::string, std::size_t> flows;     // every flow id
  std::map<std::string, std::size_t> unmatched;  // activity_id -> events not in the graph
};

// Frequencies from activity_id counts; flow frequencies from directly-follows
// pairs of activity ids that match a flow's (source, target).
DecoratedModel decorate_model(const BpmnGraph& graph, const EventLog& log);

}  // namespace procmine

#endif  // PROCMINE_BPMN_H_
