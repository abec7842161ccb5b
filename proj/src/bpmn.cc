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

#include "procmine/bpmn.h"

#include <set>

#include "procmine/xml.h"

namespace procmine {
namespace {

const std::map<std::string_view, BpmnNodeKind>& flow_node_elements() {
  static const std::map<std::string_view, BpmnNodeKind> kElements = {
      {"startEvent", BpmnNodeKind::kStartEvent},
      {"endEvent", BpmnNodeKind::kEndEvent},
      {"task", BpmnNodeKind::kTask},
      {"userTask", BpmnNodeKind::kTask},
      {"serviceTask", BpmnNodeKind::kTask},
      {"scriptTask", BpmnNodeKind::kTask},
      {"businessRuleTask", BpmnNodeKind::kTask},
      {"manualTask", BpmnNodeKind::kTask},
      {"receiveTask", BpmnNodeKind::kTask},
      {"sendTask", BpmnNodeKind::kTask},
      {"callActivity", BpmnNodeKind::kTask},
      {"exclusiveGateway", BpmnNodeKind::kExclusiveGateway},
      {"parallelGateway", BpmnNodeKind::kParallelGateway},
      {"inclusiveGateway", BpmnNodeKind::kOther},
      {"eventBasedGateway", BpmnNodeKind::kOther},
      {"complexGateway", BpmnNodeKind::kOther},
      {"intermediateCatchEvent", BpmnNodeKind::kOther},
      {"intermediateThrowEvent", BpmnNodeKind::kOther},
      {"boundaryEvent", BpmnNodeKind::kOther},
      {"subProcess", BpmnNodeKind::kOther},
      {"transaction", BpmnNodeKind::kOther},
      {"adHocSubProcess", BpmnNodeKind::kOther},
  };
  return kElements;
}

bool is_container(std::string_view element) {
  return element == "subProcess" || element == "transaction" || element == "adHocSubProcess";
}

void collect(const xml::Element& scope, BpmnGraph& graph) {
  for (const auto& el : scope.children) {
    if (el.ns != kBpmnModelNamespace) continue;
    if (el.name == "sequenceFlow") {
      graph.flows.push_back(SequenceFlow{el.attribute_or("id", ""), el.attribute_or("sourceRef", ""),
                                         el.attribute_or("targetRef", "")});
      continue;
    }
    auto kind = flow_node_elements().find(el.name);
    if (kind == flow_node_elements().end()) continue;
    BpmnNode node{el.attribute_or("id", ""), el.attribute_or("name", ""), kind->second, el.name};
    if (node.id.empty()) {
      throw ParseError("bpmn: <" + el.name + "> without id at line " + std::to_string(el.line));
    }
    const std::string id = node.id;
    if (!graph.nodes.emplace(id, std::move(node)).second) {
      throw ParseError("bpmn: duplicate flow node id '" + id + "'");
    }
    if (is_container(el.name)) collect(el, graph);
  }
}

void check_flows(const BpmnGraph& graph) {
  for (const auto& f : graph.flows) {
    if (f.id.empty()) throw ParseError("bpmn: sequenceFlow without id");
    if (!graph.nodes.contains(f.source)) {
      throw ParseError("bpmn: sequenceFlow '" + f.id + "' references missing source '" + f.source +
                       "'");
    }
    if (!graph.nodes.contains(f.target)) {
      throw ParseError("bpmn: sequenceFlow '" + f.id + "' references missing target '" + f.target +
                       "'");
    }
  }
}

}  // namespace

std::vector<const SequenceFlow*> BpmnGraph::incoming(std::string_view node_id) const {
  std::vector<const SequenceFlow*> out;
  for (const auto& f : flows) {
    if (f.target == node_id) out.push_back(&f);
  }
  return out;
}

std::vector<const SequenceFlow*> BpmnGraph::outgoing(std::string_view node_id) const {
  std::vector<const SequenceFlow*> out;
  for (const auto& f : flows) {
    if (f.source == node_id) out.push_back(&f);
  }
  return out;
}

std::string_view node_kind_name(BpmnNodeKind kind) {
  switch (kind) {
    case BpmnNodeKind::kStartEvent: return "startEvent";
    case BpmnNodeKind::kEndEvent: return "endEvent";
    case BpmnNodeKind::kTask: return "task";
    case BpmnNodeKind::kExclusiveGateway: return "exclusiveGateway";
    case BpmnNodeKind::kParallelGateway: return "parallelGateway";
    case BpmnNodeKind::kOther: return "other";
  }
  return "other";
}

UnsupportedConstruct::UnsupportedConstruct(std::string kind, std::string node_id)
    : Error("unsupported BPMN construct '" + kind + "' at node '" + node_id + "'"),
      kind_(std::move(kind)),
      node_id_(std::move(node_id)) {}

std::vector<BpmnGraph> parse_bpmn_definitions(std::string_view xml_text) {
  const xml::Element root = xml::parse(xml_text);
  if (root.ns != kBpmnModelNamespace || root.name != "definitions") {
    throw ParseError("bpmn: root element is not BPMN 2.0 <definitions>");
  }
  std::vector<BpmnGraph> graphs;
  for (const auto& el : root.children) {
    if (el.ns != kBpmnModelNamespace || el.name != "process") continue;
    BpmnGraph g;
    g.process_id = el.attribute_or("id", "");
    g.process_name = el.attribute_or("name", "");
    collect(el, g);
    check_flows(g);
    graphs.push_back(std::move(g));
  }
  return graphs;
}

BpmnGraph parse_bpmn(std::string_view xml_text) {
  auto graphs = parse_bpmn_definitions(xml_text);
  for (auto& g : graphs) {
    if (!g.nodes.empty()) return std::move(g);
  }
  throw ParseError("bpmn: document contains no process with flow nodes");
}

PetriNet bpmn_to_petri(const BpmnGraph& graph) {
  for (const auto& [id, node] : graph.nodes) {
    if (node.kind == BpmnNodeKind::kOther) throw UnsupportedConstruct(node.element, id);
  }
  std::vector<const BpmnNode*> starts;
  for (const auto& [id, node] : graph.nodes) {
    if (node.kind == BpmnNodeKind::kStartEvent) starts.push_back(&node);
  }
  if (starts.empty()) throw ValidationError("bpmn: process has no start event");
  if (starts.size() > 1) {
    throw ValidationError("bpmn: multiple start events ('" + starts[0]->id + "', '" +
                          starts[1]->id + "')");
  }

  PetriNet net;
  std::map<std::string, PlaceId> flow_place;
  for (const auto& f : graph.flows) flow_place[f.id] = net.add_place(f.id);
  auto fresh = [&](std::string name) {
    while (net.find_place(name)) name += "_";
    return net.add_place(name);
  };
  const PlaceId source = fresh("source");
  const PlaceId sink = fresh("sink");

  for (const auto& [id, node] : graph.nodes) {
    const auto in = graph.incoming(id);
    const auto out = graph.outgoing(id);
    auto require = [&](bool ok, const std::string& what) {
      if (!ok) throw ValidationError("bpmn: " + node.element + " '" + id + "' " + what);
    };
    switch (node.kind) {
      case BpmnNodeKind::kStartEvent: {
        require(in.empty(), "must not have incoming flows");
        require(out.size() == 1, "needs exactly one outgoing flow");
        const auto t = net.add_transition(id, node.label());
        net.add_input_arc(source, t);
        net.add_output_arc(t, flow_place.at(out[0]->id));
        break;
      }
      case BpmnNodeKind::kEndEvent: {
        require(in.size() == 1, "needs exactly one incoming flow");
        require(out.empty(), "must not have outgoing flows");
        const auto t = net.add_transition(id, node.label());
        net.add_input_arc(flow_place.at(in[0]->id), t);
        net.add_output_arc(t, sink);
        break;
      }
      case BpmnNodeKind::kTask: {
        require(in.size() == 1, "needs exactly one incoming flow");
        require(out.size() == 1, "needs exactly one outgoing flow");
        const auto t = net.add_transition(id, node.label());
        net.add_input_arc(flow_place.at(in[0]->id), t);
        net.add_output_arc(t, flow_place.at(out[0]->id));
        break;
      }
      case BpmnNodeKind::kExclusiveGateway:
        require(!in.empty() && !out.empty(), "needs incoming and outgoing flows");
        for (const auto* i : in) {
          for (const auto* o : out) {
            const auto t = net.add_transition(id + "/" + i->id + "/" + o->id, std::nullopt);
            net.add_input_arc(flow_place.at(i->id), t);
            net.add_output_arc(t, flow_place.at(o->id));
          }
        }
        break;
      case BpmnNodeKind::kParallelGateway: {
        require(!in.empty() && !out.empty(), "needs incoming and outgoing flows");
        const auto t = net.add_transition(id, std::nullopt);
        for (const auto* i : in) net.add_input_arc(flow_place.at(i->id), t);
        for (const auto* o : out) net.add_output_arc(t, flow_place.at(o->id));
        break;
      }
      case BpmnNodeKind::kOther:
        break;
    }
  }
  net.set_initial(Marking{{source, 1}});
  net.set_final(Marking{{sink, 1}});
  return net;
}

DecoratedModel decorate_model(const BpmnGraph& graph, const EventLog& log) {
  DecoratedModel out;
  std::map<std::string, double> duration_sum;
  for (const auto& [id, _] : graph.nodes) out.nodes[id];
  std::map<std::pair<std::string, std::string>, std::string> flow_by_ends;
  for (const auto& f : graph.flows) {
    out.flows[f.id] = 0;
    flow_by_ends.emplace(std::make_pair(f.source, f.target), f.id);
  }

  for (const auto& trace : log.traces) {
    const auto& ev = trace.events;
    for (std::size_t i = 0; i < ev.size(); ++i) {
      auto node = out.nodes.find(ev[i].activity_id);
      if (node == out.nodes.end()) {
        ++out.unmatched[ev[i].activity_id];
      } else {
        ++node->second.frequency;
        duration_sum[ev[i].activity_id] += seconds_between(ev[i].start, ev[i].end);
      }
      if (i + 1 < ev.size()) {
        auto f = flow_by_ends.find({ev[i].activity_id, ev[i + 1].activity_id});
        if (f != flow_by_ends.end()) ++out.flows[f->second];
      }
    }
  }
  for (auto& [id, d] : out.nodes) {
    if (d.frequency > 0) d.mean_duration_seconds = duration_sum[id] / static_cast<double>(d.frequency);
  }
  return out;
}

}  // namespace procmine
