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

#include "procmine/json_export.h"

#include "procmine/errors.h"

namespace procmine {
namespace {

Json counted(const std::map<std::string, std::size_t>& counts) {
  Json out = Json::object();
  for (const auto& [name, count] : counts) out[name] = count;
  return out;
}

Json marking_json(const PetriNet& net, const Marking& m) {
  Json out = Json::object();
  for (const auto& [place, n] : m.tokens()) out[net.place_name(place)] = n;
  return out;
}

}  // namespace

Json to_json(const AttributeValue& value) {
  Json out = {{"type", std::string(attribute_type_name(value))}};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Timestamp>) {
          out["value"] = format_iso8601(v);
        } else {
          out["value"] = v;
        }
      },
      value);
  return out;
}

Json to_json(const Event& e) {
  Json attributes = Json::object();
  for (const auto& [name, value] : e.attributes) attributes[name] = to_json(value);
  return {{"event_id", e.event_id},
          {"activity", e.activity},
          {"activity_id", e.activity_id},
          {"activity_type", e.activity_type},
          {"start", format_iso8601(e.start)},
          {"end", format_iso8601(e.end)},
          {"resource", e.resource ? Json(*e.resource) : Json(nullptr)},
          {"attributes", std::move(attributes)}};
}

Json to_json(const Dfg& dfg) {
  Json edges = Json::array();
  for (const auto& [pair, edge] : dfg.edges) {
    edges.push_back({{"from", pair.first},
                     {"to", pair.second},
                     {"count", edge.count},
                     {"mean_gap", edge.mean_gap_seconds}});
  }
  return {{"activities", counted(dfg.activities)},
          {"edges", std::move(edges)},
          {"start", counted(dfg.start_activities)},
          {"end", counted(dfg.end_activities)}};
}

Json to_json(const PetriNet& net) {
  Json places = Json::array();
  for (const auto& name : net.places()) places.push_back({{"id", name}});
  Json transitions = Json::array();
  Json arcs = Json::array();
  for (const auto& t : net.transitions()) {
    transitions.push_back({{"id", t.id}, {"label", t.label ? Json(*t.label) : Json(nullptr)}});
    for (PlaceId p : t.inputs) arcs.push_back({{"source", net.place_name(p)}, {"target", t.id}});
    for (PlaceId p : t.outputs) arcs.push_back({{"source", t.id}, {"target", net.place_name(p)}});
  }
  return {{"places", std::move(places)},
          {"transitions", std::move(transitions)},
          {"arcs", std::move(arcs)},
          {"initial_marking", marking_json(net, net.initial())},
          {"final_marking", marking_json(net, net.final_marking())}};
}

Json to_json(const ResourceMatrix& m) {
  return {{"metric", std::string(sna_metric_name(m.metric))},
          {"resources", m.resources},
          {"values", m.values}};
}

Json to_json(const CaseSummary& s) {
  return {{"case_id", s.case_id},
          {"n_events", s.n_events},
          {"start", format_iso8601(s.start)},
          {"end", format_iso8601(s.end)},
          {"duration_seconds", s.duration_seconds}};
}

Json to_json(const Guard& g) {
  return {{"gateway_id", g.gateway_id},
          {"branch", g.branch},
          {"attribute", g.attribute},
          {"comparator", std::string(comparator_symbol(g.comparator))},
          {"constant", to_json(g.constant)},
          {"support", g.support},
          {"accuracy", g.accuracy}};
}

Json to_json(const DecisionResult& r) {
  Json guards = Json::array();
  for (const auto& g : r.guards) guards.push_back(to_json(g));
  Json suppressed = Json::array();
  for (const auto& g : r.suppressed) suppressed.push_back(to_json(g));
  return {{"guards", std::move(guards)},
          {"suppressed", std::move(suppressed)},
          {"warnings", r.warnings}};
}

Json to_json(const TokenCounts& c) {
  return {{"missing", c.missing},
          {"remaining", c.remaining},
          {"consumed", c.consumed},
          {"produced", c.produced}};
}

Json to_json(const FitnessResult& r) {
  return {{"fitness", r.fitness}, {"tokens", to_json(r.total)}, {"traces", r.traces.size()}};
}

Json to_json(const PrecisionResult& r) {
  return {{"precision", r.precision},
          {"escaping", r.escaping},
          {"allowed", r.allowed},
          {"skipped_prefixes", r.skipped_prefixes}};
}

Json to_json(const BpmnGraph& graph, const DecoratedModel& decoration) {
  Json nodes = Json::array();
  for (const auto& [id, node] : graph.nodes) {
    const auto it = decoration.nodes.find(id);
    const NodeDecoration d = it == decoration.nodes.end() ? NodeDecoration{} : it->second;
    nodes.push_back({{"id", id},
                     {"name", node.name},
                     {"kind", std::string(node_kind_name(node.kind))},
                     {"frequency", d.frequency},
                     {"mean_duration_seconds", d.mean_duration_seconds}});
  }
  Json flows = Json::array();
  for (const auto& f : graph.flows) {
    const auto it = decoration.flows.find(f.id);
    flows.push_back({{"id", f.id},
                     {"source", f.source},
                     {"target", f.target},
                     {"frequency", it == decoration.flows.end() ? 0 : it->second}});
  }
  Json unmatched = Json::object();
  for (const auto& [id, n] : decoration.unmatched) unmatched[id] = n;
  return {{"process_id", graph.process_id},
          {"nodes", std::move(nodes)},
          {"flows", std::move(flows)},
          {"unmatched", std::move(unmatched)}};
}

Json case_list_json(const std::vector<CaseSummary>& cases) {
  Json out = Json::array();
  for (const auto& c : cases) out.push_back(to_json(c));
  return out;
}

Json case_detail_json(const Trace& trace) {
  Json events = Json::array();
  for (const auto& e : trace.events) events.push_back(to_json(e));
  return {{"case_id", trace.case_id}, {"events", std::move(events)}};
}

PetriNet petri_net_from_json(const Json& doc) {
  PetriNet net;
  std::string member = "places";
  try {
    for (const auto& p : doc.at("places")) net.add_place(p.at("id").get<std::string>());
    member = "transitions";
    for (const auto& t : doc.at("transitions")) {
      const auto& label = t.at("label");
      net.add_transition(t.at("id").get<std::string>(),
                         label.is_null() ? std::nullopt
                                         : std::optional<std::string>(label.get<std::string>()));
    }
    member = "arcs";
    for (const auto& a : doc.at("arcs")) {
      const auto source = a.at("source").get<std::string>();
      const auto target = a.at("target").get<std::string>();
      if (auto p = net.find_place(source)) {
        auto t = net.find_transition(target);
        if (!t) throw ParseError("net json: arc target '" + target + "' is not a transition");
        net.add_input_arc(*p, *t);
      } else if (auto t = net.find_transition(source)) {
        auto q = net.find_place(target);
        if (!q) throw ParseError("net json: arc target '" + target + "' is not a place");
        net.add_output_arc(*t, *q);
      } else {
        throw ParseError("net json: arc source '" + source + "' is unknown");
      }
    }
    for (const char* key : {"initial_marking", "final_marking"}) {
      member = key;
      Marking m;
      for (const auto& [name, n] : doc.at(key).items()) {
        auto p = net.find_place(name);
        if (!p) throw ParseError("net json: " + member + " names unknown place '" + name + "'");
        m.add(*p, n.get<int>());
      }
      if (member == "initial_marking") {
        net.set_initial(std::move(m));
      } else {
        net.set_final(std::move(m));
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError("net json: bad '" + member + "': " + e.what());
  } catch (const ValidationError& e) {
    throw ParseError(std::string("net json: ") + e.what());
  }
  return net;
}

}  // namespace procmine
