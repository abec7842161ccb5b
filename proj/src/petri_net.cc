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

#include "procmine/petri_net.h"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_map>
#include <utility>

#include "procmine/errors.h"

namespace procmine {

Marking::Marking(std::initializer_list<std::pair<const PlaceId, int>> init) {
  for (const auto& [p, n] : init) add(p, n);
}

int Marking::count(PlaceId p) const {
  auto it = tokens_.find(p);
  return it == tokens_.end() ? 0 : it->second;
}

void Marking::add(PlaceId p, int n) {
  if (n <= 0) return;
  tokens_[p] += n;
}

int Marking::remove(PlaceId p, int n) {
  auto it = tokens_.find(p);
  if (it == tokens_.end() || n <= 0) return 0;
  const int taken = std::min(n, it->second);
  it->second -= taken;
  if (it->second == 0) tokens_.erase(it);
  return taken;
}

int Marking::total() const {
  int n = 0;
  for (const auto& [_, c] : tokens_) n += c;
  return n;
}

bool Marking::covers(const Marking& other) const {
  for (const auto& [p, c] : other.tokens_) {
    if (count(p) < c) return false;
  }
  return true;
}

PlaceId PetriNet::add_place(std::string name) {
  if (place_index_.contains(name)) throw ValidationError("duplicate place '" + name + "'");
  const PlaceId id = places_.size();
  place_index_.emplace(name, id);
  places_.push_back(std::move(name));
  return id;
}

TransitionId PetriNet::add_transition(std::string id, std::optional<std::string> label) {
  if (transition_index_.contains(id)) throw ValidationError("duplicate transition '" + id + "'");
  const TransitionId t = transitions_.size();
  transition_index_.emplace(id, t);
  transitions_.push_back(Transition{std::move(id), std::move(label), {}, {}});
  return t;
}

void PetriNet::add_input_arc(PlaceId from, TransitionId to) {
  auto& in = transitions_.at(to).inputs;
  if (from >= places_.size()) throw ValidationError("arc from unknown place");
  if (std::find(in.begin(), in.end(), from) != in.end()) {
    throw ValidationError("duplicate arc " + places_[from] + " -> " + transitions_[to].id);
  }
  in.push_back(from);
}

void PetriNet::add_output_arc(TransitionId from, PlaceId to) {
  auto& out = transitions_.at(from).outputs;
  if (to >= places_.size()) throw ValidationError("arc to unknown place");
  if (std::find(out.begin(), out.end(), to) != out.end()) {
    throw ValidationError("duplicate arc " + transitions_[from].id + " -> " + places_[to]);
  }
  out.push_back(to);
}

std::optional<PlaceId> PetriNet::find_place(std::string_view name) const {
  auto it = place_index_.find(name);
  if (it == place_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<TransitionId> PetriNet::find_transition(std::string_view id) const {
  auto it = transition_index_.find(id);
  if (it == transition_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<TransitionId> PetriNet::transitions_with_label(std::string_view label) const {
  std::vector<TransitionId> out;
  for (TransitionId t = 0; t < transitions_.size(); ++t) {
    if (transitions_[t].label && *transitions_[t].label == label) out.push_back(t);
  }
  return out;
}

std::set<std::string> PetriNet::visible_labels() const {
  std::set<std::string> out;
  for (const auto& t : transitions_) {
    if (t.label) out.insert(*t.label);
  }
  return out;
}

std::vector<TransitionId> PetriNet::consumers(PlaceId p) const {
  std::vector<TransitionId> out;
  for (TransitionId t = 0; t < transitions_.size(); ++t) {
    const auto& in = transitions_[t].inputs;
    if (std::find(in.begin(), in.end(), p) != in.end()) out.push_back(t);
  }
  return out;
}

std::vector<TransitionId> PetriNet::producers(PlaceId p) const {
  std::vector<TransitionId> out;
  for (TransitionId t = 0; t < transitions_.size(); ++t) {
    const auto& o = transitions_[t].outputs;
    if (std::find(o.begin(), o.end(), p) != o.end()) out.push_back(t);
  }
  return out;
}

bool is_enabled(const PetriNet& net, const Marking& marking, TransitionId t) {
  for (const PlaceId p : net.transition(t).inputs) {
    if (marking.count(p) == 0) return false;
  }
  return true;
}

std::vector<TransitionId> enabled(const PetriNet& net, const Marking& marking) {
  std::vector<TransitionId> out;
  if (marking.empty()) return out;
  for (TransitionId t = 0; t < net.transition_count(); ++t) {
    if (!net.transition(t).inputs.empty() && is_enabled(net, marking, t)) out.push_back(t);
  }
  return out;
}

Marking fire(const PetriNet& net, const Marking& marking, TransitionId t) {
  if (!is_enabled(net, marking, t)) {
    throw ValidationError("transition '" + net.transition(t).id + "' is not enabled");
  }
  Marking next = marking;
  for (const PlaceId p : net.transition(t).inputs) next.remove(p);
  for (const PlaceId p : net.transition(t).outputs) next.add(p);
  return next;
}

bool is_workflow_net(const PetriNet& net) {
  const std::size_t np = net.place_count();
  std::vector<int> produced(np, 0), consumed(np, 0);
  for (const auto& t : net.transitions()) {
    for (const PlaceId p : t.outputs) ++produced[p];
    for (const PlaceId p : t.inputs) ++consumed[p];
  }
  std::optional<PlaceId> source, sink;
  for (PlaceId p = 0; p < np; ++p) {
    if (produced[p] == 0) {
      if (source) return false;
      source = p;
    }
    if (consumed[p] == 0) {
      if (sink) return false;
      sink = p;
    }
  }
  if (!source || !sink || *source == *sink) return false;
  if (net.initial() != Marking{{*source, 1}} || net.final_marking() != Marking{{*sink, 1}}) {
    return false;
  }

  // Nodes: places [0, np), transitions [np, np + nt).
  const std::size_t nt = net.transition_count();
  std::vector<std::vector<std::size_t>> fwd(np + nt), bwd(np + nt);
  for (TransitionId t = 0; t < nt; ++t) {
    for (const PlaceId p : net.transition(t).inputs) {
      fwd[p].push_back(np + t);
      bwd[np + t].push_back(p);
    }
    for (const PlaceId p : net.transition(t).outputs) {
      fwd[np + t].push_back(p);
      bwd[p].push_back(np + t);
    }
  }
  auto reach = [&](std::size_t start, const std::vector<std::vector<std::size_t>>& g) {
    std::vector<bool> seen(np + nt, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const auto n = stack.back();
      stack.pop_back();
      for (const auto m : g[n]) {
        if (!seen[m]) {
          seen[m] = true;
          stack.push_back(m);
        }
      }
    }
    return seen;
  };
  const auto from_source = reach(*source, fwd);
  const auto to_sink = reach(*sink, bwd);
  for (std::size_t n = 0; n < np + nt; ++n) {
    if (!from_source[n] || !to_sink[n]) return false;
  }
  return true;
}

SoundnessReport check_soundness(const PetriNet& net, std::size_t max_states) {
  SoundnessReport report;
  std::map<Marking, std::size_t> index;
  std::vector<Marking> states;
  std::vector<std::vector<std::size_t>> predecessors;
  std::vector<bool> fired(net.transition_count(), false);

  index.emplace(net.initial(), 0);
  states.push_back(net.initial());
  predecessors.emplace_back();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Marking current = states[i];
    for (const TransitionId t : enabled(net, current)) {
      fired[t] = true;
      Marking next = fire(net, current, t);
      auto [it, inserted] = index.emplace(next, states.size());
      if (inserted) {
        if (states.size() >= max_states) {
          report.bounded_exploration = false;
          report.reachable_markings = states.size();
          return report;
        }
        states.push_back(std::move(next));
        predecessors.emplace_back();
      }
      predecessors[it->second].push_back(i);
    }
  }
  report.reachable_markings = states.size();

  std::vector<bool> can_complete(states.size(), false);
  std::vector<std::size_t> stack;
  auto fin = index.find(net.final_marking());
  if (fin != index.end()) {
    can_complete[fin->second] = true;
    stack.push_back(fin->second);
  }
  while (!stack.empty()) {
    const auto s = stack.back();
    stack.pop_back();
    for (const auto p : predecessors[s]) {
      if (!can_complete[p]) {
        can_complete[p] = true;
        stack.push_back(p);
      }
    }
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!can_complete[i]) report.option_to_complete = false;
    if (states[i] != net.final_marking() && states[i].covers(net.final_marking())) {
      report.proper_completion = false;
    }
  }
  for (TransitionId t = 0; t < net.transition_count(); ++t) {
    if (!fired[t]) report.dead_transitions.push_back(net.transition(t).id);
  }
  return report;
}

std::set<LabelSequence> bounded_language(const PetriNet& net, std::size_t max_len,
                                         std::size_t max_states) {
  // Prefixes are interned in a trie so that search states stay small.
  struct TrieNode {
    std::size_t parent;
    std::string label;
    std::map<std::string, std::size_t> children;
  };
  std::vector<TrieNode> trie{{0, {}, {}}};
  std::vector<std::size_t> depth{0};
  auto child = [&](std::size_t node, const std::string& label) {
    auto it = trie[node].children.find(label);
    if (it != trie[node].children.end()) return it->second;
    const std::size_t id = trie.size();
    trie[node].children.emplace(label, id);
    trie.push_back(TrieNode{node, label, {}});
    depth.push_back(depth[node] + 1);
    return id;
  };

  std::set<std::pair<std::size_t, Marking>> visited;
  std::vector<std::pair<std::size_t, Marking>> stack;
  std::set<std::size_t> accepted;
  visited.emplace(0, net.initial());
  stack.emplace_back(0, net.initial());
  while (!stack.empty()) {
    auto [node, marking] = std::move(stack.back());
    stack.pop_back();
    if (marking == net.final_marking()) accepted.insert(node);
    for (const TransitionId t : enabled(net, marking)) {
      const auto& tr = net.transition(t);
      std::size_t next_node = node;
      if (tr.label) {
        if (depth[node] >= max_len) continue;
        next_node = child(node, *tr.label);
      }
      Marking next = fire(net, marking, t);
      if (visited.emplace(next_node, next).second) {
        if (visited.size() > max_states) {
          throw Error("bounded_language: more than " + std::to_string(max_states) +
                      " search states");
        }
        stack.emplace_back(next_node, std::move(next));
      }
    }
  }

  std::set<LabelSequence> language;
  for (std::size_t node : accepted) {
    LabelSequence seq(depth[node]);
    for (std::size_t i = depth[node]; i > 0; --i) {
      seq[i - 1] = trie[node].label;
      node = trie[node].parent;
    }
    language.insert(std::move(seq));
  }
  return language;
}

SimulationResult simulate(const PetriNet& net, std::size_t max_traces, std::size_t max_len,
                          std::uint64_t seed) {
  SimulationResult result;
  std::mt19937_64 rng(seed);
  const std::size_t step_cap = 64 * (max_len + 1) + 4 * net.transition_count();
  for (std::size_t walk = 0; walk < max_traces; ++walk) {
    Marking marking = net.initial();
    LabelSequence trace;
    bool ok = false;
    for (std::size_t step = 0; step < step_cap; ++step) {
      if (marking == net.final_marking()) {
        ok = true;
        break;
      }
      const auto options = enabled(net, marking);
      if (options.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
      const TransitionId t = options[pick(rng)];
      marking = fire(net, marking, t);
      if (const auto& label = net.transition(t).label) {
        if (trace.size() == max_len) break;
        trace.push_back(*label);
      }
    }
    if (ok) {
      result.traces.push_back(std::move(trace));
    } else {
      ++result.abandoned;
    }
  }
  return result;
}

}  // namespace procmine
