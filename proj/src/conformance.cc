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

#include "procmine/conformance.h"

#include <deque>
#include <map>
#include <set>

namespace procmine {
namespace {

constexpr std::size_t kMaxSearchStates = 20'000;

// Shortest silent firing sequence from `start` to a marking accepted by
// `goal`. Returns nullopt when none exists within the depth cap.
template <typename Goal>
std::optional<std::vector<TransitionId>> silent_path(const PetriNet& net, const Marking& start,
                                                     Goal goal) {
  if (goal(start)) return std::vector<TransitionId>{};
  const std::size_t max_depth = 2 * net.transition_count();
  struct Node {
    Marking marking;
    std::size_t parent;
    TransitionId via;
    std::size_t depth;
  };
  std::vector<Node> nodes{{start, 0, 0, 0}};
  std::set<Marking> seen{start};
  std::deque<std::size_t> queue{0};
  while (!queue.empty() && nodes.size() < kMaxSearchStates) {
    const std::size_t i = queue.front();
    queue.pop_front();
    if (nodes[i].depth >= max_depth) continue;
    for (const TransitionId t : enabled(net, nodes[i].marking)) {
      if (!net.transition(t).silent()) continue;
      Marking next = fire(net, nodes[i].marking, t);
      if (!seen.insert(next).second) continue;
      nodes.push_back(Node{next, i, t, nodes[i].depth + 1});
      if (goal(next)) {
        std::vector<TransitionId> path;
        for (std::size_t n = nodes.size() - 1; n != 0; n = nodes[n].parent) {
          path.push_back(nodes[n].via);
        }
        return std::vector<TransitionId>(path.rbegin(), path.rend());
      }
      queue.push_back(nodes.size() - 1);
    }
  }
  return std::nullopt;
}

class Replayer {
 public:
  explicit Replayer(const PetriNet& net) : net_(net) {}

  void fire_counted(Marking& m, TransitionId t, TokenCounts& counts) const {
    m = fire(net_, m, t);
    counts.consumed += net_.transition(t).inputs.size();
    counts.produced += net_.transition(t).outputs.size();
  }

  // Moves `m` forward by one visible label without inserting tokens. Returns
  // false when the label cannot be fired.
  bool step_strict(Marking& m, const std::string& label, TokenCounts& counts) const {
    const auto candidates = candidates_for(label);
    if (candidates.empty()) return false;
    auto path = silent_path(net_, m, [&](const Marking& x) {
      for (const auto t : candidates) {
        if (is_enabled(net_, x, t)) return true;
      }
      return false;
    });
    if (!path) return false;
    for (const auto s : *path) fire_counted(m, s, counts);
    for (const auto t : candidates) {
      if (is_enabled(net_, m, t)) {
        fire_counted(m, t, counts);
        return true;
      }
    }
    return false;
  }

  void step_forced(Marking& m, const std::string& label, TokenCounts& counts) const {
    if (step_strict(m, label, counts)) return;
    const auto candidates = candidates_for(label);
    if (candidates.empty()) {
      ++counts.missing;
      ++counts.consumed;
      return;
    }
    const TransitionId t = candidates.front();
    for (const PlaceId p : net_.transition(t).inputs) {
      if (m.count(p) == 0) {
        m.add(p);
        ++counts.missing;
      }
    }
    fire_counted(m, t, counts);
  }

  void finish(Marking& m, TokenCounts& counts) const {
    const Marking& target = net_.final_marking();
    auto path = silent_path(net_, m, [&](const Marking& x) { return x == target; });
    if (path) {
      for (const auto s : *path) fire_counted(m, s, counts);
    }
    for (const auto& [p, n] : target.tokens()) {
      const int taken = m.remove(p, n);
      counts.missing += static_cast<std::size_t>(n - taken);
      counts.consumed += static_cast<std::size_t>(n);
    }
    counts.remaining += static_cast<std::size_t>(m.total());
  }

  // Visible labels enabled anywhere in the silent closure of `m`.
  std::set<std::string> allowed_labels(const Marking& m) const {
    std::set<std::string> out;
    std::set<Marking> seen{m};
    std::deque<Marking> queue{m};
    while (!queue.empty() && seen.size() < kMaxSearchStates) {
      const Marking cur = std::move(queue.front());
      queue.pop_front();
      for (const TransitionId t : enabled(net_, cur)) {
        const auto& tr = net_.transition(t);
        if (tr.label) {
          out.insert(*tr.label);
          continue;
        }
        Marking next = fire(net_, cur, t);
        if (seen.insert(next).second) queue.push_back(std::move(next));
      }
    }
    return out;
  }

 private:
  const std::vector<TransitionId>& candidates_for(const std::string& label) const {
    auto it = by_label_.find(label);
    if (it == by_label_.end()) it = by_label_.emplace(label, net_.transitions_with_label(label)).first;
    return it->second;
  }

  const PetriNet& net_;
  mutable std::map<std::string, std::vector<TransitionId>> by_label_;
};

}  // namespace

double TokenCounts::fitness() const {
  const double m = consumed ? 1.0 - static_cast<double>(missing) / static_cast<double>(consumed)
                            : 1.0;
  const double r = produced ? 1.0 - static_cast<double>(remaining) / static_cast<double>(produced)
                            : 1.0;
  return 0.5 * m + 0.5 * r;
}

TokenCounts& TokenCounts::operator+=(const TokenCounts& o) {
  missing += o.missing;
  remaining += o.remaining;
  consumed += o.consumed;
  produced += o.produced;
  return *this;
}

TokenCounts replay_trace(const PetriNet& net, const std::vector<std::string>& labels) {
  const Replayer replayer(net);
  TokenCounts counts;
  Marking m = net.initial();
  counts.produced += static_cast<std::size_t>(m.total());
  for (const auto& label : labels) replayer.step_forced(m, label, counts);
  replayer.finish(m, counts);
  return counts;
}

FitnessResult replay_fitness(const EventLog& log, const PetriNet& net) {
  FitnessResult result;
  std::map<std::vector<std::string>, TokenCounts> cache;
  for (const auto& trace : log.traces) {
    std::vector<std::string> labels;
    labels.reserve(trace.events.size());
    for (const auto& e : trace.events) labels.push_back(e.activity);
    auto it = cache.find(labels);
    if (it == cache.end()) it = cache.emplace(labels, replay_trace(net, labels)).first;
    result.traces.push_back(TraceFitness{trace.case_id, it->second, it->second.fitness()});
    result.total += it->second;
  }
  result.fitness = result.total.fitness();
  return result;
}

PrecisionResult etc_precision(const std::vector<std::vector<std::string>>& log,
                              const PetriNet& net) {
  struct State {
    std::size_t weight = 0;
    std::set<std::string> reflected;
    std::map<std::string, std::size_t> children;
  };
  std::vector<State> states(1);
  for (const auto& trace : log) {
    std::size_t s = 0;
    ++states[s].weight;
    for (const auto& label : trace) {
      states[s].reflected.insert(label);
      auto it = states[s].children.find(label);
      if (it == states[s].children.end()) {
        it = states[s].children.emplace(label, states.size()).first;
        states.emplace_back();
      }
      s = it->second;
      ++states[s].weight;
    }
  }

  const Replayer replayer(net);
  PrecisionResult result;
  std::vector<std::pair<std::size_t, Marking>> stack{{0, net.initial()}};
  while (!stack.empty()) {
    auto [s, marking] = std::move(stack.back());
    stack.pop_back();
    const State& st = states[s];
    const auto allowed = replayer.allowed_labels(marking);
    std::size_t escaping = 0;
    for (const auto& a : allowed) {
      if (!st.reflected.contains(a)) ++escaping;
    }
    result.allowed += static_cast<double>(st.weight * allowed.size());
    result.escaping += static_cast<double>(st.weight * escaping);
    for (const auto& [label, child] : st.children) {
      Marking next = marking;
      TokenCounts ignored;
      if (replayer.step_strict(next, label, ignored)) {
        stack.emplace_back(child, std::move(next));
      } else {
        // The child state and its whole subtree are unreachable.
        std::vector<std::size_t> sub{child};
        while (!sub.empty()) {
          const auto c = sub.back();
          sub.pop_back();
          ++result.skipped_prefixes;
          for (const auto& [_, g] : states[c].children) sub.push_back(g);
        }
      }
    }
  }
  result.precision = result.allowed > 0 ? 1.0 - result.escaping / result.allowed : 1.0;
  return result;
}

PrecisionResult etc_precision(const EventLog& log, const PetriNet& net) {
  std::vector<std::vector<std::string>> labels;
  labels.reserve(log.traces.size());
  for (const auto& t : log.traces) {
    std::vector<std::string> seq;
    for (const auto& e : t.events) seq.push_back(e.activity);
    labels.push_back(std::move(seq));
  }
  return etc_precision(labels, net);
}

}  // namespace procmine
