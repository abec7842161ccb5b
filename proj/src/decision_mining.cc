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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "procmine/analytics.h"

namespace procmine {
namespace {

constexpr double kTieEpsilon = 1e-12;

struct Instance {
  std::map<std::string, AttributeValue> snapshot;
  std::size_t label = 0;  // index into the gateway's outgoing flows
};

enum class FeatureKind { kNumeric, kText, kBool, kIgnored };

FeatureKind kind_of(const AttributeValue& v) {
  if (std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v)) {
    return FeatureKind::kNumeric;
  }
  if (std::holds_alternative<std::string>(v)) return FeatureKind::kText;
  if (std::holds_alternative<bool>(v)) return FeatureKind::kBool;
  return FeatureKind::kIgnored;
}

double numeric(const AttributeValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

using Counts = std::vector<std::size_t>;

double entropy(const Counts& counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

std::size_t sum(const Counts& counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

// Lowest label index among the most frequent.
std::size_t majority(const Counts& counts) {
  return static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

struct Split {
  Counts left;   // instances satisfying the predicate
  Counts right;
  double gain = 0.0;
  double accuracy = 0.0;
};

Split evaluate(const Counts& parent, Counts left) {
  Split s;
  s.right = parent;
  for (std::size_t k = 0; k < parent.size(); ++k) s.right[k] -= left[k];
  s.left = std::move(left);
  const double n = static_cast<double>(sum(parent));
  const double nl = static_cast<double>(sum(s.left));
  const double nr = static_cast<double>(sum(s.right));
  s.gain = entropy(parent) - (nl / n) * entropy(s.left) - (nr / n) * entropy(s.right);
  s.accuracy = static_cast<double>(s.left[majority(s.left)] + s.right[majority(s.right)]) / n;
  return s;
}

bool better(const Split& a, const Split& b) {
  if (a.gain > b.gain + kTieEpsilon) return true;
  if (a.gain < b.gain - kTieEpsilon) return false;
  return a.accuracy > b.accuracy + kTieEpsilon;
}

struct Stump {
  std::string attribute;
  FeatureKind kind = FeatureKind::kIgnored;
  AttributeValue constant;  // threshold, text value, or `true`
  Split split;
};

std::optional<Stump> best_numeric(const std::string& name, const std::vector<Instance>& data,
                                  const Counts& parent) {
  std::vector<std::pair<double, std::size_t>> points;
  points.reserve(data.size());
  for (const auto& inst : data) points.emplace_back(numeric(inst.snapshot.at(name)), inst.label);
  std::sort(points.begin(), points.end());
  std::optional<Stump> best;
  Counts left(parent.size(), 0);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    ++left[points[i].second];
    if (points[i].first == points[i + 1].first) continue;
    Split s = evaluate(parent, left);
    if (!best || better(s, best->split)) {
      const double threshold = points[i].first + (points[i + 1].first - points[i].first) / 2.0;
      best = Stump{name, FeatureKind::kNumeric, threshold, std::move(s)};
    }
  }
  return best;
}

std::optional<Stump> best_equality(const std::string& name, FeatureKind kind,
                                   const std::vector<Instance>& data, const Counts& parent) {
  std::map<AttributeValue, Counts> by_value;
  for (const auto& inst : data) {
    auto [it, _] = by_value.try_emplace(inst.snapshot.at(name), Counts(parent.size(), 0));
    ++it->second[inst.label];
  }
  if (by_value.size() < 2) return std::nullopt;
  std::optional<Stump> best;
  for (const auto& [value, counts] : by_value) {
    if (kind == FeatureKind::kBool && !std::get<bool>(value)) continue;
    Split s = evaluate(parent, counts);
    if (!best || better(s, best->split)) best = Stump{name, kind, value, std::move(s)};
  }
  return best;
}

std::vector<Guard> guards_from(const std::string& gateway, const std::vector<std::string>& flows,
                               const Stump& stump, std::size_t support) {
  const std::size_t left = majority(stump.split.left);
  const std::size_t right = majority(stump.split.right);
  auto make = [&](std::size_t label, Comparator cmp, AttributeValue constant) {
    return Guard{gateway, flows[label], stump.attribute, cmp, std::move(constant), support,
                 stump.split.accuracy};
  };
  std::vector<Guard> out;
  switch (stump.kind) {
    case FeatureKind::kNumeric:
      out.push_back(make(left, Comparator::kLess, stump.constant));
      if (right != left) out.push_back(make(right, Comparator::kGreaterEqual, stump.constant));
      break;
    case FeatureKind::kText:
      out.push_back(make(left, Comparator::kEqual, stump.constant));
      break;
    case FeatureKind::kBool:
      out.push_back(make(left, Comparator::kEqual, true));
      if (right != left) out.push_back(make(right, Comparator::kEqual, false));
      break;
    case FeatureKind::kIgnored:
      break;
  }
  return out;
}

// Attributes present in every instance with a single usable kind.
std::map<std::string, FeatureKind> usable_attributes(const std::vector<Instance>& data) {
  std::map<std::string, FeatureKind> kinds;
  for (const auto& [name, value] : data.front().snapshot) kinds[name] = kind_of(value);
  for (const auto& inst : data) {
    for (auto it = kinds.begin(); it != kinds.end();) {
      auto v = inst.snapshot.find(it->first);
      if (v == inst.snapshot.end() || kind_of(v->second) != it->second) {
        it = kinds.erase(it);
      } else {
        ++it;
      }
    }
  }
  std::erase_if(kinds, [](const auto& kv) { return kv.second == FeatureKind::kIgnored; });
  return kinds;
}

}  // namespace

std::string_view comparator_symbol(Comparator c) {
  switch (c) {
    case Comparator::kLess: return "<";
    case Comparator::kGreaterEqual: return ">=";
    case Comparator::kEqual: return "==";
  }
  return "==";
}

DecisionResult decision_mining(const EventLog& log, const BpmnGraph& graph,
                               const DecisionOptions& options) {
  DecisionResult result;

  std::map<std::string, std::vector<std::string>> gateways;  // id -> outgoing flow ids
  for (const auto& [id, node] : graph.nodes) {
    if (node.kind != BpmnNodeKind::kExclusiveGateway) continue;
    auto out = graph.outgoing(id);
    if (out.size() < 2) continue;
    for (const auto* f : out) gateways[id].push_back(f->id);
  }

  std::map<std::string, std::vector<Instance>> instances;
  std::set<std::string> unknown_gateways;
  std::map<std::string, std::size_t> unmapped;
  for (const auto& trace : log.traces) {
    std::map<std::string, AttributeValue> snapshot;
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const Event& e = trace.events[i];
      for (const auto& [name, value] : e.attributes) snapshot[name] = value;
      auto gw = gateways.find(e.activity_id);
      if (gw == gateways.end()) {
        if (e.activity_type == "exclusiveGateway" && !graph.nodes.contains(e.activity_id)) {
          unknown_gateways.insert(e.activity_id);
        }
        continue;
      }
      if (i + 1 == trace.events.size()) continue;
      const std::string& next = trace.events[i + 1].activity_id;
      std::optional<std::size_t> label;
      const auto out = graph.outgoing(gw->first);
      for (std::size_t k = 0; k < out.size(); ++k) {
        if (out[k]->target == next) {
          label = k;
          break;
        }
      }
      if (!label) {
        ++unmapped[gw->first];
        continue;
      }
      instances[gw->first].push_back(Instance{snapshot, *label});
    }
  }
  for (const auto& id : unknown_gateways) {
    result.warnings.push_back("gateway '" + id + "' is not in the model, skipped");
  }
  for (const auto& [id, n] : unmapped) {
    result.warnings.push_back("gateway '" + id + "': " + std::to_string(n) +
                              " traversal(s) not followed by a successor of the gateway");
  }

  for (const auto& [gateway, data] : instances) {
    const auto& flows = gateways.at(gateway);
    Counts parent(flows.size(), 0);
    for (const auto& inst : data) ++parent[inst.label];
    if (std::count_if(parent.begin(), parent.end(), [](std::size_t c) { return c > 0; }) < 2) {
      continue;
    }
    std::optional<Stump> best;
    for (const auto& [name, kind] : usable_attributes(data)) {
      auto candidate = kind == FeatureKind::kNumeric ? best_numeric(name, data, parent)
                                                     : best_equality(name, kind, data, parent);
      if (candidate && (!best || better(candidate->split, best->split))) best = std::move(candidate);
    }
    if (!best || best->split.gain <= kTieEpsilon) continue;
    for (auto& g : guards_from(gateway, flows, *best, data.size())) {
      (g.accuracy + kTieEpsilon >= options.accuracy_floor ? result.guards : result.suppressed)
          .push_back(std::move(g));
    }
  }
  return result;
}

}  // namespace procmine
