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

#include "procmine/discovery.h"

namespace procmine {

Dfg discover_dfg(const EventLog& log) {
  Dfg dfg;
  std::map<std::pair<std::string, std::string>, double> gap_sums;
  for (const auto& trace : log.traces) {
    const auto& ev = trace.events;
    if (ev.empty()) continue;
    ++dfg.start_activities[ev.front().activity];
    ++dfg.end_activities[ev.back().activity];
    for (std::size_t i = 0; i < ev.size(); ++i) {
      ++dfg.activities[ev[i].activity];
      if (i + 1 == ev.size()) continue;
      auto key = std::make_pair(ev[i].activity, ev[i + 1].activity);
      ++dfg.edges[key].count;
      gap_sums[key] += std::max(0.0, seconds_between(ev[i].end, ev[i + 1].start));
    }
  }
  for (auto& [key, edge] : dfg.edges) {
    edge.mean_gap_seconds = gap_sums[key] / static_cast<double>(edge.count);
  }
  return dfg;
}

SimpleLog to_simple_log(const EventLog& log) {
  SimpleLog out;
  out.reserve(log.traces.size());
  for (const auto& t : log.traces) {
    std::vector<std::string> labels;
    labels.reserve(t.events.size());
    for (const auto& e : t.events) labels.push_back(e.activity);
    out.push_back(std::move(labels));
  }
  return out;
}

Dfg discover_dfg(const SimpleLog& log) {
  Dfg dfg;
  for (const auto& trace : log) {
    if (trace.empty()) continue;
    ++dfg.start_activities[trace.front()];
    ++dfg.end_activities[trace.back()];
    for (std::size_t i = 0; i < trace.size(); ++i) {
      ++dfg.activities[trace[i]];
      if (i + 1 < trace.size()) ++dfg.edges[{trace[i], trace[i + 1]}].count;
    }
  }
  return dfg;
}

Dfg filter_dfg(const Dfg& dfg, double threshold) {
  if (threshold <= 0.0) return dfg;
  std::map<std::string, std::size_t> max_out;
  for (const auto& [key, edge] : dfg.edges) {
    auto& m = max_out[key.first];
    m = std::max(m, edge.count);
  }
  Dfg out = dfg;
  std::erase_if(out.edges, [&](const auto& kv) {
    return static_cast<double>(kv.second.count) <
           threshold * static_cast<double>(max_out[kv.first.first]);
  });
  return out;
}

}  // namespace procmine
