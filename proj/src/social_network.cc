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

std::vector<std::string> log_resources(const EventLog& log) {
  std::set<std::string> names;
  for (const auto& trace : log.traces) {
    for (const auto& e : trace.events) {
      if (e.resource) names.insert(*e.resource);
    }
  }
  return {names.begin(), names.end()};
}

ResourceMatrix empty_matrix(SnaMetric metric, std::vector<std::string> resources) {
  ResourceMatrix m;
  m.metric = metric;
  const std::size_t n = resources.size();
  m.resources = std::move(resources);
  m.values.assign(n, std::vector<double>(n, 0.0));
  return m;
}

std::size_t index_of(const std::vector<std::string>& sorted, const std::string& name) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), name) -
                                  sorted.begin());
}

}  // namespace

std::string_view sna_metric_name(SnaMetric metric) {
  switch (metric) {
    case SnaMetric::kHandover: return "handover";
    case SnaMetric::kWorkingTogether: return "working_together";
    case SnaMetric::kSimilarActivities: return "similar_activities";
  }
  return "handover";
}

std::optional<SnaMetric> parse_sna_metric(std::string_view name) {
  for (auto m : {SnaMetric::kHandover, SnaMetric::kWorkingTogether, SnaMetric::kSimilarActivities}) {
    if (sna_metric_name(m) == name) return m;
  }
  return std::nullopt;
}

ResourceMatrix handover_of_work(const EventLog& log, bool normalize) {
  ResourceMatrix m = empty_matrix(SnaMetric::kHandover, log_resources(log));
  for (const auto& trace : log.traces) {
    const std::string* prev = nullptr;
    for (const auto& e : trace.events) {
      if (!e.resource) continue;
      if (prev) m.values[index_of(m.resources, *prev)][index_of(m.resources, *e.resource)] += 1.0;
      prev = &*e.resource;
    }
  }
  if (normalize) {
    for (auto& row : m.values) {
      double sum = 0.0;
      for (double v : row) sum += v;
      if (sum > 0.0) {
        for (double& v : row) v /= sum;
      }
    }
  }
  return m;
}

ResourceMatrix working_together(const EventLog& log) {
  ResourceMatrix m = empty_matrix(SnaMetric::kWorkingTogether, log_resources(log));
  for (const auto& trace : log.traces) {
    std::set<std::size_t> present;
    for (const auto& e : trace.events) {
      if (e.resource) present.insert(index_of(m.resources, *e.resource));
    }
    for (std::size_t i : present) {
      for (std::size_t j : present) m.values[i][j] += 1.0;
    }
  }
  return m;
}

ResourceMatrix similar_activities(const EventLog& log) {
  ResourceMatrix m = empty_matrix(SnaMetric::kSimilarActivities, log_resources(log));
  const std::size_t n = m.resources.size();
  std::vector<std::map<std::string, double>> profile(n);
  for (const auto& trace : log.traces) {
    for (const auto& e : trace.events) {
      if (e.resource) profile[index_of(m.resources, *e.resource)][e.activity] += 1.0;
    }
  }
  std::vector<double> norm(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [_, c] : profile[i]) norm[i] += c * c;
    norm[i] = std::sqrt(norm[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    m.values[i][i] = norm[i] > 0.0 ? 1.0 : 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (norm[i] == 0.0 || norm[j] == 0.0) continue;
      double dot = 0.0;
      for (const auto& [activity, c] : profile[i]) {
        auto it = profile[j].find(activity);
        if (it != profile[j].end()) dot += c * it->second;
      }
      const double sim = std::min(1.0, dot / (norm[i] * norm[j]));
      m.values[i][j] = sim;
      m.values[j][i] = sim;
    }
  }
  return m;
}

ResourceMatrix social_network(const EventLog& log, SnaMetric metric) {
  switch (metric) {
    case SnaMetric::kHandover: return handover_of_work(log);
    case SnaMetric::kWorkingTogether: return working_together(log);
    case SnaMetric::kSimilarActivities: return similar_activities(log);
  }
  return handover_of_work(log);
}

std::vector<CaseSummary> case_statistics(const EventLog& log) {
  std::vector<CaseSummary> out;
  out.reserve(log.traces.size());
  for (const auto& trace : log.traces) {
    if (trace.events.empty()) continue;
    CaseSummary s;
    s.case_id = trace.case_id;
    s.n_events = trace.events.size();
    s.start = trace.events.front().start;
    s.end = trace.events.back().end;
    s.duration_seconds = seconds_between(s.start, s.end);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const CaseSummary& a, const CaseSummary& b) {
    if (a.duration_seconds != b.duration_seconds) return a.duration_seconds > b.duration_seconds;
    return a.case_id < b.case_id;
  });
  return out;
}

}  // namespace procmine
