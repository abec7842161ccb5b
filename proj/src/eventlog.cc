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

#include "procmine/eventlog.h"

#include <algorithm>
#include <unordered_set>

#include "procmine/errors.h"

namespace procmine {

std::string_view attribute_type_name(const AttributeValue& value) {
  static constexpr std::string_view kNames[] = {"string", "int", "float", "boolean", "date"};
  return kNames[value.index()];
}

bool trace_order_less(const Event& a, const Event& b) {
  return std::tie(a.start, a.end, a.event_id) < std::tie(b.start, b.end, b.event_id);
}

std::size_t EventLog::event_count() const {
  std::size_t n = 0;
  for (const auto& t : traces) n += t.events.size();
  return n;
}

bool is_reserved_attribute_name(std::string_view name) {
  static const std::set<std::string, std::less<>> kReserved = {
      "concept:name", "time:timestamp", "org:resource",   "identity:id",
      "activity_id",  "activity_type",  "start_timestamp", "lifecycle:transition"};
  return kReserved.contains(name);
}

EventLog build_log(std::vector<CaseEvent> events, std::string process_key) {
  std::unordered_set<std::string> seen;
  seen.reserve(events.size());
  for (const auto& [case_id, e] : events) {
    if (case_id.empty()) throw ValidationError("event '" + e.event_id + "' has an empty case id");
    if (e.event_id.empty()) throw ValidationError("event in case '" + case_id + "' has no id");
    if (e.activity.empty()) throw ValidationError("event '" + e.event_id + "' has no activity");
    if (e.start > e.end) throw ValidationError("event '" + e.event_id + "' starts after it ends");
    if (!seen.insert(e.event_id).second) {
      throw ValidationError("duplicate event id '" + e.event_id + "' in process '" +
                            process_key + "'");
    }
    for (const auto& [name, value] : e.attributes) {
      if (is_reserved_attribute_name(name)) {
        throw ValidationError("event '" + e.event_id + "' uses reserved attribute name '" +
                              name + "'");
      }
    }
  }

  std::stable_sort(events.begin(), events.end(), [](const CaseEvent& a, const CaseEvent& b) {
    if (a.first != b.first) return a.first < b.first;
    return trace_order_less(a.second, b.second);
  });

  EventLog log;
  log.process_key = std::move(process_key);
  for (auto& [case_id, e] : events) {
    if (log.traces.empty() || log.traces.back().case_id != case_id) {
      log.traces.push_back(Trace{case_id, {}});
    }
    log.traces.back().events.push_back(std::move(e));
  }
  return log;
}

std::vector<CaseEvent> flatten(const EventLog& log) {
  std::vector<CaseEvent> out;
  out.reserve(log.event_count());
  for (const auto& t : log.traces) {
    for (const auto& e : t.events) out.emplace_back(t.case_id, e);
  }
  return out;
}

EventLog merge_logs(const EventLog& base, const EventLog& delta) {
  auto events = flatten(base);
  auto more = flatten(delta);
  events.insert(events.end(), std::make_move_iterator(more.begin()),
                std::make_move_iterator(more.end()));
  return build_log(std::move(events), base.process_key.empty() ? delta.process_key
                                                                : base.process_key);
}

EventLog filter_activity_types(const EventLog& log, const std::set<std::string>& keep) {
  EventLog out;
  out.process_key = log.process_key;
  for (const auto& t : log.traces) {
    Trace filtered{t.case_id, {}};
    for (const auto& e : t.events) {
      if (keep.contains(e.activity_type)) filtered.events.push_back(e);
    }
    if (!filtered.events.empty()) out.traces.push_back(std::move(filtered));
  }
  return out;
}

const std::set<std::string>& task_activity_types() {
  static const std::set<std::string> kTypes = {
      "task",        "userTask",     "serviceTask", "scriptTask",  "businessRuleTask",
      "manualTask",  "receiveTask",  "sendTask",    "callActivity"};
  return kTypes;
}

bool is_task_like_type(std::string_view activity_type) {
  return task_activity_types().contains(std::string(activity_type));
}

}  // namespace procmine
