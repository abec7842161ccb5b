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

#ifndef PROCMINE_EVENTLOG_H_
#define PROCMINE_EVENTLOG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "procmine/timestamp.h"

namespace procmine {

// Typed event attribute value; one of string, integer, float, boolean, time.
using AttributeValue = std::variant<std::string, std::int64_t, double, bool, Timestamp>;

// Name of the active alternative: "string", "int", "float", "boolean", "date".
std::string_view attribute_type_name(const AttributeValue& value);

// One activity instance: an interval [start, end] of a single BPMN element.
struct Event {
  std::string event_id;
  std::string activity;
  std::string activity_id;
  std::string activity_type;
  Timestamp start;
  Timestamp end;
  std::optional<std::string> resource;
  std::map<std::string, AttributeValue> attributes;

  friend bool operator==(const Event&, const Event&) = default;
};

// Trace order: (start, end, event_id) ascending.
bool trace_order_less(const Event& a, const Event& b);

struct Trace {
  std::string case_id;
  std::vector<Event> events;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Completed executions of a single process definition. Traces are ordered by
// case_id. Immutable once built; construct through build_log.
struct EventLog {
  std::string process_key;
  std::vector<Trace> traces;

  std::size_t event_count() const;

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

using CaseEvent = std::pair<std::string, Event>;

// Attribute names that collide with the serialized standard fields.
bool is_reserved_attribute_name(std::string_view name);

// Groups events by case, sorts each trace and orders traces by case_id.
// Throws ValidationError on a duplicate event_id (naming it), an empty
// case_id/activity/event_id, start > end, or a reserved attribute name.
EventLog build_log(std::vector<CaseEvent> events, std::string process_key);

// Flattens a log back into (case_id, event) pairs.
std::vector<CaseEvent> flatten(const EventLog& log);

// Union of two logs of the same process; throws on overlapping event ids.
EventLog merge_logs(const EventLog& base, const EventLog& delta);

// Keeps only events whose activity_type is in `keep`; traces that become
// empty are dropped, case order preserved.
EventLog filter_activity_types(const EventLog& log, const std::set<std::string>& keep);

// Activity types of BPMN task-like elements as recorded by the engine.
const std::set<std::string>& task_activity_types();
bool is_task_like_type(std::string_view activity_type);

// --- XES ---------------------------------------------------------------------

std::string export_xes(const EventLog& log);

// Reads a XES document. Standard keys map onto Event fields; all other event
// attributes become typed entries of Event::attributes. Throws ParseError on
// malformed XML or an event without concept:name / time:timestamp (the
// message names the trace index).
EventLog import_xes(std::string_view document, std::string process_key = {});

// --- CSV ---------------------------------------------------------------------

inline constexpr std::string_view kLogCsvHeader =
    "case_id,event_id,activity,activity_id,activity_type,start,end,resource";

// One row per event; attribute columns `attr:<name>` follow the fixed header
// in name order. Attribute cells carry a type tag: s:, i:, f:, b:, t:.
std::string export_csv(const EventLog& log);

// Throws ParseError on header mismatch or a bad cell (line and column named).
EventLog import_csv(std::string_view text, std::string process_key = {});

}  // namespace procmine

#endif  // PROCMINE_EVENTLOG_H_
