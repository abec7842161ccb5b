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

#include <string>

#include "procmine/errors.h"
#include "procmine/eventlog.h"
#include "procmine/xml.h"
#include "value_text.h"

namespace procmine {
namespace {

using Attrs = std::vector<std::pair<std::string, std::string>>;

void write_attribute(xml::Writer& w, const std::string& key, const AttributeValue& value) {
  struct Visitor {
    xml::Writer& w;
    const std::string& key;
    void operator()(const std::string& v) const { w.empty("string", {{"key", key}, {"value", v}}); }
    void operator()(std::int64_t v) const {
      w.empty("int", {{"key", key}, {"value", std::to_string(v)}});
    }
    void operator()(double v) const {
      w.empty("float", {{"key", key}, {"value", internal::format_double(v)}});
    }
    void operator()(bool v) const {
      w.empty("boolean", {{"key", key}, {"value", v ? "true" : "false"}});
    }
    void operator()(Timestamp v) const {
      w.empty("date", {{"key", key}, {"value", format_iso8601(v)}});
    }
  };
  std::visit(Visitor{w, key}, value);
}

std::optional<AttributeValue> read_attribute(const xml::Element& el, const std::string& value,
                                             const std::string& where) {
  if (el.name == "string" || el.name == "id") return AttributeValue{value};
  if (el.name == "int") {
    if (auto v = internal::parse_int(value)) return AttributeValue{*v};
    throw ParseError(where + ": bad int value '" + value + "'");
  }
  if (el.name == "float") {
    if (auto v = internal::parse_double(value)) return AttributeValue{*v};
    throw ParseError(where + ": bad float value '" + value + "'");
  }
  if (el.name == "boolean") {
    if (auto v = internal::parse_bool(value)) return AttributeValue{*v};
    throw ParseError(where + ": bad boolean value '" + value + "'");
  }
  if (el.name == "date") return AttributeValue{parse_iso8601_or_throw(value, where)};
  return std::nullopt;  // list, container and unknown kinds are not modelled
}

}  // namespace

std::string export_xes(const EventLog& log) {
  xml::Writer w;
  w.open("log", {{"xes.version", "1.0"},
                 {"xes.features", "nested-attributes"},
                 {"xmlns", "http://www.xes-standard.org/"}});
  w.empty("extension", {{"name", "Concept"},
                        {"prefix", "concept"},
                        {"uri", "http://www.xes-standard.org/concept.xesext"}});
  w.empty("extension", {{"name", "Time"},
                        {"prefix", "time"},
                        {"uri", "http://www.xes-standard.org/time.xesext"}});
  w.empty("extension", {{"name", "Organizational"},
                        {"prefix", "org"},
                        {"uri", "http://www.xes-standard.org/org.xesext"}});
  w.empty("extension", {{"name", "Identity"},
                        {"prefix", "identity"},
                        {"uri", "http://www.xes-standard.org/identity.xesext"}});
  w.empty("classifier", {{"name", "Activity"}, {"keys", "concept:name"}});
  if (!log.process_key.empty()) {
    w.empty("string", {{"key", "concept:name"}, {"value", log.process_key}});
  }
  for (const auto& trace : log.traces) {
    w.open("trace");
    w.empty("string", {{"key", "concept:name"}, {"value", trace.case_id}});
    for (const auto& e : trace.events) {
      w.open("event");
      w.empty("id", {{"key", "identity:id"}, {"value", e.event_id}});
      w.empty("string", {{"key", "concept:name"}, {"value", e.activity}});
      w.empty("date", {{"key", "time:timestamp"}, {"value", format_iso8601(e.end)}});
      if (e.resource) w.empty("string", {{"key", "org:resource"}, {"value", *e.resource}});
      w.empty("string", {{"key", "activity_id"}, {"value", e.activity_id}});
      w.empty("string", {{"key", "activity_type"}, {"value", e.activity_type}});
      w.empty("date", {{"key", "start_timestamp"}, {"value", format_iso8601(e.start)}});
      for (const auto& [key, value] : e.attributes) write_attribute(w, key, value);
      w.close();
    }
    w.close();
  }
  return w.finish();
}

EventLog import_xes(std::string_view document, std::string process_key) {
  const xml::Element root = xml::parse(document);
  if (root.name != "log") throw ParseError("xes: root element is <" + root.name + ">, not <log>");

  std::vector<CaseEvent> events;
  std::size_t trace_index = 0;
  for (const auto& child : root.children) {
    if (child.name == "string" && child.attribute_or("key", "") == "concept:name" &&
        process_key.empty()) {
      process_key = child.attribute_or("value", "");
    }
    if (child.name != "trace") continue;

    std::string case_id;
    for (const auto& a : child.children) {
      if (a.name != "event" && a.attribute_or("key", "") == "concept:name") {
        case_id = a.attribute_or("value", "");
      }
    }
    if (case_id.empty()) case_id = "trace-" + std::to_string(trace_index);

    std::size_t event_index = 0;
    for (const auto& ev : child.children) {
      if (ev.name != "event") continue;
      const std::string where =
          "xes: trace " + std::to_string(trace_index) + ", event " + std::to_string(event_index);
      Event e;
      std::optional<Timestamp> end, start;
      bool has_name = false;
      for (const auto& a : ev.children) {
        const std::string key = a.attribute_or("key", "");
        const std::string value = a.attribute_or("value", "");
        if (key.empty()) continue;
        if (key == "concept:name") {
          e.activity = value;
          has_name = true;
        } else if (key == "time:timestamp") {
          end = parse_iso8601_or_throw(value, where);
        } else if (key == "start_timestamp") {
          start = parse_iso8601_or_throw(value, where);
        } else if (key == "org:resource") {
          e.resource = value;
        } else if (key == "identity:id") {
          e.event_id = value;
        } else if (key == "activity_id") {
          e.activity_id = value;
        } else if (key == "activity_type") {
          e.activity_type = value;
        } else if (key == "lifecycle:transition") {
          // interval events carry no lifecycle
        } else if (auto v = read_attribute(a, value, where)) {
          e.attributes[key] = std::move(*v);
        }
      }
      if (!has_name) throw ParseError(where + " lacks concept:name");
      if (!end) throw ParseError(where + " lacks time:timestamp");
      e.end = *end;
      e.start = start.value_or(*end);
      if (e.event_id.empty()) e.event_id = case_id + "#" + std::to_string(event_index);
      events.emplace_back(case_id, std::move(e));
      ++event_index;
    }
    ++trace_index;
  }
  return build_log(std::move(events), std::move(process_key));
}

}  // namespace procmine
