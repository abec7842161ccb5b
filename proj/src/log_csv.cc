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

#include <set>
#include <string>

#include "procmine/csv.h"
#include "procmine/errors.h"
#include "procmine/eventlog.h"
#include "value_text.h"

namespace procmine {
namespace {

constexpr std::size_t kFixedColumns = 8;
constexpr const char* kFixedNames[kFixedColumns] = {
    "case_id", "event_id", "activity", "activity_id", "activity_type", "start", "end", "resource"};

std::string encode_cell(const AttributeValue& value) {
  struct Visitor {
    std::string operator()(const std::string& v) const { return "s:" + v; }
    std::string operator()(std::int64_t v) const { return "i:" + std::to_string(v); }
    std::string operator()(double v) const { return "f:" + internal::format_double(v); }
    std::string operator()(bool v) const { return v ? "b:true" : "b:false"; }
    std::string operator()(Timestamp v) const { return "t:" + format_iso8601(v); }
  };
  return std::visit(Visitor{}, value);
}

AttributeValue decode_cell(const std::string& cell, const std::string& where) {
  if (cell.size() >= 2 && cell[1] == ':') {
    const std::string_view body = std::string_view(cell).substr(2);
    switch (cell[0]) {
      case 's':
        return std::string(body);
      case 'i':
        if (auto v = internal::parse_int(body)) return *v;
        break;
      case 'f':
        if (auto v = internal::parse_double(body)) return *v;
        break;
      case 'b':
        if (auto v = internal::parse_bool(body)) return *v;
        break;
      case 't':
        if (auto v = parse_iso8601(body)) return *v;
        break;
      default:
        break;
    }
  }
  throw ParseError(where + ": bad attribute cell '" + cell + "'");
}

}  // namespace

std::string export_csv(const EventLog& log) {
  std::set<std::string> attr_names;
  for (const auto& t : log.traces) {
    for (const auto& e : t.events) {
      for (const auto& [name, _] : e.attributes) attr_names.insert(name);
    }
  }

  std::string out(kLogCsvHeader);
  for (const auto& name : attr_names) out += "," + csv::quote("attr:" + name);
  out += "\r\n";

  std::vector<std::string> row;
  for (const auto& t : log.traces) {
    for (const auto& e : t.events) {
      row = {t.case_id,       e.event_id,          e.activity,
             e.activity_id,   e.activity_type,     format_iso8601(e.start),
             format_iso8601(e.end), e.resource.value_or("")};
      for (const auto& name : attr_names) {
        auto it = e.attributes.find(name);
        row.push_back(it == e.attributes.end() ? std::string() : encode_cell(it->second));
      }
      csv::append_row(out, row);
    }
  }
  return out;
}

EventLog import_csv(std::string_view text, std::string process_key) {
  const auto records = csv::parse(text);
  if (records.empty()) throw ParseError("csv: missing header");
  const auto& header = records.front().fields;
  if (header.size() < kFixedColumns) throw ParseError("csv: header mismatch, expected '" +
                                                      std::string(kLogCsvHeader) + "'");
  for (std::size_t i = 0; i < kFixedColumns; ++i) {
    if (header[i] != kFixedNames[i]) {
      throw ParseError("csv: header mismatch at column " + std::to_string(i + 1) + ": expected '" +
                       kFixedNames[i] + "', found '" + header[i] + "'");
    }
  }
  std::vector<std::string> attr_names;
  for (std::size_t i = kFixedColumns; i < header.size(); ++i) {
    if (header[i].rfind("attr:", 0) != 0 || header[i].size() == 5) {
      throw ParseError("csv: header mismatch, unexpected column '" + header[i] + "'");
    }
    attr_names.push_back(header[i].substr(5));
  }

  std::vector<CaseEvent> events;
  events.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string line = "csv: line " + std::to_string(rec.line);
    if (rec.fields.size() != header.size()) {
      throw ParseError(line + ": expected " + std::to_string(header.size()) + " fields, found " +
                       std::to_string(rec.fields.size()));
    }
    const auto& f = rec.fields;
    Event e;
    e.event_id = f[1];
    e.activity = f[2];
    e.activity_id = f[3];
    e.activity_type = f[4];
    e.start = parse_iso8601_or_throw(f[5], line + ", column start");
    e.end = parse_iso8601_or_throw(f[6], line + ", column end");
    if (!f[7].empty()) e.resource = f[7];
    for (std::size_t i = 0; i < attr_names.size(); ++i) {
      const auto& cell = f[kFixedColumns + i];
      if (cell.empty()) continue;
      e.attributes[attr_names[i]] = decode_cell(cell, line + ", column attr:" + attr_names[i]);
    }
    events.emplace_back(f[0], std::move(e));
  }
  return build_log(std::move(events), std::move(process_key));
}

}  // namespace procmine
