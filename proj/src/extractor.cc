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

#include "procmine/extractor.h"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "procmine/errors.h"
#include "value_text.h"

namespace procmine {

ParsedRows parse_actinst_rows(const std::vector<ActInstRow>& rows) {
  ParsedRows out;
  std::unordered_set<std::string> seen;
  seen.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.proc_def_key.empty() || row.proc_inst_id.empty()) {
      throw ValidationError("actinst row '" + row.id + "' lacks proc_def_key_ or proc_inst_id_");
    }
    if (!seen.insert(row.id).second) {
      out.rejected_duplicates.push_back(row.id);
      continue;
    }
    if (!row.end_time) {
      ++out.skipped_incomplete;
      continue;
    }
    Event e;
    e.event_id = row.id;
    e.activity = row.act_name.empty() ? row.act_id : row.act_name;
    e.activity_id = row.act_id;
    e.activity_type = row.act_type;
    e.start = std::min(row.start_time, *row.end_time);
    e.end = *row.end_time;
    e.resource = row.assignee;
    out.events[row.proc_def_key].emplace_back(row.proc_inst_id, std::move(e));
  }
  return out;
}

namespace {

std::optional<AttributeValue> typed_value(const DetailRow& d) {
  const std::string& t = d.var_type;
  if (t == "string") {
    if (d.text) return AttributeValue{*d.text};
  } else if (t == "long" || t == "integer" || t == "short") {
    if (d.long_value) return AttributeValue{*d.long_value};
  } else if (t == "double") {
    if (d.double_value) return AttributeValue{*d.double_value};
  } else if (t == "date") {
    if (d.time) return AttributeValue{*d.time};
  } else if (t == "boolean") {
    if (d.text) {
      if (auto b = internal::parse_bool(*d.text)) return AttributeValue{*b};
    } else if (d.long_value) {
      return AttributeValue{*d.long_value != 0};
    }
  }
  return std::nullopt;
}

}  // namespace

MergeReport merge_detail_attributes(KeyedEvents& events, const std::vector<DetailRow>& details) {
  MergeReport report;
  if (details.empty()) return report;
  std::unordered_map<std::string, Event*> by_id;
  for (auto& [_, list] : events) {
    for (auto& [case_id, e] : list) by_id.emplace(e.event_id, &e);
  }
  for (const auto& d : details) {
    auto it = by_id.find(d.act_inst_id);
    if (it == by_id.end()) {
      ++report.orphaned;
      continue;
    }
    if (is_reserved_attribute_name(d.name) || d.name.empty()) {
      ++report.invalid;
      report.warnings.push_back("detail '" + d.name + "' on '" + d.act_inst_id +
                                "': reserved or empty attribute name");
      continue;
    }
    auto value = typed_value(d);
    if (!value) {
      ++report.invalid;
      report.warnings.push_back("detail '" + d.name + "' on '" + d.act_inst_id +
                                "': no value for var_type '" + d.var_type + "'");
      continue;
    }
    it->second->attributes[d.name] = std::move(*value);
    ++report.merged;
  }
  if (report.orphaned > 0) {
    report.warnings.push_back(std::to_string(report.orphaned) +
                              " detail rows reference no extracted event");
  }
  return report;
}

bool WatermarkState::covers(const ActInstRow& row) const {
  if (!row.end_time) return false;
  auto it = processes.find(row.proc_def_key);
  if (it == processes.end()) return false;
  const auto& wm = it->second;
  if (*row.end_time < wm.high_time) return true;
  return *row.end_time == wm.high_time && wm.ids_at_high_time.contains(row.id);
}

std::optional<Timestamp> WatermarkState::low_water() const {
  std::optional<Timestamp> low;
  for (const auto& [_, wm] : processes) {
    if (!low || wm.high_time < *low) low = wm.high_time;
  }
  return low;
}

ExtractionResult incremental_extract(TabularSource& source, const WatermarkState& state) {
  std::vector<ActInstRow> rows = source.completed_actinst_since(state.low_water());
  std::erase_if(rows, [&](const ActInstRow& r) { return !r.end_time || state.covers(r); });

  ParsedRows parsed = parse_actinst_rows(rows);
  ExtractionResult result;
  result.state = state;
  result.rejected_duplicates = parsed.rejected_duplicates.size();

  std::vector<std::string> ids;
  for (const auto& [_, list] : parsed.events) {
    for (const auto& [case_id, e] : list) ids.push_back(e.event_id);
  }
  if (!ids.empty()) result.details = merge_detail_attributes(parsed.events, source.details_for(ids));

  for (auto& [key, list] : parsed.events) {
    for (const auto& [case_id, e] : list) {
      auto [it, inserted] = result.state.processes.try_emplace(key, ProcessWatermark{e.end, {}});
      auto& wm = it->second;
      if (e.end > wm.high_time) {
        wm.high_time = e.end;
        wm.ids_at_high_time.clear();
      }
      if (e.end == wm.high_time) wm.ids_at_high_time.insert(e.event_id);
    }
    result.new_events += list.size();
    result.delta.emplace(key, build_log(std::move(list), key));
  }
  return result;
}

}  // namespace procmine
