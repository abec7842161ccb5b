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

#ifndef PROCMINE_JSON_EXPORT_H_
#define PROCMINE_JSON_EXPORT_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "procmine/analytics.h"
#include "procmine/bpmn.h"
#include "procmine/conformance.h"
#include "procmine/discovery.h"
#include "procmine/eventlog.h"
#include "procmine/petri_net.h"

namespace procmine {

using Json = nlohmann::json;

// {"type": ..., "value": ...}; timestamps as ISO-8601 strings.
Json to_json(const AttributeValue& value);
Json to_json(const Event& event);
// {"activities": {name: count}, "edges": [{"from", "to", "count", "mean_gap"}],
//  "start": {name: count}, "end": {name: count}}; mean_gap in seconds.
Json to_json(const Dfg& dfg);
Json to_json(const PetriNet& net);
Json to_json(const ResourceMatrix& matrix);
Json to_json(const CaseSummary& summary);
Json to_json(const Guard& guard);
Json to_json(const DecisionResult& result);
Json to_json(const TokenCounts& counts);
Json to_json(const FitnessResult& result);
Json to_json(const PrecisionResult& result);
Json to_json(const BpmnGraph& graph, const DecoratedModel& decoration);

Json case_list_json(const std::vector<CaseSummary>& cases);
Json case_detail_json(const Trace& trace);

// Inverse of to_json(const PetriNet&). Throws ParseError naming the offending
// member.
PetriNet petri_net_from_json(const Json& doc);

}  // namespace procmine

#endif  // PROCMINE_JSON_EXPORT_H_
