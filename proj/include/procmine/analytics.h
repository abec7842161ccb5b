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

#ifndef PROCMINE_ANALYTICS_H_
#define PROCMINE_ANALYTICS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "procmine/bpmn.h"
#include "procmine/eventlog.h"
#include "procmine/timestamp.h"

namespace procmine {

// --- Social network ------------------------------------------------------------

enum class SnaMetric { kHandover, kWorkingTogether, kSimilarActivities };

std::string_view sna_metric_name(SnaMetric metric);
// Accepts "handover", "working_together" and "similar_activities".
std::optional<SnaMetric> parse_sna_metric(std::string_view name);

// Square matrix over the log's resources, sorted by name.
struct ResourceMatrix {
  SnaMetric metric = SnaMetric::kHandover;
  std::vector<std::string> resources;
  std::vector<std::vector<double>> values;
};

// values[i][j] = number of directly consecutive resource-bearing events in a
// trace handed from resources[i] to resources[j]. With `normalize` every
// nonzero row is divided by its sum.
ResourceMatrix handover_of_work(const EventLog& log, bool normalize = false);

// Off-diagonal: cases in which both resources appear. Diagonal: cases in which
// the resource appears.
ResourceMatrix working_together(const EventLog& log);

// Cosine similarity of per-resource activity frequency profiles.
ResourceMatrix similar_activities(const EventLog& log);

ResourceMatrix social_network(const EventLog& log, SnaMetric metric);

// --- Cases -------------------------------------------------------------------

struct CaseSummary {
  std::string case_id;
  std::size_t n_events = 0;
  Timestamp start;  // first event's start
  Timestamp end;    // last event's end
  double duration_seconds = 0.0;
};

// Sorted by duration descending, ties by case_id.
std::vector<CaseSummary> case_statistics(const EventLog& log);

// --- Decision mining -----------------------------------------------------------

enum class Comparator { kLess, kGreaterEqual, kEqual };

std::string_view comparator_symbol(Comparator c);

struct Guard {
  std::string gateway_id;
  std::string branch;  // outgoing sequence flow id
  std::string attribute;
  Comparator comparator = Comparator::kEqual;
  AttributeValue constant;
  std::size_t support = 0;  // training instances observed at the gateway
  double accuracy = 0.0;    // training accuracy of the stump the guard came from
};

struct DecisionOptions {
  double accuracy_floor = 0.75;
};

struct DecisionResult {
  std::vector<Guard> guards;      // accuracy >= floor
  std::vector<Guard> suppressed;  // accuracy below the floor
  std::vector<std::string> warnings;
};

// Learns one decision stump per exclusive gateway with two or more outgoing
// flows. A training instance is the case's attribute snapshot (last write wins
// over the events up to and including the gateway event) labelled with the
// outgoing flow leading to the next event's activity_id. Attributes must be
// present with one kind (numeric, text or boolean) in every instance at the
// gateway to be considered; timestamps are ignored. Numeric stumps split at the
// midpoint between adjacent distinct values and yield a `<` guard for the lower
// side and a `>=` guard for the upper side when its majority branch differs.
// Text stumps test equality with one value; boolean stumps yield a guard per
// value. The best stump maximises information gain, then accuracy, then comes
// first by attribute name.
DecisionResult decision_mining(const EventLog& log, const BpmnGraph& graph,
                               const DecisionOptions& options = {});

}  // namespace procmine

#endif  // PROCMINE_ANALYTICS_H_
