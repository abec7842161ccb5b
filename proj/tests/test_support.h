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

#ifndef PROCMINE_TESTS_TEST_SUPPORT_H_
#define PROCMINE_TESTS_TEST_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "procmine/bpmn.h"
#include "procmine/discovery.h"
#include "procmine/eventlog.h"
#include "procmine/extractor.h"
#include "procmine/petri_net.h"
#include "procmine/process_tree.h"

namespace procmine::testing {

using Rng = std::mt19937_64;

std::filesystem::path source_path(const std::string& relative);
std::string read_file(const std::filesystem::path& path);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

Event make_event(std::string id, std::string activity, std::int64_t start_ms, std::int64_t end_ms,
                 std::optional<std::string> resource = std::nullopt,
                 std::string activity_type = "userTask");

// Builds a log from label sequences with one-second events laid end to end.
EventLog log_from_traces(const std::vector<std::vector<std::string>>& traces,
                         const std::string& key = "p");

struct RandomLogOptions {
  std::size_t max_traces = 20;
  std::size_t max_events = 10;
  std::size_t alphabet = 6;
  std::size_t resources = 4;
  bool attributes = true;
  bool awkward_text = true;  // quotes, separators, markup and non-ASCII in names
};

EventLog random_log(Rng& rng, const RandomLogOptions& options, const std::string& key = "p");

// Random rows for extraction tests. `tie_share` of the completed rows reuse an
// already drawn end time.
std::vector<ActInstRow> random_actinst_rows(Rng& rng, std::size_t count, double tie_share,
                                            double incomplete_share);

// Random block-structured tree with distinct activity labels, no silent
// leaves, no loop inside a loop, and loop bodies that are a single activity or
// have disjoint start and end activities.
ProcessTree random_tree(Rng& rng, int max_depth, std::size_t max_alphabet);

// Single-gateway model start -> g1 -> {b via fb | c via fc} -> end, and a log
// of `cases` traces. With `random_labels` the branch is a fair coin; otherwise
// amount < threshold selects c. Every case also carries a numeric `score` and a
// text `region` unrelated to the branch.
struct PlantedDecision {
  BpmnGraph graph;
  EventLog log;
  double threshold = 0.0;
};
PlantedDecision planted_decision(Rng& rng, std::size_t cases, bool random_labels);

// --- Independent oracles ---------------------------------------------------------

using PairCounts = std::map<std::pair<std::string, std::string>, std::size_t>;

// Adjacent-pair tally by explicit index loops.
PairCounts brute_force_pairs(const EventLog& log);

// Resource-pair tables keyed (r1, r2); pairs absent from the map are zero.
using ResourcePairs = std::map<std::pair<std::string, std::string>, double>;

// Handover pairs over each trace's resource-bearing events.
ResourcePairs brute_force_handover(const EventLog& log);
// For every resource pair, the number of cases containing both.
ResourcePairs brute_force_working_together(const EventLog& log);
// Cosine of activity-count profiles for every resource pair.
ResourcePairs direct_cosine(const EventLog& log);

// Label language of a tree computed from the operator semantics (no Petri
// net), restricted to sequences of length <= max_len.
std::set<std::vector<std::string>> tree_language(const ProcessTree& tree, std::size_t max_len);

// Label language of a BPMN graph by a token game on sequence flows. A start
// event fires once; exclusive gateways move one token, parallel gateways
// synchronize; a run is complete when an end event has fired and no token is
// left. Only sequences of length <= max_len are returned.
std::set<std::vector<std::string>> bpmn_token_game_language(const BpmnGraph& graph,
                                                            std::size_t max_len);

// Precision computed over the set of all markings reachable by each prefix.
struct PrecisionOracle {
  double escaping = 0.0;
  double allowed = 0.0;
  double precision = 1.0;
};
PrecisionOracle prefix_automaton_precision(const std::vector<std::vector<std::string>>& log,
                                           const PetriNet& net);

}  // namespace procmine::testing

#endif  // PROCMINE_TESTS_TEST_SUPPORT_H_
