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

#ifndef PROCMINE_DISCOVERY_H_
#define PROCMINE_DISCOVERY_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "procmine/eventlog.h"
#include "procmine/process_tree.h"

namespace procmine {

struct DfgEdge {
  std::size_t count = 0;
  double mean_gap_seconds = 0.0;

  friend bool operator==(const DfgEdge&, const DfgEdge&) = default;
};

// Directly-follows graph decorated with frequency and mean waiting time.
struct Dfg {
  std::map<std::string, std::size_t> activities;
  std::map<std::pair<std::string, std::string>, DfgEdge> edges;
  std::map<std::string, std::size_t> start_activities;
  std::map<std::string, std::size_t> end_activities;

  friend bool operator==(const Dfg&, const Dfg&) = default;
};

// Counts each adjacent event pair of every trace once. The gap of a pair is
// max(0, next.start - previous.end).
Dfg discover_dfg(const EventLog& log);

// Label sequences only; used by the miner on projected sub-logs.
using SimpleLog = std::vector<std::vector<std::string>>;
SimpleLog to_simple_log(const EventLog& log);
Dfg discover_dfg(const SimpleLog& log);

// Drops edges whose count is below `threshold` times the largest outgoing
// count of their source activity. Activities and start/end counts are kept.
Dfg filter_dfg(const Dfg& dfg, double threshold);

struct Cut {
  enum class Kind { kXor, kSequence, kParallel, kLoop };
  Kind kind;
  // For loops the first block is the do-part, the rest are redo-parts.
  std::vector<std::set<std::string>> partition;

  friend bool operator==(const Cut&, const Cut&) = default;
};

std::string_view cut_kind_name(Cut::Kind kind);

// Individual cut detectors over the alphabet of `dfg`; each returns the
// maximal cut of its kind or nullopt.
std::optional<Cut> find_xor_cut(const Dfg& dfg);
std::optional<Cut> find_sequence_cut(const Dfg& dfg);
std::optional<Cut> find_parallel_cut(const Dfg& dfg);
std::optional<Cut> find_loop_cut(const Dfg& dfg);

// Tries xor, sequence, parallel and loop in that order.
std::optional<Cut> find_cut(const Dfg& dfg);

struct MinerOptions {
  // Relative edge-frequency threshold applied before cut detection; 0 keeps
  // every edge (plain inductive miner).
  double noise_threshold = 0.0;
};

ProcessTree inductive_miner(const EventLog& log, const MinerOptions& options = {});
ProcessTree inductive_miner(const SimpleLog& log, const MinerOptions& options = {});

}  // namespace procmine

#endif  // PROCMINE_DISCOVERY_H_
