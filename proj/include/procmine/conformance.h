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

#ifndef PROCMINE_CONFORMANCE_H_
#define PROCMINE_CONFORMANCE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "procmine/eventlog.h"
#include "procmine/petri_net.h"

namespace procmine {

// Token counts of a replay. The initial marking counts as produced and the
// final marking as consumed.
struct TokenCounts {
  std::size_t missing = 0;
  std::size_t remaining = 0;
  std::size_t consumed = 0;
  std::size_t produced = 0;

  // 1/2 (1 - m/c) + 1/2 (1 - r/p); a zero denominator contributes 1.
  double fitness() const;

  TokenCounts& operator+=(const TokenCounts& o);
  friend bool operator==(const TokenCounts&, const TokenCounts&) = default;
};

struct TraceFitness {
  std::string case_id;
  TokenCounts counts;
  double fitness = 1.0;
};

struct FitnessResult {
  std::vector<TraceFitness> traces;
  TokenCounts total;
  double fitness = 1.0;  // computed from the summed counts
};

// Replays one label sequence. Before declaring tokens missing, the shortest
// sequence of silent transitions that enables the required transition is
// searched breadth-first (depth at most 2 * |transitions|). At the end the
// same search tries to reach the final marking.
TokenCounts replay_trace(const PetriNet& net, const std::vector<std::string>& labels);

FitnessResult replay_fitness(const EventLog& log, const PetriNet& net);

struct PrecisionResult {
  double escaping = 0.0;
  double allowed = 0.0;
  double precision = 1.0;
  std::size_t skipped_prefixes = 0;  // prefix states that could not be replayed
};

// Escaping-edges precision over the prefix automaton of the log. Each prefix
// state is weighted by the number of traces passing through it; its reflected
// set is the union of observed next activities (empty for states that only
// end traces) and its allowed set the visible labels enabled after replaying
// the prefix and closing over silent transitions.
PrecisionResult etc_precision(const EventLog& log, const PetriNet& net);
PrecisionResult etc_precision(const std::vector<std::vector<std::string>>& log,
                              const PetriNet& net);

}  // namespace procmine

#endif  // PROCMINE_CONFORMANCE_H_
