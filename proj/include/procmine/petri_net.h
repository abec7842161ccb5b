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

#ifndef PROCMINE_PETRI_NET_H_
#define PROCMINE_PETRI_NET_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace procmine {

using PlaceId = std::size_t;
using TransitionId = std::size_t;

// Multiset of places. Only places holding at least one token are stored.
class Marking {
 public:
  Marking() = default;
  Marking(std::initializer_list<std::pair<const PlaceId, int>> init);

  int count(PlaceId p) const;
  void add(PlaceId p, int n = 1);
  // Removes up to n tokens; returns how many were actually present.
  int remove(PlaceId p, int n = 1);
  int total() const;
  bool empty() const { return tokens_.empty(); }
  // True when every place holds at least as many tokens as in `other`.
  bool covers(const Marking& other) const;

  const std::map<PlaceId, int>& tokens() const { return tokens_; }

  friend auto operator<=>(const Marking&, const Marking&) = default;
  friend bool operator==(const Marking&, const Marking&) = default;

 private:
  std::map<PlaceId, int> tokens_;
};

struct Transition {
  std::string id;
  std::optional<std::string> label;  // silent when absent
  std::vector<PlaceId> inputs;
  std::vector<PlaceId> outputs;

  bool silent() const { return !label.has_value(); }
};

// Place/transition net with unit arc weights and designated initial and final
// markings. Places and transitions are addressed by dense indices; names and
// ids are unique.
class PetriNet {
 public:
  PlaceId add_place(std::string name);
  TransitionId add_transition(std::string id, std::optional<std::string> label);
  void add_input_arc(PlaceId from, TransitionId to);
  void add_output_arc(TransitionId from, PlaceId to);

  void set_initial(Marking m) { initial_ = std::move(m); }
  void set_final(Marking m) { final_ = std::move(m); }

  std::size_t place_count() const { return places_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }
  const std::string& place_name(PlaceId p) const { return places_.at(p); }
  const std::vector<std::string>& places() const { return places_; }
  const Transition& transition(TransitionId t) const { return transitions_.at(t); }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const Marking& initial() const { return initial_; }
  const Marking& final_marking() const { return final_; }

  std::optional<PlaceId> find_place(std::string_view name) const;
  std::optional<TransitionId> find_transition(std::string_view id) const;
  std::vector<TransitionId> transitions_with_label(std::string_view label) const;
  std::set<std::string> visible_labels() const;

  // Transitions consuming from / producing into a place.
  std::vector<TransitionId> consumers(PlaceId p) const;
  std::vector<TransitionId> producers(PlaceId p) const;

 private:
  std::vector<std::string> places_;
  std::vector<Transition> transitions_;
  std::map<std::string, PlaceId, std::less<>> place_index_;
  std::map<std::string, TransitionId, std::less<>> transition_index_;
  Marking initial_;
  Marking final_;
};

bool is_enabled(const PetriNet& net, const Marking& marking, TransitionId t);

// Transitions whose every input place holds a token, in index order.
// Transitions without input places are never reported.
std::vector<TransitionId> enabled(const PetriNet& net, const Marking& marking);

// Fires an enabled transition. Throws ValidationError when `t` is disabled.
Marking fire(const PetriNet& net, const Marking& marking, TransitionId t);

// Structural workflow-net check: exactly one place without producers (the
// source, marked initially), one without consumers (the sink, marked finally),
// and every node on a directed path from source to sink.
bool is_workflow_net(const PetriNet& net);

struct SoundnessReport {
  bool bounded_exploration = true;    // false when max_states was hit
  std::size_t reachable_markings = 0;
  bool option_to_complete = true;     // final reachable from every reachable marking
  bool proper_completion = true;      // no reachable marking strictly covers final
  std::vector<std::string> dead_transitions;

  bool sound() const {
    return bounded_exploration && option_to_complete && proper_completion &&
           dead_transitions.empty();
  }
};

// Exhaustive state-space soundness check for small nets.
SoundnessReport check_soundness(const PetriNet& net, std::size_t max_states = 200'000);

using LabelSequence = std::vector<std::string>;

// All visible label sequences of length <= max_len produced by firing
// sequences from the initial marking that end exactly in the final marking.
// Throws Error when more than max_states search states would be visited.
std::set<LabelSequence> bounded_language(const PetriNet& net, std::size_t max_len,
                                         std::size_t max_states = 4'000'000);

struct SimulationResult {
  std::vector<LabelSequence> traces;
  std::size_t abandoned = 0;  // walks that deadlocked or exceeded max_len
};

// Performs max_traces random walks from the initial marking, choosing
// uniformly among enabled transitions, until the final marking is reached.
// Silent transitions are not recorded. Deterministic for a fixed seed.
SimulationResult simulate(const PetriNet& net, std::size_t max_traces, std::size_t max_len,
                          std::uint64_t seed);

}  // namespace procmine

#endif  // PROCMINE_PETRI_NET_H_
