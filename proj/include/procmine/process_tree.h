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

#ifndef PROCMINE_PROCESS_TREE_H_
#define PROCMINE_PROCESS_TREE_H_

#include <string>
#include <string_view>
#include <vector>

#include "procmine/petri_net.h"

namespace procmine {

// Block-structured process model. Operator nodes hold at least two children;
// loops hold exactly two: the do-part and the redo-part.
struct ProcessTree {
  enum class Kind { kActivity, kSilent, kSequence, kXor, kParallel, kLoop };

  Kind kind = Kind::kSilent;
  std::string label;  // activities only
  std::vector<ProcessTree> children;

  static ProcessTree activity(std::string label);
  static ProcessTree silent();
  static ProcessTree sequence(std::vector<ProcessTree> children);
  static ProcessTree exclusive(std::vector<ProcessTree> children);
  static ProcessTree parallel(std::vector<ProcessTree> children);
  static ProcessTree loop(ProcessTree body, ProcessTree redo);

  bool is_leaf() const { return kind == Kind::kActivity || kind == Kind::kSilent; }

  friend bool operator==(const ProcessTree&, const ProcessTree&) = default;
};

// Throws ValidationError when an operator has too few children, a loop is not
// binary, or an activity label is empty.
void validate(const ProcessTree& tree);

// Text notation: ->(a, X(b, c)), +(a, b), *(do, redo), tau. Labels that are
// not plain tokens are single-quoted with '' as the escape for a quote.
std::string to_string(const ProcessTree& tree);

// Parses the text notation. A ternary loop *(do, redo, exit) is normalized to
// ->(*(do, redo), exit), or *(do, redo) when exit is tau.
ProcessTree parse_process_tree(std::string_view text);

// Recursive workflow-net construction. Sequence children share boundary
// places, xor children share the entry and exit place, parallel uses a silent
// split and join, and loops are wrapped in silent enter/exit transitions with
// the redo-part leading back to the do-part's entry.
PetriNet tree_to_petri(const ProcessTree& tree);

}  // namespace procmine

#endif  // PROCMINE_PROCESS_TREE_H_
