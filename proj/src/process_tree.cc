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

#include "procmine/process_tree.h"

#include <cctype>

#include "procmine/errors.h"

namespace procmine {

ProcessTree ProcessTree::activity(std::string label) {
  return ProcessTree{Kind::kActivity, std::move(label), {}};
}

ProcessTree ProcessTree::silent() { return ProcessTree{Kind::kSilent, {}, {}}; }

ProcessTree ProcessTree::sequence(std::vector<ProcessTree> children) {
  return ProcessTree{Kind::kSequence, {}, std::move(children)};
}

ProcessTree ProcessTree::exclusive(std::vector<ProcessTree> children) {
  return ProcessTree{Kind::kXor, {}, std::move(children)};
}

ProcessTree ProcessTree::parallel(std::vector<ProcessTree> children) {
  return ProcessTree{Kind::kParallel, {}, std::move(children)};
}

ProcessTree ProcessTree::loop(ProcessTree body, ProcessTree redo) {
  std::vector<ProcessTree> children;
  children.push_back(std::move(body));
  children.push_back(std::move(redo));
  return ProcessTree{Kind::kLoop, {}, std::move(children)};
}

void validate(const ProcessTree& tree) {
  switch (tree.kind) {
    case ProcessTree::Kind::kActivity:
      if (tree.label.empty()) throw ValidationError("process tree: empty activity label");
      return;
    case ProcessTree::Kind::kSilent:
      return;
    case ProcessTree::Kind::kLoop:
      if (tree.children.size() != 2) {
        throw ValidationError("process tree: loop needs exactly 2 children");
      }
      break;
    default:
      if (tree.children.size() < 2) {
        throw ValidationError("process tree: operator needs at least 2 children");
      }
  }
  for (const auto& c : tree.children) validate(c);
}

namespace {

bool is_plain_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != ',' && c != '(' && c != ')' &&
         c != '\'';
}

std::string quote_label(const std::string& label) {
  bool plain = !label.empty() && label != "tau" && label != "->" && label != "X" &&
               label != "+" && label != "*";
  for (const char c : label) plain = plain && is_plain_char(c);
  if (plain) return label;
  std::string out = "'";
  for (const char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

void print(const ProcessTree& t, std::string& out) {
  using Kind = ProcessTree::Kind;
  switch (t.kind) {
    case Kind::kActivity: out += quote_label(t.label); return;
    case Kind::kSilent: out += "tau"; return;
    case Kind::kSequence: out += "->("; break;
    case Kind::kXor: out += "X("; break;
    case Kind::kParallel: out += "+("; break;
    case Kind::kLoop: out += "*("; break;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) out += ", ";
    print(t.children[i], out);
  }
  out += ')';
}

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : s_(text) {}

  ProcessTree parse_all() {
    ProcessTree t = parse_node();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    validate(t);
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("process tree: " + what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool try_operator(std::string_view token) {
    if (s_.substr(pos_, token.size()) != token) return false;
    std::size_t p = pos_ + token.size();
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    if (p >= s_.size() || s_[p] != '(') return false;
    pos_ = p + 1;
    return true;
  }

  ProcessTree parse_node() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    using Kind = ProcessTree::Kind;
    Kind kind;
    if (try_operator("->")) {
      kind = Kind::kSequence;
    } else if (try_operator("X")) {
      kind = Kind::kXor;
    } else if (try_operator("+")) {
      kind = Kind::kParallel;
    } else if (try_operator("*")) {
      kind = Kind::kLoop;
    } else {
      return parse_leaf();
    }
    std::vector<ProcessTree> children;
    while (true) {
      children.push_back(parse_node());
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
        break;
      }
      fail("expected ',' or ')'");
    }
    if (kind == Kind::kLoop && children.size() == 3) {
      ProcessTree exit = std::move(children[2]);
      children.pop_back();
      ProcessTree loop{Kind::kLoop, {}, std::move(children)};
      if (exit.kind == Kind::kSilent) return loop;
      std::vector<ProcessTree> seq;
      seq.push_back(std::move(loop));
      seq.push_back(std::move(exit));
      return ProcessTree::sequence(std::move(seq));
    }
    return ProcessTree{kind, {}, std::move(children)};
  }

  ProcessTree parse_leaf() {
    if (s_[pos_] == '\'') {
      ++pos_;
      std::string label;
      while (true) {
        if (pos_ >= s_.size()) fail("unterminated quoted label");
        if (s_[pos_] == '\'') {
          if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '\'') {
            label += '\'';
            pos_ += 2;
            continue;
          }
          ++pos_;
          break;
        }
        label += s_[pos_++];
      }
      return ProcessTree::activity(std::move(label));
    }
    const std::size_t begin = pos_;
    while (pos_ < s_.size() && is_plain_char(s_[pos_])) ++pos_;
    if (pos_ == begin) fail("expected a label");
    const std::string token(s_.substr(begin, pos_ - begin));
    if (token == "tau") return ProcessTree::silent();
    return ProcessTree::activity(token);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

class NetBuilder {
 public:
  PetriNet build(const ProcessTree& tree) {
    const PlaceId source = net_.add_place("source");
    const PlaceId sink = net_.add_place("sink");
    add(tree, source, sink);
    net_.set_initial(Marking{{source, 1}});
    net_.set_final(Marking{{sink, 1}});
    return std::move(net_);
  }

 private:
  PlaceId place() { return net_.add_place("p" + std::to_string(++places_)); }

  TransitionId silent(std::string_view role) {
    return net_.add_transition("tau_" + std::string(role) + "_" + std::to_string(++silents_),
                               std::nullopt);
  }

  void connect(PlaceId in, TransitionId t, PlaceId out) {
    net_.add_input_arc(in, t);
    net_.add_output_arc(t, out);
  }

  void add(const ProcessTree& node, PlaceId entry, PlaceId exit) {
    using Kind = ProcessTree::Kind;
    switch (node.kind) {
      case Kind::kActivity: {
        const auto t = net_.add_transition(
            "t_" + std::to_string(++visibles_) + "_" + node.label, node.label);
        connect(entry, t, exit);
        return;
      }
      case Kind::kSilent:
        connect(entry, silent("skip"), exit);
        return;
      case Kind::kSequence: {
        PlaceId from = entry;
        for (std::size_t i = 0; i < node.children.size(); ++i) {
          const PlaceId to = i + 1 == node.children.size() ? exit : place();
          add(node.children[i], from, to);
          from = to;
        }
        return;
      }
      case Kind::kXor:
        for (const auto& c : node.children) add(c, entry, exit);
        return;
      case Kind::kParallel: {
        const TransitionId split = silent("split");
        const TransitionId join = silent("join");
        net_.add_input_arc(entry, split);
        net_.add_output_arc(join, exit);
        for (const auto& c : node.children) {
          const PlaceId in = place();
          const PlaceId out = place();
          net_.add_output_arc(split, in);
          net_.add_input_arc(out, join);
          add(c, in, out);
        }
        return;
      }
      case Kind::kLoop: {
        const PlaceId body_in = place();
        const PlaceId body_out = place();
        connect(entry, silent("enter"), body_in);
        add(node.children[0], body_in, body_out);
        add(node.children[1], body_out, body_in);
        connect(body_out, silent("exit"), exit);
        return;
      }
    }
  }

  PetriNet net_;
  int places_ = 0;
  int silents_ = 0;
  int visibles_ = 0;
};

}  // namespace

std::string to_string(const ProcessTree& tree) {
  std::string out;
  print(tree, out);
  return out;
}

ProcessTree parse_process_tree(std::string_view text) { return TreeParser(text).parse_all(); }

PetriNet tree_to_petri(const ProcessTree& tree) {
  validate(tree);
  return NetBuilder().build(tree);
}

}  // namespace procmine
