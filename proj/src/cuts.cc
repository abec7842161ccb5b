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

#include <algorithm>
#include <numeric>

#include "procmine/discovery.h"

namespace procmine {
namespace {

// Dense view of a DFG: activities are indexed in name order.
struct Graph {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> edge;
  std::vector<bool> is_start;
  std::vector<bool> is_end;

  explicit Graph(const Dfg& dfg) {
    std::map<std::string, std::size_t> index;
    for (const auto& [a, _] : dfg.activities) {
      index.emplace(a, names.size());
      names.push_back(a);
    }
    const std::size_t n = names.size();
    edge.assign(n, std::vector<bool>(n, false));
    is_start.assign(n, false);
    is_end.assign(n, false);
    for (const auto& [key, e] : dfg.edges) {
      auto a = index.find(key.first);
      auto b = index.find(key.second);
      if (a != index.end() && b != index.end() && e.count > 0) edge[a->second][b->second] = true;
    }
    for (const auto& [a, _] : dfg.start_activities) {
      if (auto it = index.find(a); it != index.end()) is_start[it->second] = true;
    }
    for (const auto& [a, _] : dfg.end_activities) {
      if (auto it = index.find(a); it != index.end()) is_end[it->second] = true;
    }
  }

  std::size_t size() const { return names.size(); }
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Groups activity indices by union-find root; groups ordered by smallest member.
std::vector<std::vector<std::size_t>> groups_of(UnionFind& uf, std::size_t n) {
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [_, members] : by_root) out.push_back(std::move(members));
  return out;
}

std::set<std::string> names_of(const Graph& g, const std::vector<std::size_t>& members) {
  std::set<std::string> out;
  for (const auto i : members) out.insert(g.names[i]);
  return out;
}

Cut make_cut(Cut::Kind kind, const Graph& g, const std::vector<std::vector<std::size_t>>& blocks) {
  Cut cut{kind, {}};
  for (const auto& b : blocks) cut.partition.push_back(names_of(g, b));
  return cut;
}

std::vector<std::vector<bool>> transitive_closure(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      const auto a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < n; ++b) {
        if (g.edge[a][b] && !reach[s][b]) {
          reach[s][b] = true;
          stack.push_back(b);
        }
      }
    }
  }
  return reach;
}

}  // namespace

std::string_view cut_kind_name(Cut::Kind kind) {
  switch (kind) {
    case Cut::Kind::kXor: return "xor";
    case Cut::Kind::kSequence: return "sequence";
    case Cut::Kind::kParallel: return "parallel";
    case Cut::Kind::kLoop: return "loop";
  }
  return "?";
}

std::optional<Cut> find_xor_cut(const Dfg& dfg) {
  const Graph g(dfg);
  const std::size_t n = g.size();
  UnionFind uf(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (g.edge[a][b]) uf.unite(a, b);
    }
  }
  auto blocks = groups_of(uf, n);
  if (blocks.size() < 2) return std::nullopt;
  return make_cut(Cut::Kind::kXor, g, blocks);
}

// Repeatedly merges any two blocks that are not strictly ordered, where X
// precedes Y iff every x reaches every y and no y reaches any x. Every merge
// is forced, so the fixpoint is the finest sequence cut.
std::optional<Cut> find_sequence_cut(const Dfg& dfg) {
  const Graph g(dfg);
  const std::size_t n = g.size();
  if (n < 2) return std::nullopt;
  const auto reach = transitive_closure(g);
  UnionFind uf(n);

  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::vector<std::size_t>> forward;
  bool changed = true;
  while (changed) {
    changed = false;
    blocks = groups_of(uf, n);
    const std::size_t k = blocks.size();
    if (k < 2) return std::nullopt;
    std::vector<std::size_t> block_of(n);
    for (std::size_t b = 0; b < k; ++b) {
      for (const auto a : blocks[b]) block_of[a] = b;
    }
    forward.assign(k, std::vector<std::size_t>(k, 0));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (reach[a][b] && block_of[a] != block_of[b]) ++forward[block_of[a]][block_of[b]];
      }
    }
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = x + 1; y < k; ++y) {
        const std::size_t pairs = blocks[x].size() * blocks[y].size();
        const bool x_before_y = forward[x][y] == pairs && forward[y][x] == 0;
        const bool y_before_x = forward[y][x] == pairs && forward[x][y] == 0;
        if (!x_before_y && !y_before_x) {
          changed |= uf.unite(blocks[x].front(), blocks[y].front());
        }
      }
    }
  }

  // Strict total order: a block's rank is the number of blocks it precedes.
  std::vector<std::size_t> order(blocks.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> successors(blocks.size(), 0);
  for (std::size_t x = 0; x < blocks.size(); ++x) {
    for (std::size_t y = 0; y < blocks.size(); ++y) {
      if (x != y && forward[x][y] > 0) ++successors[x];
    }
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return successors[a] > successors[b]; });
  std::vector<std::vector<std::size_t>> ordered;
  for (const auto i : order) ordered.push_back(blocks[i]);
  return make_cut(Cut::Kind::kSequence, g, ordered);
}

std::optional<Cut> find_parallel_cut(const Dfg& dfg) {
  const Graph g(dfg);
  const std::size_t n = g.size();
  if (n < 2) return std::nullopt;
  UnionFind uf(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!(g.edge[a][b] && g.edge[b][a])) uf.unite(a, b);
    }
  }
  auto blocks = groups_of(uf, n);
  if (blocks.size() < 2) return std::nullopt;

  // Every block needs a start and an end activity; incomplete blocks are
  // folded into the first complete one.
  auto complete = [&](const std::vector<std::size_t>& b) {
    const bool s = std::any_of(b.begin(), b.end(), [&](auto i) { return g.is_start[i]; });
    const bool e = std::any_of(b.begin(), b.end(), [&](auto i) { return g.is_end[i]; });
    return s && e;
  };
  std::vector<std::vector<std::size_t>> good, bad;
  for (auto& b : blocks) (complete(b) ? good : bad).push_back(std::move(b));
  if (good.empty()) return std::nullopt;
  for (const auto& b : bad) good.front().insert(good.front().end(), b.begin(), b.end());
  std::sort(good.front().begin(), good.front().end());
  if (good.size() < 2) return std::nullopt;
  return make_cut(Cut::Kind::kParallel, g, good);
}

std::optional<Cut> find_loop_cut(const Dfg& dfg) {
  const Graph g(dfg);
  const std::size_t n = g.size();
  if (n < 2) return std::nullopt;
  std::vector<bool> in_do(n, false);
  for (std::size_t a = 0; a < n; ++a) in_do[a] = g.is_start[a] || g.is_end[a];

  UnionFind uf(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (g.edge[a][b] && !in_do[a] && !in_do[b]) uf.unite(a, b);
    }
  }
  std::vector<std::vector<std::size_t>> redo;
  for (auto& b : groups_of(uf, n)) {
    if (!in_do[b.front()]) redo.push_back(std::move(b));
  }

  std::vector<std::size_t> do_part;
  for (std::size_t a = 0; a < n; ++a) {
    if (in_do[a]) do_part.push_back(a);
  }
  std::vector<std::vector<std::size_t>> kept;
  for (auto& comp : redo) {
    bool valid = true;
    for (const auto a : comp) {
      bool reaches_some_start = false;
      bool reaches_all_starts = true;
      bool from_some_end = false;
      bool from_all_ends = true;
      for (const auto d : do_part) {
        // Edges leaving the redo-part must go to start activities and edges
        // entering it must come from end activities.
        if (g.edge[a][d] && !g.is_start[d]) valid = false;
        if (g.edge[d][a] && !g.is_end[d]) valid = false;
        if (g.is_start[d]) {
          reaches_some_start |= g.edge[a][d];
          reaches_all_starts &= g.edge[a][d];
        }
        if (g.is_end[d]) {
          from_some_end |= g.edge[d][a];
          from_all_ends &= g.edge[d][a];
        }
      }
      if (reaches_some_start && !reaches_all_starts) valid = false;
      if (from_some_end && !from_all_ends) valid = false;
    }
    if (valid) {
      kept.push_back(std::move(comp));
    } else {
      do_part.insert(do_part.end(), comp.begin(), comp.end());
    }
  }
  if (kept.empty()) return std::nullopt;
  std::sort(do_part.begin(), do_part.end());
  std::vector<std::vector<std::size_t>> blocks{do_part};
  blocks.insert(blocks.end(), kept.begin(), kept.end());
  return make_cut(Cut::Kind::kLoop, g, blocks);
}

std::optional<Cut> find_cut(const Dfg& dfg) {
  if (auto c = find_xor_cut(dfg)) return c;
  if (auto c = find_sequence_cut(dfg)) return c;
  if (auto c = find_parallel_cut(dfg)) return c;
  return find_loop_cut(dfg);
}

}  // namespace procmine
