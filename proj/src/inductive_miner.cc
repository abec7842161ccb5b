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

#include "procmine/discovery.h"

namespace procmine {
namespace {

using Variant = std::vector<std::string>;
using VariantLog = std::map<Variant, std::size_t>;

class Miner {
 public:
  explicit Miner(const MinerOptions& options) : options_(options) {}

  ProcessTree mine(const VariantLog& log) {
    if (log.empty()) return ProcessTree::silent();
    VariantLog non_empty = log;
    const bool has_empty = non_empty.erase(Variant{}) > 0;
    if (non_empty.empty()) return ProcessTree::silent();
    ProcessTree tree = mine_non_empty(non_empty);
    if (!has_empty) return tree;
    std::vector<ProcessTree> options;
    options.push_back(ProcessTree::silent());
    options.push_back(std::move(tree));
    return ProcessTree::exclusive(std::move(options));
  }

 private:
  static Dfg dfg_of(const VariantLog& log) {
    Dfg dfg;
    for (const auto& [trace, n] : log) {
      dfg.start_activities[trace.front()] += n;
      dfg.end_activities[trace.back()] += n;
      for (std::size_t i = 0; i < trace.size(); ++i) {
        dfg.activities[trace[i]] += n;
        if (i + 1 < trace.size()) dfg.edges[{trace[i], trace[i + 1]}].count += n;
      }
    }
    return dfg;
  }

  ProcessTree mine_non_empty(const VariantLog& log) {
    const Dfg dfg = dfg_of(log);
    if (dfg.activities.size() == 1) {
      const std::string& a = dfg.activities.begin()->first;
      const bool single = std::all_of(log.begin(), log.end(),
                                      [](const auto& kv) { return kv.first.size() == 1; });
      if (single) return ProcessTree::activity(a);
      return ProcessTree::loop(ProcessTree::activity(a), ProcessTree::silent());
    }

    const auto cut = find_cut(filter_dfg(dfg, options_.noise_threshold));
    if (!cut) return flower(dfg);

    const auto sublogs = split(log, *cut);
    std::vector<ProcessTree> children;
    for (const auto& sub : sublogs) children.push_back(mine(sub));
    switch (cut->kind) {
      case Cut::Kind::kXor: return ProcessTree::exclusive(std::move(children));
      case Cut::Kind::kSequence: return ProcessTree::sequence(std::move(children));
      case Cut::Kind::kParallel: return ProcessTree::parallel(std::move(children));
      case Cut::Kind::kLoop: {
        ProcessTree body = std::move(children.front());
        children.erase(children.begin());
        if (children.size() == 1) return ProcessTree::loop(std::move(body), std::move(children[0]));
        return ProcessTree::loop(std::move(body), ProcessTree::exclusive(std::move(children)));
      }
    }
    return flower(dfg);
  }

  static ProcessTree flower(const Dfg& dfg) {
    std::vector<ProcessTree> leaves;
    for (const auto& [a, _] : dfg.activities) leaves.push_back(ProcessTree::activity(a));
    return ProcessTree::loop(ProcessTree::silent(), ProcessTree::exclusive(std::move(leaves)));
  }

  static std::vector<VariantLog> split(const VariantLog& log, const Cut& cut) {
    std::map<std::string, std::size_t> block_of;
    for (std::size_t i = 0; i < cut.partition.size(); ++i) {
      for (const auto& a : cut.partition[i]) block_of[a] = i;
    }
    const std::size_t k = cut.partition.size();
    std::vector<VariantLog> out(k);

    auto project = [&](const Variant& trace, std::size_t block) {
      Variant sub;
      for (const auto& a : trace) {
        if (block_of.at(a) == block) sub.push_back(a);
      }
      return sub;
    };

    for (const auto& [trace, n] : log) {
      switch (cut.kind) {
        case Cut::Kind::kXor: {
          // A valid cut keeps each trace inside one block; otherwise the
          // block with the largest overlap wins.
          std::vector<std::size_t> overlap(k, 0);
          for (const auto& a : trace) ++overlap[block_of.at(a)];
          const auto best = static_cast<std::size_t>(
              std::max_element(overlap.begin(), overlap.end()) - overlap.begin());
          out[best][project(trace, best)] += n;
          break;
        }
        case Cut::Kind::kSequence:
        case Cut::Kind::kParallel:
          for (std::size_t b = 0; b < k; ++b) out[b][project(trace, b)] += n;
          break;
        case Cut::Kind::kLoop: {
          Variant segment;
          std::size_t segment_block = 0;
          bool expect_body = true;
          auto flush = [&] {
            if (segment_block != 0 && expect_body) out[0][Variant{}] += n;
            out[segment_block][segment] += n;
            expect_body = segment_block != 0;
            segment.clear();
          };
          for (const auto& a : trace) {
            const std::size_t b = block_of.at(a);
            if (!segment.empty() && b != segment_block) flush();
            segment_block = b;
            segment.push_back(a);
          }
          flush();
          if (expect_body) out[0][Variant{}] += n;
          break;
        }
      }
    }
    return out;
  }

  MinerOptions options_;
};

}  // namespace

ProcessTree inductive_miner(const SimpleLog& log, const MinerOptions& options) {
  VariantLog variants;
  for (const auto& trace : log) ++variants[trace];
  return Miner(options).mine(variants);
}

ProcessTree inductive_miner(const EventLog& log, const MinerOptions& options) {
  return inductive_miner(to_simple_log(log), options);
}

}  // namespace procmine
