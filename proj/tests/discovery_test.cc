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

#include "procmine/discovery.h"

#include <gtest/gtest.h>

#include "procmine/conformance.h"
#include "test_support.h"

namespace procmine {
namespace {

using PT = ProcessTree;
using testing::log_from_traces;

std::set<std::string> S(std::initializer_list<std::string> items) { return items; }

TEST(DfgTest, CountsAdjacentPairs) {
  const Dfg dfg = discover_dfg(log_from_traces({{"a", "b", "c"}, {"a", "c", "b"}}));
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  for (const auto& [edge, info] : dfg.edges) counts[edge] = info.count;
  EXPECT_EQ(counts, (testing::PairCounts{{{"a", "b"}, 1}, {{"b", "c"}, 1}, {{"a", "c"}, 1},
                                          {{"c", "b"}, 1}}));
  EXPECT_EQ(dfg.start_activities, (std::map<std::string, std::size_t>{{"a", 2}}));
  EXPECT_EQ(dfg.end_activities, (std::map<std::string, std::size_t>{{"b", 1}, {"c", 1}}));
  EXPECT_EQ(dfg.activities.at("a"), 2u);
}

TEST(DfgTest, EmptyLog) { EXPECT_EQ(discover_dfg(EventLog{}), Dfg{}); }

TEST(DfgTest, MeanGapClampsOverlap) {
  EventLog log;
  log.process_key = "p";
  Trace t;
  t.case_id = "c";
  t.events = {testing::make_event("1", "a", 0, 10'000), testing::make_event("2", "b", 14'000, 15'000),
              testing::make_event("3", "c", 5'000, 20'000)};
  log.traces.push_back(t);
  const Dfg dfg = discover_dfg(log);
  EXPECT_DOUBLE_EQ(dfg.edges.at({"a", "b"}).mean_gap_seconds, 4.0);
  EXPECT_DOUBLE_EQ(dfg.edges.at({"b", "c"}).mean_gap_seconds, 0.0);
}

TEST(DfgTest, MatchesBruteForceOnRandomLogs) {
  testing::Rng rng(47);
  for (int i = 0; i < 100; ++i) {
    const EventLog log = testing::random_log(rng, {.max_traces = 200, .max_events = 30});
    const Dfg dfg = discover_dfg(log);
    testing::PairCounts counts;
    for (const auto& [edge, info] : dfg.edges) counts[edge] = info.count;
    ASSERT_EQ(counts, testing::brute_force_pairs(log));
  }
}

TEST(DfgTest, FilterDropsRareEdges) {
  // Threshold is relative to the strongest edge leaving the same activity.
  SimpleLog log(9, {"a", "b"});
  log.push_back({"a", "c"});
  log.push_back({"c", "a"});
  const Dfg filtered = filter_dfg(discover_dfg(log), 0.5);
  EXPECT_TRUE(filtered.edges.contains({"a", "b"}));
  EXPECT_FALSE(filtered.edges.contains({"a", "c"}));
  EXPECT_TRUE(filtered.edges.contains({"c", "a"}));
  EXPECT_EQ(filter_dfg(discover_dfg(log), 0.0), discover_dfg(log));
}

TEST(CutTest, XorOnDisconnectedComponents) {
  const auto cut = find_cut(discover_dfg(SimpleLog{{"a"}, {"b"}}));
  ASSERT_TRUE(cut);
  EXPECT_EQ(cut->kind, Cut::Kind::kXor);
  EXPECT_EQ(cut->partition, (std::vector<std::set<std::string>>{S({"a"}), S({"b"})}));
}

TEST(CutTest, SequenceOnChain) {
  const auto cut = find_cut(discover_dfg(SimpleLog{{"a", "b"}}));
  ASSERT_TRUE(cut);
  EXPECT_EQ(cut->kind, Cut::Kind::kSequence);
  EXPECT_EQ(cut->partition, (std::vector<std::set<std::string>>{S({"a"}), S({"b"})}));
}

TEST(CutTest, ParallelOnBothDirections) {
  const Dfg dfg = discover_dfg(SimpleLog{{"a", "b"}, {"b", "a"}});
  const auto cut = find_cut(dfg);
  ASSERT_TRUE(cut);
  EXPECT_EQ(cut->kind, Cut::Kind::kParallel);
  EXPECT_EQ(cut->partition, (std::vector<std::set<std::string>>{S({"a"}), S({"b"})}));
  EXPECT_FALSE(find_xor_cut(dfg));
  EXPECT_FALSE(find_sequence_cut(dfg));
}

TEST(CutTest, LoopWithRedo) {
  const Dfg dfg = discover_dfg(SimpleLog{{"a"}, {"a", "b", "a"}});
  const auto cut = find_cut(dfg);
  ASSERT_TRUE(cut);
  EXPECT_EQ(cut->kind, Cut::Kind::kLoop);
  EXPECT_EQ(cut->partition, (std::vector<std::set<std::string>>{S({"a"}), S({"b"})}));
}

TEST(InductiveMinerTest, BaseCases) {
  EXPECT_EQ(inductive_miner(SimpleLog{}), PT::silent());
  EXPECT_EQ(inductive_miner(SimpleLog{{"a"}, {"a"}}), PT::activity("a"));
  EXPECT_EQ(inductive_miner(SimpleLog{{"a"}, {"a", "a"}}), PT::loop(PT::activity("a"), PT::silent()));
  EXPECT_EQ(inductive_miner(SimpleLog{{"a"}, {}}), PT::exclusive({PT::silent(), PT::activity("a")}));
}

TEST(InductiveMinerTest, WorkedExamples) {
  EXPECT_EQ(inductive_miner(SimpleLog{{"a", "b"}, {"a", "c"}}),
            PT::sequence({PT::activity("a"), PT::exclusive({PT::activity("b"), PT::activity("c")})}));
  EXPECT_EQ(inductive_miner(SimpleLog{{"a", "b"}, {"b", "a"}}),
            PT::parallel({PT::activity("a"), PT::activity("b")}));
}

TEST(InductiveMinerTest, FitsRandomLogs) {
  testing::Rng rng(53);
  for (int i = 0; i < 60; ++i) {
    const EventLog log = testing::random_log(
        rng, {.max_traces = 30, .max_events = 8, .alphabet = 5, .attributes = false,
              .awkward_text = false});
    const PT tree = inductive_miner(log);
    const auto fit = replay_fitness(log, tree_to_petri(tree));
    ASSERT_EQ(fit.fitness, 1.0) << to_string(tree);
    ASSERT_EQ(fit.total.missing, 0u);
    ASSERT_EQ(fit.total.remaining, 0u);
  }
}

TEST(InductiveMinerTest, RediscoversRandomTrees) {
  testing::Rng rng(59);
  for (int i = 0; i < 30; ++i) {
    const PT tree = testing::random_tree(rng, 3, 6);
    const PetriNet net = tree_to_petri(tree);
    const auto language = bounded_language(net, 10);
    const SimpleLog log(language.begin(), language.end());
    const PT found = inductive_miner(log);
    ASSERT_EQ(bounded_language(tree_to_petri(found), 10), language)
        << to_string(tree) << " vs " << to_string(found);
  }
}

TEST(InductiveMinerTest, NoiseThresholdDropsRareBehavior) {
  SimpleLog log(10, {"a", "b", "c", "d"});
  log.push_back({"a", "c", "b", "d"});
  EXPECT_EQ(to_string(inductive_miner(log)), "->(a, +(b, c), d)");
  EXPECT_EQ(to_string(inductive_miner(log, {.noise_threshold = 0.2})), "->(a, b, c, d)");
}

}  // namespace
}  // namespace procmine
