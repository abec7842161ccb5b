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

#include "procmine/conformance.h"

#include <gtest/gtest.h>

#include <functional>

#include "procmine/discovery.h"
#include "test_support.h"

namespace procmine {
namespace {

using PT = ProcessTree;

PetriNet seq_ab() { return tree_to_petri(PT::sequence({PT::activity("a"), PT::activity("b")})); }

PetriNet flower_ab() {
  return tree_to_petri(PT::loop(PT::silent(), PT::exclusive({PT::activity("a"), PT::activity("b")})));
}

bool has_loop(const PT& t) {
  if (t.kind == PT::Kind::kLoop) return true;
  for (const auto& c : t.children) {
    if (has_loop(c)) return true;
  }
  return false;
}

TEST(FitnessTest, PerfectTrace) {
  const TokenCounts c = replay_trace(seq_ab(), {"a", "b"});
  EXPECT_EQ(c.missing, 0u);
  EXPECT_EQ(c.remaining, 0u);
  EXPECT_DOUBLE_EQ(c.fitness(), 1.0);
}

TEST(FitnessTest, SkippedFirstActivity) {
  // Hand replay of <b> on source -a-> p1 -b-> sink.
  const TokenCounts c = replay_trace(seq_ab(), {"b"});
  EXPECT_EQ(c, (TokenCounts{.missing = 1, .remaining = 1, .consumed = 2, .produced = 2}));
  EXPECT_DOUBLE_EQ(c.fitness(), 0.5);
}

TEST(FitnessTest, UnknownLabelIsOneMissingUnit) {
  const TokenCounts c = replay_trace(seq_ab(), {"a", "zz", "b"});
  EXPECT_EQ(c.missing, 1u);
  EXPECT_EQ(c.consumed, 4u);
  EXPECT_EQ(c.remaining, 0u);
}

TEST(FitnessTest, AggregateUsesSummedCounts) {
  const auto result = replay_fitness(testing::log_from_traces({{"a", "b"}, {"b"}}), seq_ab());
  ASSERT_EQ(result.traces.size(), 2u);
  EXPECT_DOUBLE_EQ(result.traces[0].fitness, 1.0);
  EXPECT_DOUBLE_EQ(result.traces[1].fitness, 0.5);
  EXPECT_EQ(result.total.missing, 1u);
  EXPECT_DOUBLE_EQ(result.fitness, 0.5 * (1 - 1.0 / 5) + 0.5 * (1 - 1.0 / 5));
}

TEST(FitnessTest, SilentTransitionsAreFiredToEnable) {
  const PetriNet net = tree_to_petri(
      PT::sequence({PT::exclusive({PT::activity("a"), PT::silent()}),
                    PT::parallel({PT::activity("b"), PT::activity("c")})}));
  EXPECT_DOUBLE_EQ(replay_trace(net, {"c", "b"}).fitness(), 1.0);
  EXPECT_DOUBLE_EQ(replay_trace(net, {"a", "b", "c"}).fitness(), 1.0);
}

TEST(FitnessTest, SimulatedLogsFitExactly) {
  testing::Rng rng(61);
  for (int i = 0; i < 50; ++i) {
    const PetriNet net = tree_to_petri(testing::random_tree(rng, 3, 6));
    const auto sim = simulate(net, 100, 40, rng());
    EventLog log = testing::log_from_traces(sim.traces);
    const auto fit = replay_fitness(log, net);
    ASSERT_EQ(fit.total.missing, 0u);
    ASSERT_EQ(fit.total.remaining, 0u);
    ASSERT_EQ(fit.fitness, 1.0);
  }
}

TEST(FitnessTest, ValuesStayInRange) {
  testing::Rng rng(67);
  for (int i = 0; i < 50; ++i) {
    const PetriNet net = tree_to_petri(testing::random_tree(rng, 3, 5));
    const EventLog log = testing::random_log(
        rng, {.max_traces = 10, .max_events = 8, .alphabet = 6, .attributes = false,
              .awkward_text = false});
    const auto fit = replay_fitness(log, net);
    ASSERT_GE(fit.fitness, 0.0);
    ASSERT_LE(fit.fitness, 1.0);
    ASSERT_LE(fit.total.missing, fit.total.consumed);
    ASSERT_LE(fit.total.remaining, fit.total.produced);
    const auto prec = etc_precision(log, net);
    ASSERT_GE(prec.precision, 0.0);
    ASSERT_LE(prec.precision, 1.0);
    ASSERT_LE(prec.escaping, prec.allowed);
  }
}

TEST(PrecisionTest, ExactModel) {
  const auto p = etc_precision(std::vector<std::vector<std::string>>{{"a", "b"}}, seq_ab());
  EXPECT_EQ(p.escaping, 0.0);
  EXPECT_DOUBLE_EQ(p.precision, 1.0);
}

TEST(PrecisionTest, FlowerModel) {
  const std::vector<std::vector<std::string>> log = {{"a", "b"}};
  const auto p = etc_precision(log, flower_ab());
  EXPECT_DOUBLE_EQ(p.escaping, 4.0);
  EXPECT_DOUBLE_EQ(p.allowed, 6.0);
  EXPECT_NEAR(p.precision, 1.0 / 3.0, 1e-9);
  const auto oracle = testing::prefix_automaton_precision(log, flower_ab());
  EXPECT_NEAR(p.precision, oracle.precision, 1e-9);
}

TEST(PrecisionTest, NonReplayablePrefixesAreSkipped) {
  const auto p = etc_precision(std::vector<std::vector<std::string>>{{"b", "a"}}, seq_ab());
  EXPECT_GT(p.skipped_prefixes, 0u);
}

TEST(PrecisionTest, MatchesOracleOnRandomNets) {
  testing::Rng rng(71);
  for (int i = 0; i < 60; ++i) {
    const PetriNet net = tree_to_petri(testing::random_tree(rng, 3, 6));
    const auto sim = simulate(net, 30, 30, rng());
    const auto p = etc_precision(sim.traces, net);
    const auto oracle = testing::prefix_automaton_precision(sim.traces, net);
    ASSERT_NEAR(p.escaping, oracle.escaping, 1e-9);
    ASSERT_NEAR(p.allowed, oracle.allowed, 1e-9);
  }
}

TEST(PrecisionTest, FullyCoveredLanguageIsPrecise) {
  testing::Rng rng(73);
  int checked = 0;
  while (checked < 30) {
    const PT tree = testing::random_tree(rng, 3, 6);
    if (has_loop(tree)) continue;
    const PetriNet net = tree_to_petri(tree);
    const auto language = bounded_language(net, 16);
    const std::vector<std::vector<std::string>> log(language.begin(), language.end());
    ASSERT_DOUBLE_EQ(etc_precision(log, net).precision, 1.0) << to_string(tree);
    ++checked;
  }
}

}  // namespace
}  // namespace procmine
