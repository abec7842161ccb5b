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

#include "procmine/analytics.h"

#include <gtest/gtest.h>

#include "test_support.h"

namespace procmine {
namespace {

using testing::make_event;

EventLog log_of(const std::vector<std::vector<std::pair<std::string, std::string>>>& traces) {
  EventLog log;
  log.process_key = "p";
  int id = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    Trace t;
    t.case_id = "c" + std::to_string(i);
    std::int64_t ms = 0;
    for (const auto& [activity, resource] : traces[i]) {
      t.events.push_back(make_event("e" + std::to_string(id++), activity, ms, ms + 1000,
                                    resource.empty() ? std::nullopt
                                                     : std::optional<std::string>(resource)));
      ms += 1000;
    }
    log.traces.push_back(std::move(t));
  }
  return log;
}

double at(const ResourceMatrix& m, const std::string& a, const std::string& b) {
  auto idx = [&](const std::string& r) {
    return static_cast<std::size_t>(std::find(m.resources.begin(), m.resources.end(), r) -
                                    m.resources.begin());
  };
  return m.values.at(idx(a)).at(idx(b));
}

std::set<std::string> resources_of(const EventLog& log) {
  std::set<std::string> out;
  for (const auto& t : log.traces) {
    for (const auto& e : t.events) {
      if (e.resource) out.insert(*e.resource);
    }
  }
  return out;
}

TEST(HandoverTest, SinglePair) {
  const auto m = handover_of_work(log_of({{{"a", "r1"}, {"b", "r2"}}}));
  EXPECT_EQ(m.resources, (std::vector<std::string>{"r1", "r2"}));
  EXPECT_EQ(m.values, (std::vector<std::vector<double>>{{0, 1}, {0, 0}}));
}

TEST(HandoverTest, EmptyLog) {
  const auto m = handover_of_work(EventLog{});
  EXPECT_TRUE(m.resources.empty());
  EXPECT_TRUE(m.values.empty());
}

TEST(HandoverTest, SkipsEventsWithoutResource) {
  const auto m = handover_of_work(log_of({{{"a", "r1"}, {"b", ""}, {"c", "r2"}}}));
  EXPECT_EQ(at(m, "r1", "r2"), 1.0);
}

TEST(HandoverTest, NormalizedRowsSumToOne) {
  const auto m = handover_of_work(
      log_of({{{"a", "r1"}, {"b", "r2"}, {"c", "r1"}, {"d", "r1"}}}), true);
  EXPECT_DOUBLE_EQ(at(m, "r1", "r2"), 0.5);
  EXPECT_DOUBLE_EQ(at(m, "r1", "r1"), 0.5);
  EXPECT_DOUBLE_EQ(at(m, "r2", "r1"), 1.0);
}

// Compares every cell of `m` with the oracle table within `tol`.
void expect_matches(const ResourceMatrix& m, const testing::ResourcePairs& oracle, double tol) {
  for (const auto& a : m.resources) {
    for (const auto& b : m.resources) {
      const auto it = oracle.find({a, b});
      ASSERT_NEAR(at(m, a, b), it == oracle.end() ? 0.0 : it->second, tol) << a << " " << b;
    }
  }
}

TEST(HandoverTest, MatchesBruteForce) {
  testing::Rng rng(79);
  for (int i = 0; i < 30; ++i) {
    const EventLog log = testing::random_log(rng, {.max_traces = 500, .max_events = 12});
    expect_matches(handover_of_work(log), testing::brute_force_handover(log), 0.0);
  }
}

TEST(WorkingTogetherTest, SharedAndDisjointCases) {
  const auto shared = working_together(log_of({{{"a", "r1"}, {"b", "r2"}}}));
  EXPECT_EQ(at(shared, "r1", "r2"), 1.0);
  EXPECT_EQ(at(shared, "r1", "r1"), 1.0);
  const auto disjoint = working_together(log_of({{{"a", "r1"}}, {{"a", "r2"}}}));
  EXPECT_EQ(at(disjoint, "r1", "r2"), 0.0);
  EXPECT_EQ(at(disjoint, "r2", "r1"), 0.0);
}

TEST(WorkingTogetherTest, MatchesBruteForce) {
  testing::Rng rng(83);
  for (int i = 0; i < 30; ++i) {
    const EventLog log = testing::random_log(rng, {.max_traces = 100});
    expect_matches(working_together(log), testing::brute_force_working_together(log), 0.0);
  }
}

TEST(SimilarActivitiesTest, IdenticalAndOrthogonalProfiles) {
  const auto m = similar_activities(
      log_of({{{"a", "r1"}, {"b", "r1"}, {"a", "r2"}, {"b", "r2"}, {"c", "r3"}}}));
  EXPECT_NEAR(at(m, "r1", "r2"), 1.0, 1e-12);
  EXPECT_EQ(at(m, "r1", "r3"), 0.0);
  EXPECT_EQ(at(m, "r3", "r3"), 1.0);
}

TEST(SimilarActivitiesTest, MatchesDirectCosine) {
  testing::Rng rng(89);
  for (int i = 0; i < 30; ++i) {
    const EventLog log = testing::random_log(rng, {.max_traces = 100});
    const auto m = similar_activities(log);
    expect_matches(m, testing::direct_cosine(log), 1e-9);
    for (const auto& a : m.resources) {
      for (const auto& b : m.resources) ASSERT_EQ(at(m, a, b), at(m, b, a));
    }
  }
}

TEST(SnaTest, MetricNames) {
  for (const auto metric :
       {SnaMetric::kHandover, SnaMetric::kWorkingTogether, SnaMetric::kSimilarActivities}) {
    EXPECT_EQ(parse_sna_metric(sna_metric_name(metric)), metric);
  }
  EXPECT_FALSE(parse_sna_metric("handoff"));
  testing::Rng rng(97);
  const EventLog log = testing::random_log(rng, {});
  const auto m = social_network(log, SnaMetric::kWorkingTogether);
  EXPECT_EQ(m.metric, SnaMetric::kWorkingTogether);
  EXPECT_EQ(std::set<std::string>(m.resources.begin(), m.resources.end()), resources_of(log));
}

TEST(CaseStatisticsTest, DurationsAndOrder) {
  EventLog log;
  log.process_key = "p";
  Trace one{"short", {make_event("1", "a", 1000, 3000)}};
  Trace two{"long", {make_event("2", "a", 0, 1000), make_event("3", "b", 2000, 10'000)}};
  Trace tie{"a-tie", {make_event("4", "a", 0, 2000)}};
  log.traces = {one, two, tie};
  const auto stats = case_statistics(log);
  ASSERT_EQ(stats.size(), 3u);
  EXPECT_EQ(stats[0].case_id, "long");
  EXPECT_EQ(stats[0].n_events, 2u);
  EXPECT_DOUBLE_EQ(stats[0].duration_seconds, 10.0);
  EXPECT_EQ(stats[1].case_id, "a-tie");
  EXPECT_EQ(stats[2].case_id, "short");
  EXPECT_DOUBLE_EQ(stats[2].duration_seconds, 2.0);
}

TEST(CaseStatisticsTest, RandomLogsAreSortedAndNonnegative) {
  testing::Rng rng(101);
  for (int i = 0; i < 30; ++i) {
    const EventLog log = testing::random_log(rng, {});
    const auto stats = case_statistics(log);
    ASSERT_EQ(stats.size(), log.traces.size());
    for (std::size_t k = 0; k < stats.size(); ++k) {
      ASSERT_GE(stats[k].duration_seconds, 0.0);
      if (k > 0) {
        ASSERT_TRUE(stats[k - 1].duration_seconds > stats[k].duration_seconds ||
                    (stats[k - 1].duration_seconds == stats[k].duration_seconds &&
                     stats[k - 1].case_id < stats[k].case_id));
      }
    }
  }
}

// Six cases split cleanly by amount.
testing::PlantedDecision worked_decision() {
  testing::Rng rng(1);
  auto planted = testing::planted_decision(rng, 6, false);
  const std::vector<double> amounts = {100, 200, 300, 1500, 2000, 5000};
  for (std::size_t i = 0; i < 6; ++i) {
    Trace& t = planted.log.traces[i];
    t.events[0].attributes = {{"amount", amounts[i]}};
    t.events[2].activity = t.events[2].activity_id = amounts[i] < 1000 ? "c" : "b";
  }
  return planted;
}

TEST(DecisionMiningTest, WorkedThreshold) {
  const auto planted = worked_decision();
  const auto result = decision_mining(planted.log, planted.graph);
  ASSERT_FALSE(result.guards.empty());
  const Guard& g = result.guards.front();
  EXPECT_EQ(g.gateway_id, "g1");
  EXPECT_EQ(g.branch, "fc");
  EXPECT_EQ(g.attribute, "amount");
  EXPECT_EQ(g.comparator, Comparator::kLess);
  EXPECT_EQ(std::get<double>(g.constant), 900.0);
  EXPECT_EQ(g.accuracy, 1.0);
  EXPECT_EQ(g.support, 6u);
  ASSERT_EQ(result.guards.size(), 2u);
  EXPECT_EQ(result.guards[1].branch, "fb");
  EXPECT_EQ(result.guards[1].comparator, Comparator::kGreaterEqual);
}

TEST(DecisionMiningTest, NoAttributesNoGuards) {
  auto planted = worked_decision();
  for (auto& t : planted.log.traces) t.events[0].attributes.clear();
  const auto result = decision_mining(planted.log, planted.graph);
  EXPECT_TRUE(result.guards.empty());
  EXPECT_TRUE(result.suppressed.empty());
}

TEST(DecisionMiningTest, SingleObservedBranchNoGuard) {
  auto planted = worked_decision();
  for (auto& t : planted.log.traces) t.events[2].activity = t.events[2].activity_id = "b";
  EXPECT_TRUE(decision_mining(planted.log, planted.graph).guards.empty());
}

TEST(DecisionMiningTest, TextAndBoolStumps) {
  auto planted = worked_decision();
  for (std::size_t i = 0; i < 6; ++i) {
    auto& attrs = planted.log.traces[i].events[0].attributes;
    attrs.clear();
    attrs["tier"] = std::string(i < 3 ? "gold" : "basic");
  }
  auto result = decision_mining(planted.log, planted.graph);
  ASSERT_EQ(result.guards.size(), 1u);
  EXPECT_EQ(result.guards[0].comparator, Comparator::kEqual);
  EXPECT_EQ(result.guards[0].accuracy, 1.0);
  for (std::size_t i = 0; i < 6; ++i) {
    auto& attrs = planted.log.traces[i].events[0].attributes;
    attrs.clear();
    attrs["vip"] = i < 3;
  }
  result = decision_mining(planted.log, planted.graph);
  ASSERT_EQ(result.guards.size(), 2u);
  EXPECT_EQ(result.guards[0].branch, "fc");
  EXPECT_EQ(result.guards[0].constant, AttributeValue(true));
}

TEST(DecisionMiningTest, SnapshotIsLastWriteBeforeGateway) {
  auto planted = worked_decision();
  // A later write after the gateway must not leak into the snapshot.
  for (auto& t : planted.log.traces) t.events[3].attributes["amount"] = 0.0;
  const auto result = decision_mining(planted.log, planted.graph);
  ASSERT_FALSE(result.guards.empty());
  EXPECT_EQ(result.guards[0].accuracy, 1.0);
}

TEST(DecisionMiningTest, UnknownGatewayWarns) {
  auto planted = worked_decision();
  planted.log.traces[0].events[3].activity_id = "g_ghost";
  const auto result = decision_mining(planted.log, planted.graph);
  ASSERT_FALSE(result.warnings.empty());
  EXPECT_NE(result.warnings[0].find("g_ghost"), std::string::npos);
}

TEST(DecisionMiningTest, PlantedGuardRecovered) {
  testing::Rng rng(103);
  for (int i = 0; i < 20; ++i) {
    const auto planted = testing::planted_decision(rng, 50, false);
    const auto result = decision_mining(planted.log, planted.graph);
    ASSERT_FALSE(result.guards.empty());
    EXPECT_EQ(result.guards[0].attribute, "amount");
    EXPECT_EQ(result.guards[0].accuracy, 1.0);
  }
}

TEST(DecisionMiningTest, FloorIsConfigurable) {
  testing::Rng rng(107);
  const auto planted = testing::planted_decision(rng, 50, true);
  const auto strict = decision_mining(planted.log, planted.graph, {.accuracy_floor = 1.01});
  EXPECT_TRUE(strict.guards.empty());
  EXPECT_FALSE(strict.suppressed.empty());
  const auto lax = decision_mining(planted.log, planted.graph, {.accuracy_floor = 0.0});
  EXPECT_FALSE(lax.guards.empty());
}

}  // namespace
}  // namespace procmine
