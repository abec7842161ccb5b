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

#include "procmine/extractor.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "procmine/errors.h"
#include "test_support.h"

namespace procmine {
namespace {

using testing::TempDir;

ActInstRow row(std::string id, std::string key, std::string inst, std::string name,
               std::int64_t start, std::optional<std::int64_t> end,
               std::optional<std::string> assignee = std::nullopt) {
  ActInstRow r;
  r.id = std::move(id);
  r.proc_def_key = std::move(key);
  r.proc_inst_id = std::move(inst);
  r.act_id = name + "_id";
  r.act_name = std::move(name);
  r.act_type = "userTask";
  r.start_time = Timestamp{start};
  if (end) r.end_time = Timestamp{*end};
  r.assignee = std::move(assignee);
  return r;
}

DetailRow detail(std::string act_inst, std::string name, std::string type) {
  DetailRow d;
  d.act_inst_id = std::move(act_inst);
  d.name = std::move(name);
  d.var_type = std::move(type);
  return d;
}

std::multiset<std::string> event_ids(const std::map<std::string, EventLog>& logs) {
  std::multiset<std::string> ids;
  for (const auto& [_, log] : logs) {
    for (const auto& t : log.traces) {
      for (const auto& e : t.events) ids.insert(e.event_id);
    }
  }
  return ids;
}

TEST(ParseRowsTest, MapsColumnsOntoEvent) {
  const auto parsed =
      parse_actinst_rows({row("e1", "invoice", "c1", "Approve Invoice", 1000, 2000, "demo")});
  ASSERT_EQ(parsed.events.size(), 1u);
  const auto& [case_id, e] = parsed.events.at("invoice").at(0);
  EXPECT_EQ(case_id, "c1");
  EXPECT_EQ(e.event_id, "e1");
  EXPECT_EQ(e.activity, "Approve Invoice");
  EXPECT_EQ(e.activity_id, "Approve Invoice_id");
  EXPECT_EQ(e.activity_type, "userTask");
  EXPECT_EQ(e.start, Timestamp{1000});
  EXPECT_EQ(e.end, Timestamp{2000});
  EXPECT_EQ(e.resource, "demo");
}

TEST(ParseRowsTest, SkipsIncompleteRows) {
  const auto parsed = parse_actinst_rows({row("e1", "invoice", "c1", "A", 0, std::nullopt)});
  EXPECT_TRUE(parsed.events.empty());
  EXPECT_EQ(parsed.skipped_incomplete, 1u);
}

TEST(ParseRowsTest, SplitsByProcessKey) {
  const auto parsed =
      parse_actinst_rows({row("e1", "invoice", "c1", "A", 0, 1), row("e2", "leave", "c2", "B", 0, 1)});
  EXPECT_EQ(parsed.events.size(), 2u);
}

TEST(ParseRowsTest, RejectsDuplicatesFirstWins) {
  const auto parsed =
      parse_actinst_rows({row("e1", "invoice", "c1", "A", 0, 1), row("e1", "invoice", "c1", "B", 0, 1)});
  EXPECT_EQ(parsed.rejected_duplicates, std::vector<std::string>{"e1"});
  EXPECT_EQ(parsed.events.at("invoice").at(0).second.activity, "A");
}

TEST(ParseRowsTest, FallsBackToActIdAndClampsStart) {
  ActInstRow r = row("e1", "p", "c1", "", 5000, 1000);
  r.act_id = "gw1";
  const auto parsed = parse_actinst_rows({r});
  const Event& e = parsed.events.at("p").at(0).second;
  EXPECT_EQ(e.activity, "gw1");
  EXPECT_EQ(e.start, e.end);
}

TEST(ParseRowsTest, EmptyKeyThrows) {
  EXPECT_THROW(parse_actinst_rows({row("e1", "", "c1", "A", 0, 1)}), ValidationError);
}

TEST(ParseRowsTest, RowAccountingHolds) {
  testing::Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    auto rows = testing::random_actinst_rows(rng, 300, 0.2, 0.15);
    for (int k = 0; k < 20; ++k) rows.push_back(rows[rng() % rows.size()]);
    const auto parsed = parse_actinst_rows(rows);
    std::size_t emitted = 0;
    for (const auto& [_, list] : parsed.events) emitted += list.size();
    EXPECT_EQ(rows.size(), emitted + parsed.skipped_incomplete + parsed.rejected_duplicates.size());
  }
}

TEST(MergeDetailsTest, TypedValues) {
  auto parsed = parse_actinst_rows({row("e1", "invoice", "c1", "A", 0, 1)});
  DetailRow amount = detail("e1", "amount", "double");
  amount.double_value = 1500.0;
  DetailRow count = detail("e1", "count", "long");
  count.long_value = 3;
  DetailRow flag = detail("e1", "flag", "boolean");
  flag.long_value = 1;
  DetailRow name = detail("e1", "name", "string");
  name.text = "x";
  DetailRow due = detail("e1", "due", "date");
  due.time = Timestamp{42};
  const auto report = merge_detail_attributes(parsed.events, {amount, count, flag, name, due});
  EXPECT_EQ(report.merged, 5u);
  const auto& attrs = parsed.events.at("invoice")[0].second.attributes;
  EXPECT_EQ(std::get<double>(attrs.at("amount")), 1500.0);
  EXPECT_EQ(std::get<std::int64_t>(attrs.at("count")), 3);
  EXPECT_EQ(std::get<bool>(attrs.at("flag")), true);
  EXPECT_EQ(std::get<std::string>(attrs.at("name")), "x");
  EXPECT_EQ(std::get<Timestamp>(attrs.at("due")), Timestamp{42});
}

TEST(MergeDetailsTest, EmptyDetailsLeaveEventsUnchanged) {
  auto parsed = parse_actinst_rows({row("e1", "invoice", "c1", "A", 0, 1)});
  const auto before = parsed.events;
  merge_detail_attributes(parsed.events, {});
  EXPECT_EQ(parsed.events, before);
}

TEST(MergeDetailsTest, LastRowWins) {
  auto parsed = parse_actinst_rows({row("e1", "invoice", "c1", "A", 0, 1)});
  DetailRow first = detail("e1", "x", "long");
  first.long_value = 1;
  DetailRow second = detail("e1", "x", "long");
  second.long_value = 2;
  merge_detail_attributes(parsed.events, {first, second});
  EXPECT_EQ(std::get<std::int64_t>(parsed.events.at("invoice")[0].second.attributes.at("x")), 2);
}

TEST(MergeDetailsTest, OrphansAndInvalidRowsAreCounted) {
  auto parsed = parse_actinst_rows({row("e1", "invoice", "c1", "A", 0, 1)});
  DetailRow orphan = detail("nope", "x", "long");
  orphan.long_value = 1;
  DetailRow untyped = detail("e1", "y", "json");
  untyped.text = "{}";
  DetailRow reserved = detail("e1", "concept:name", "string");
  reserved.text = "z";
  const auto report = merge_detail_attributes(parsed.events, {orphan, untyped, reserved});
  EXPECT_EQ(report.orphaned, 1u);
  EXPECT_EQ(report.invalid, 2u);
  EXPECT_EQ(report.merged, 0u);
  EXPECT_FALSE(report.warnings.empty());
  EXPECT_TRUE(parsed.events.at("invoice")[0].second.attributes.empty());
}

TEST(TableCsvTest, HeaderOnlyGivesNoRows) {
  EXPECT_TRUE(read_table_csv(std::string(table_header(TableKind::kActInst)) + "\n",
                             TableKind::kActInst)
                  .actinst.empty());
}

TEST(TableCsvTest, RowsKeepInputOrderAndEmptyCellsAreAbsent) {
  const std::string text = std::string(table_header(TableKind::kActInst)) +
                           "\nr3,p,c,a,A,userTask,2024-01-01T00:00:00Z,,\n"
                           "r1,p,c,a,A,userTask,2024-01-01T00:00:00Z,2024-01-01T00:01:00Z,demo\n"
                           "r2,p,c,a,A,userTask,2024-01-01T00:00:00Z,2024-01-01T00:02:00Z,\n";
  const auto rows = read_table_csv(text, TableKind::kActInst).actinst;
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].id, "r3");
  EXPECT_EQ(rows[1].id, "r1");
  EXPECT_EQ(rows[2].id, "r2");
  EXPECT_FALSE(rows[0].end_time.has_value());
  EXPECT_EQ(rows[1].assignee, "demo");
  EXPECT_FALSE(rows[2].assignee.has_value());
}

TEST(TableCsvTest, MisspelledColumnIsNamed) {
  const std::string text =
      "id_,proc_def_key,proc_inst_id_,act_id_,act_name_,act_type_,start_time_,end_time_,assignee_\n";
  try {
    read_table_csv(text, TableKind::kActInst);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'proc_def_key'"), std::string::npos) << e.what();
  }
}

TEST(TableCsvTest, BadTimestampReportsLine) {
  const std::string text = std::string(table_header(TableKind::kActInst)) +
                           "\nr1,p,c,a,A,userTask,2024-01-01T00:00:00Z,yesterday,\n";
  try {
    read_table_csv(text, TableKind::kActInst);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("end_time_"), std::string::npos) << e.what();
  }
}

TEST(TableCsvTest, WriteReadRoundTrip) {
  testing::Rng rng(29);
  const auto rows = testing::random_actinst_rows(rng, 200, 0.2, 0.1);
  EXPECT_EQ(read_table_csv(write_actinst_csv(rows), TableKind::kActInst).actinst, rows);
  DetailRow d = detail("r1", "amount", "double");
  d.double_value = 0.1;
  DetailRow t = detail("r1", "when", "date");
  t.time = Timestamp{123456};
  DetailRow s = detail("r2", "note", "string");
  s.text = "comma, \"quote\"";
  const std::vector<DetailRow> details = {d, t, s};
  EXPECT_EQ(read_table_csv(write_detail_csv(details), TableKind::kDetail).detail, details);
}

TEST(WatermarkTest, JsonRoundTrip) {
  WatermarkState state;
  state.processes["invoice"] = {Timestamp{1000}, {"a", "b"}};
  state.processes["leave"] = {Timestamp{5}, {}};
  EXPECT_EQ(watermark_from_json(watermark_to_json(state)), state);
}

TEST(WatermarkTest, CorruptOrUnknownVersionThrows) {
  EXPECT_THROW(watermark_from_json("{"), StateError);
  EXPECT_THROW(watermark_from_json(R"({"version": 99, "processes": {}})"), StateError);
  EXPECT_THROW(watermark_from_json(R"({"version": 1, "processes": {"k": {"high_time": "x", "ids": []}}})"),
               StateError);
}

TEST(WatermarkTest, FilePersistence) {
  TempDir dir;
  const auto path = dir.path() / "state.json";
  EXPECT_TRUE(load_watermark(path).processes.empty());
  WatermarkState state;
  state.processes["k"] = {Timestamp{7}, {"x"}};
  save_watermark(path, state);
  EXPECT_EQ(load_watermark(path), state);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::ofstream(path) << "garbage";
  EXPECT_THROW(load_watermark(path), StateError);
}

TEST(WatermarkTest, LockIsExclusive) {
  TempDir dir;
  const auto path = dir.path() / "state.json";
  {
    WatermarkLock lock(path);
    EXPECT_THROW(WatermarkLock second(path), StateError);
  }
  EXPECT_NO_THROW(WatermarkLock again(path));
}

TEST(WatermarkTest, CoversTiesById) {
  WatermarkState state;
  state.processes["p"] = {Timestamp{100}, {"a"}};
  EXPECT_TRUE(state.covers(row("z", "p", "c", "A", 0, 99)));
  EXPECT_TRUE(state.covers(row("a", "p", "c", "A", 0, 100)));
  EXPECT_FALSE(state.covers(row("b", "p", "c", "A", 0, 100)));
  EXPECT_FALSE(state.covers(row("c", "p", "c", "A", 0, 101)));
  EXPECT_FALSE(state.covers(row("d", "q", "c", "A", 0, 1)));
}

TEST(IncrementalTest, EmptyStateIsFullExtraction) {
  MemorySource source({row("e1", "p", "c1", "A", 0, 10), row("e2", "p", "c1", "B", 10, 20),
                       row("e3", "q", "c2", "A", 0, std::nullopt)},
                      {});
  const auto result = incremental_extract(source, {});
  EXPECT_EQ(result.new_events, 2u);
  EXPECT_EQ(event_ids(result.delta), (std::multiset<std::string>{"e1", "e2"}));
  EXPECT_EQ(result.state.processes.at("p").high_time, Timestamp{20});
}

TEST(IncrementalTest, RepeatCallIsEmptyAndStateUnchanged) {
  MemorySource source({row("e1", "p", "c1", "A", 0, 10), row("e2", "p", "c1", "B", 10, 10)}, {});
  const auto first = incremental_extract(source, {});
  const auto second = incremental_extract(source, first.state);
  EXPECT_TRUE(second.delta.empty());
  EXPECT_EQ(second.new_events, 0u);
  EXPECT_EQ(second.state, first.state);
}

TEST(IncrementalTest, InputStateIsNotModified) {
  MemorySource source({row("e1", "p", "c1", "A", 0, 10)}, {});
  const WatermarkState state;
  incremental_extract(source, state);
  EXPECT_TRUE(state.processes.empty());
}

TEST(IncrementalTest, DetailsFollowTheirEvents) {
  DetailRow d = detail("e1", "amount", "double");
  d.double_value = 1500.0;
  MemorySource source({row("e1", "invoice", "c1", "A", 0, 10)}, {d});
  const auto result = incremental_extract(source, {});
  const auto& e = result.delta.at("invoice").traces[0].events[0];
  EXPECT_EQ(std::get<double>(e.attributes.at("amount")), 1500.0);
}

TEST(IncrementalTest, BatchesWithTiesEqualFullExtraction) {
  testing::Rng rng(31);
  for (int round = 0; round < 30; ++round) {
    auto rows = testing::random_actinst_rows(rng, 400, 0.3, 0.1);
    std::stable_sort(rows.begin(), rows.end(), [](const ActInstRow& a, const ActInstRow& b) {
      const auto ka = a.end_time.value_or(Timestamp{0});
      const auto kb = b.end_time.value_or(Timestamp{0});
      return ka < kb;
    });
    MemorySource full_source(rows, {});
    const auto full = event_ids(incremental_extract(full_source, {}).delta);

    MemorySource source;
    WatermarkState state;
    std::multiset<std::string> seen;
    std::size_t pos = 0;
    while (pos < rows.size()) {
      const std::size_t n = 1 + rng() % 60;
      const std::size_t end = std::min(rows.size(), pos + n);
      source.append({rows.begin() + static_cast<long>(pos), rows.begin() + static_cast<long>(end)});
      pos = end;
      auto result = incremental_extract(source, state);
      for (const auto& id : event_ids(result.delta)) seen.insert(id);
      state = std::move(result.state);
    }
    ASSERT_EQ(seen, full) << "round " << round;
  }
}

TEST(SourceTest, CsvDirectoryMatchesMemory) {
  TempDir dir;
  testing::Rng rng(37);
  const auto rows = testing::random_actinst_rows(rng, 100, 0.2, 0.1);
  DetailRow d = detail(rows[0].id, "amount", "long");
  d.long_value = 5;
  std::ofstream(dir.path() / "act_hi_actinst.csv") << write_actinst_csv(rows);
  std::ofstream(dir.path() / "act_hi_detail.csv") << write_detail_csv({d});
  auto source = open_source(dir.path().string());
  MemorySource memory(rows, {d});
  EXPECT_EQ(source->completed_actinst_since(Timestamp{1'700'000'500'000}),
            memory.completed_actinst_since(Timestamp{1'700'000'500'000}));
  EXPECT_EQ(source->details_for({rows[0].id}), std::vector<DetailRow>{d});
}

TEST(SourceTest, SqliteMatchesMemory) {
  TempDir dir;
  testing::Rng rng(41);
  const auto rows = testing::random_actinst_rows(rng, 1200, 0.2, 0.1);
  std::vector<DetailRow> details;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ids.push_back(rows[i].id);
    DetailRow d = detail(rows[i].id, "n", "long");
    d.long_value = static_cast<std::int64_t>(i);
    details.push_back(d);
  }
  const std::string db = (dir.path() / "engine.db").string();
  write_sqlite_tables(db, rows, details);
  auto source = open_source("sqlite:" + db);
  MemorySource memory(rows, details);

  auto by_id = [](std::vector<ActInstRow> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return v;
  };
  EXPECT_EQ(by_id(source->completed_actinst_since(std::nullopt)),
            by_id(memory.completed_actinst_since(std::nullopt)));
  const Timestamp since{1'700'000'000'000 + 5'000'000};
  EXPECT_EQ(by_id(source->completed_actinst_since(since)),
            by_id(memory.completed_actinst_since(since)));
  // More ids than one IN (...) chunk holds.
  EXPECT_EQ(source->details_for(ids).size(), details.size());

  const auto a = incremental_extract(*source, {});
  const auto b = incremental_extract(memory, {});
  EXPECT_EQ(a.delta, b.delta);
  EXPECT_EQ(a.state, b.state);
}

TEST(SourceTest, QueriesFollowTheTableLayout) {
  const std::string q = SqliteSource::actinst_query(true);
  EXPECT_NE(q.find("FROM ACT_HI_ACTINST WHERE END_TIME_ IS NOT NULL AND END_TIME_ >= ?"),
            std::string::npos);
  EXPECT_NE(SqliteSource::detail_query(3).find("FROM ACT_HI_DETAIL WHERE ACT_INST_ID_ IN (?,?,?)"),
            std::string::npos);
}

TEST(SourceTest, UnreachableSourcesThrowSourceError) {
  EXPECT_THROW(open_source("sqlite:/nonexistent/x.db"), SourceError);
  EXPECT_THROW(open_source("postgres://host/db"), SourceError);
  auto dir = open_source("/nonexistent/dir");
  EXPECT_THROW(dir->completed_actinst_since(std::nullopt), SourceError);
}

TEST(SourceTest, BundledFixtureLoads) {
  auto source = open_source(testing::source_path("fixtures/camunda").string());
  const auto result = incremental_extract(*source, {});
  EXPECT_EQ(result.delta.size(), 2u);
  EXPECT_GT(result.details.merged, 0u);
  EXPECT_EQ(result.details.orphaned, 0u);
}

}  // namespace
}  // namespace procmine
