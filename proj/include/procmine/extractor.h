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

#ifndef PROCMINE_EXTRACTOR_H_
#define PROCMINE_EXTRACTOR_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "procmine/eventlog.h"
#include "procmine/timestamp.h"

namespace procmine {

// One row of ACT_HI_ACTINST.
struct ActInstRow {
  std::string id;
  std::string proc_def_key;
  std::string proc_inst_id;
  std::string act_id;
  std::string act_name;
  std::string act_type;
  Timestamp start_time;
  std::optional<Timestamp> end_time;
  std::optional<std::string> assignee;

  friend bool operator==(const ActInstRow&, const ActInstRow&) = default;
};

// One row of ACT_HI_DETAIL.
struct DetailRow {
  std::string act_inst_id;
  std::string name;
  std::string var_type;
  std::optional<std::string> text;
  std::optional<std::int64_t> long_value;
  std::optional<double> double_value;
  std::optional<Timestamp> time;

  friend bool operator==(const DetailRow&, const DetailRow&) = default;
};

using KeyedEvents = std::map<std::string, std::vector<CaseEvent>>;

struct ParsedRows {
  KeyedEvents events;                        // process key -> (case id, event)
  std::size_t skipped_incomplete = 0;        // rows without end_time_
  std::vector<std::string> rejected_duplicates;  // ids seen more than once
};

// Maps completed rows onto events. An empty act_name_ falls back to act_id_;
// a start_time_ later than end_time_ is clamped to end_time_.
// Later rows repeating an id_ are rejected and listed; the first one wins.
ParsedRows parse_actinst_rows(const std::vector<ActInstRow>& rows);

struct MergeReport {
  std::size_t merged = 0;
  std::size_t orphaned = 0;  // no event with that act_inst_id_
  std::size_t invalid = 0;   // unknown var_type_, missing value, or reserved name
  std::vector<std::string> warnings;
};

// Joins details on act_inst_id_ == event_id and sets typed attributes; a
// later row with the same name overwrites an earlier one.
MergeReport merge_detail_attributes(KeyedEvents& events, const std::vector<DetailRow>& details);

// --- CSV fixtures -----------------------------------------------------------

enum class TableKind { kActInst, kDetail };

std::string_view table_header(TableKind kind);

struct TableRows {
  std::vector<ActInstRow> actinst;
  std::vector<DetailRow> detail;
};

// Header must list exactly the documented columns (any order). Empty cells
// are absent optionals. Throws ParseError naming the missing column or the
// line of a bad cell.
TableRows read_table_csv(std::string_view text, TableKind kind);

std::string write_actinst_csv(const std::vector<ActInstRow>& rows);
std::string write_detail_csv(const std::vector<DetailRow>& rows);

// --- Watermark ----------------------------------------------------------------

struct ProcessWatermark {
  Timestamp high_time;
  std::set<std::string> ids_at_high_time;

  friend bool operator==(const ProcessWatermark&, const ProcessWatermark&) = default;
};

// Cursor per process key: the largest end_time_ extracted and the ids of the
// rows extracted at exactly that time.
struct WatermarkState {
  std::map<std::string, ProcessWatermark> processes;

  bool covers(const ActInstRow& row) const;
  // Smallest high_time over all keys; nullopt when the state is empty.
  std::optional<Timestamp> low_water() const;

  friend bool operator==(const WatermarkState&, const WatermarkState&) = default;
};

inline constexpr int kWatermarkFormatVersion = 1;

std::string watermark_to_json(const WatermarkState& state);
// Throws StateError on malformed documents or an unknown version.
WatermarkState watermark_from_json(std::string_view text);

// Missing file yields an empty state; unreadable or corrupt files throw StateError.
WatermarkState load_watermark(const std::filesystem::path& path);
// Writes to a temporary sibling and renames it over `path`.
void save_watermark(const std::filesystem::path& path, const WatermarkState& state);

// Exclusive advisory lock on `<path>.lock`, held for the object's lifetime.
class WatermarkLock {
 public:
  explicit WatermarkLock(const std::filesystem::path& state_path);
  ~WatermarkLock();
  WatermarkLock(const WatermarkLock&) = delete;
  WatermarkLock& operator=(const WatermarkLock&) = delete;

 private:
  int fd_ = -1;
};

// --- Sources -----------------------------------------------------------------

// Read access to the two history tables.
class TabularSource {
 public:
  virtual ~TabularSource() = default;

  // Completed rows with end_time_ >= since (all completed rows when absent).
  virtual std::vector<ActInstRow> completed_actinst_since(std::optional<Timestamp> since) = 0;
  virtual std::vector<DetailRow> details_for(const std::vector<std::string>& act_inst_ids) = 0;
};

// In-memory tables; used by tests and for replaying batches.
class MemorySource : public TabularSource {
 public:
  MemorySource() = default;
  MemorySource(std::vector<ActInstRow> actinst, std::vector<DetailRow> details);

  void append(const std::vector<ActInstRow>& rows);
  void append_details(const std::vector<DetailRow>& rows);

  std::vector<ActInstRow> completed_actinst_since(std::optional<Timestamp> since) override;
  std::vector<DetailRow> details_for(const std::vector<std::string>& act_inst_ids) override;

 private:
  std::vector<ActInstRow> actinst_;
  std::vector<DetailRow> details_;
};

// Directory holding act_hi_actinst.csv and (optionally) act_hi_detail.csv.
class CsvDirectorySource : public TabularSource {
 public:
  explicit CsvDirectorySource(std::filesystem::path dir);

  std::vector<ActInstRow> completed_actinst_since(std::optional<Timestamp> since) override;
  std::vector<DetailRow> details_for(const std::vector<std::string>& act_inst_ids) override;

 private:
  void load();

  std::filesystem::path dir_;
  std::optional<MemorySource> tables_;
};

// SQLite database with ACT_HI_ACTINST and ACT_HI_DETAIL tables; timestamps are
// stored as ISO-8601 text.
class SqliteSource : public TabularSource {
 public:
  explicit SqliteSource(const std::string& path);
  ~SqliteSource() override;
  SqliteSource(const SqliteSource&) = delete;
  SqliteSource& operator=(const SqliteSource&) = delete;

  std::vector<ActInstRow> completed_actinst_since(std::optional<Timestamp> since) override;
  std::vector<DetailRow> details_for(const std::vector<std::string>& act_inst_ids) override;

  // The statements issued against the database.
  static std::string actinst_query(bool with_watermark);
  static std::string detail_query(std::size_t id_count);

 private:
  struct Handle;
  std::unique_ptr<Handle> db_;
};

// Opens "sqlite:<path>" DSNs or a CSV fixture directory.
std::unique_ptr<TabularSource> open_source(const std::string& location);

// Creates the two tables in a fresh SQLite file and inserts rows.
void write_sqlite_tables(const std::string& path, const std::vector<ActInstRow>& actinst,
                         const std::vector<DetailRow>& details);

// --- Incremental extraction ---------------------------------------------------

struct ExtractionResult {
  std::map<std::string, EventLog> delta;  // only keys with new events
  WatermarkState state;
  std::size_t new_events = 0;
  std::size_t rejected_duplicates = 0;
  MergeReport details;
};

// Extracts completed rows not covered by `state` and returns them with the
// advanced state. An empty state yields a full extraction. The input state is
// never modified; callers persist the returned one.
ExtractionResult incremental_extract(TabularSource& source, const WatermarkState& state);

}  // namespace procmine

#endif  // PROCMINE_EXTRACTOR_H_
