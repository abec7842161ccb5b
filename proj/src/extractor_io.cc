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

#include <fcntl.h>
#include <sqlite3.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "procmine/csv.h"
#include "procmine/errors.h"
#include "procmine/extractor.h"
#include "value_text.h"

namespace procmine {
namespace {

namespace fs = std::filesystem;

const std::vector<std::string>& columns(TableKind kind) {
  static const std::vector<std::string> kActInst = {
      "id_",       "proc_def_key_", "proc_inst_id_", "act_id_",  "act_name_",
      "act_type_", "start_time_",   "end_time_",     "assignee_"};
  static const std::vector<std::string> kDetail = {"act_inst_id_", "name_",   "var_type_", "text_",
                                                   "long_",        "double_", "time_"};
  return kind == TableKind::kActInst ? kActInst : kDetail;
}

std::optional<std::string> opt_text(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SourceError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string ts_cell(const std::optional<Timestamp>& t) {
  return t ? format_iso8601(*t) : std::string();
}

}  // namespace

std::string_view table_header(TableKind kind) {
  static const std::string kActInst =
      "id_,proc_def_key_,proc_inst_id_,act_id_,act_name_,act_type_,start_time_,end_time_,assignee_";
  static const std::string kDetail = "act_inst_id_,name_,var_type_,text_,long_,double_,time_";
  return kind == TableKind::kActInst ? kActInst : kDetail;
}

TableRows read_table_csv(std::string_view text, TableKind kind) {
  const auto records = csv::parse(text);
  if (records.empty()) throw ParseError("table csv: missing header");
  const auto& expected = columns(kind);
  const auto& header = records.front().fields;

  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (std::find(expected.begin(), expected.end(), header[i]) == expected.end()) {
      throw ParseError("table csv: unknown column '" + header[i] + "'");
    }
    position[header[i]] = i;
  }
  for (const auto& col : expected) {
    if (!position.contains(col)) throw ParseError("table csv: missing column '" + col + "'");
  }

  TableRows out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string where = "table csv: line " + std::to_string(rec.line);
    if (rec.fields.size() != header.size()) {
      throw ParseError(where + ": expected " + std::to_string(header.size()) + " fields, found " +
                       std::to_string(rec.fields.size()));
    }
    auto cell = [&](const std::string& col) -> const std::string& {
      return rec.fields[position.at(col)];
    };
    auto time_cell = [&](const std::string& col) -> std::optional<Timestamp> {
      if (cell(col).empty()) return std::nullopt;
      return parse_iso8601_or_throw(cell(col), where + ", column " + col);
    };
    if (kind == TableKind::kActInst) {
      ActInstRow row;
      row.id = cell("id_");
      row.proc_def_key = cell("proc_def_key_");
      row.proc_inst_id = cell("proc_inst_id_");
      row.act_id = cell("act_id_");
      row.act_name = cell("act_name_");
      row.act_type = cell("act_type_");
      if (row.id.empty() || row.proc_def_key.empty() || row.proc_inst_id.empty()) {
        throw ParseError(where + ": id_, proc_def_key_ and proc_inst_id_ are required");
      }
      auto start = time_cell("start_time_");
      if (!start) throw ParseError(where + ", column start_time_: value required");
      row.start_time = *start;
      row.end_time = time_cell("end_time_");
      row.assignee = opt_text(cell("assignee_"));
      out.actinst.push_back(std::move(row));
    } else {
      DetailRow row;
      row.act_inst_id = cell("act_inst_id_");
      row.name = cell("name_");
      row.var_type = cell("var_type_");
      row.text = opt_text(cell("text_"));
      if (!cell("long_").empty()) {
        row.long_value = internal::parse_int(cell("long_"));
        if (!row.long_value) throw ParseError(where + ", column long_: not an integer");
      }
      if (!cell("double_").empty()) {
        row.double_value = internal::parse_double(cell("double_"));
        if (!row.double_value) throw ParseError(where + ", column double_: not a number");
      }
      row.time = time_cell("time_");
      out.detail.push_back(std::move(row));
    }
  }
  return out;
}

std::string write_actinst_csv(const std::vector<ActInstRow>& rows) {
  std::string out(table_header(TableKind::kActInst));
  out += "\r\n";
  for (const auto& r : rows) {
    csv::append_row(out, {r.id, r.proc_def_key, r.proc_inst_id, r.act_id, r.act_name, r.act_type,
                          format_iso8601(r.start_time), ts_cell(r.end_time),
                          r.assignee.value_or("")});
  }
  return out;
}

std::string write_detail_csv(const std::vector<DetailRow>& rows) {
  std::string out(table_header(TableKind::kDetail));
  out += "\r\n";
  for (const auto& r : rows) {
    csv::append_row(out, {r.act_inst_id, r.name, r.var_type, r.text.value_or(""),
                          r.long_value ? std::to_string(*r.long_value) : "",
                          r.double_value ? internal::format_double(*r.double_value) : "",
                          ts_cell(r.time)});
  }
  return out;
}

// --- watermark persistence ------------------------------------------------------

std::string watermark_to_json(const WatermarkState& state) {
  nlohmann::json doc;
  doc["version"] = kWatermarkFormatVersion;
  doc["processes"] = nlohmann::json::object();
  for (const auto& [key, wm] : state.processes) {
    doc["processes"][key] = {{"high_time", format_iso8601(wm.high_time)},
                             {"ids", std::vector<std::string>(wm.ids_at_high_time.begin(),
                                                              wm.ids_at_high_time.end())}};
  }
  return doc.dump(2);
}

WatermarkState watermark_from_json(std::string_view text) {
  WatermarkState state;
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("version").get<int>() != kWatermarkFormatVersion) {
      throw StateError("watermark: unsupported version " + doc.at("version").dump());
    }
    for (const auto& [key, entry] : doc.at("processes").items()) {
      auto high = parse_iso8601(entry.at("high_time").get<std::string>());
      if (!high) throw StateError("watermark: bad high_time for '" + key + "'");
      ProcessWatermark wm{*high, {}};
      for (const auto& id : entry.at("ids")) wm.ids_at_high_time.insert(id.get<std::string>());
      state.processes.emplace(key, std::move(wm));
    }
  } catch (const nlohmann::json::exception& e) {
    throw StateError(std::string("watermark: corrupt state: ") + e.what());
  }
  return state;
}

WatermarkState load_watermark(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StateError("watermark: cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return watermark_from_json(buf.str());
}

void save_watermark(const fs::path& path, const WatermarkState& state) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << watermark_to_json(state);
    out.flush();
    if (!out) throw StateError("watermark: cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw StateError("watermark: cannot replace " + path.string() + ": " + ec.message());
}

WatermarkLock::WatermarkLock(const fs::path& state_path) {
  const std::string lock_path = state_path.string() + ".lock";
  fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
  if (fd_ < 0) throw StateError("watermark: cannot open lock file " + lock_path);
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw StateError("watermark: another extraction holds " + lock_path);
  }
}

WatermarkLock::~WatermarkLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

// --- sources -----------------------------------------------------------------

MemorySource::MemorySource(std::vector<ActInstRow> actinst, std::vector<DetailRow> details)
    : actinst_(std::move(actinst)), details_(std::move(details)) {}

void MemorySource::append(const std::vector<ActInstRow>& rows) {
  actinst_.insert(actinst_.end(), rows.begin(), rows.end());
}

void MemorySource::append_details(const std::vector<DetailRow>& rows) {
  details_.insert(details_.end(), rows.begin(), rows.end());
}

std::vector<ActInstRow> MemorySource::completed_actinst_since(std::optional<Timestamp> since) {
  std::vector<ActInstRow> out;
  for (const auto& r : actinst_) {
    if (r.end_time && (!since || *r.end_time >= *since)) out.push_back(r);
  }
  return out;
}

std::vector<DetailRow> MemorySource::details_for(const std::vector<std::string>& act_inst_ids) {
  const std::unordered_set<std::string> wanted(act_inst_ids.begin(), act_inst_ids.end());
  std::vector<DetailRow> out;
  for (const auto& d : details_) {
    if (wanted.contains(d.act_inst_id)) out.push_back(d);
  }
  return out;
}

CsvDirectorySource::CsvDirectorySource(fs::path dir) : dir_(std::move(dir)) {}

void CsvDirectorySource::load() {
  if (tables_) return;
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) throw SourceError("source directory not found: " + dir_.string());
  const fs::path actinst = dir_ / "act_hi_actinst.csv";
  if (!fs::exists(actinst, ec)) throw SourceError("missing " + actinst.string());
  auto rows = read_table_csv(read_file(actinst), TableKind::kActInst).actinst;
  std::vector<DetailRow> details;
  const fs::path detail = dir_ / "act_hi_detail.csv";
  if (fs::exists(detail, ec)) details = read_table_csv(read_file(detail), TableKind::kDetail).detail;
  tables_.emplace(std::move(rows), std::move(details));
}

std::vector<ActInstRow> CsvDirectorySource::completed_actinst_since(std::optional<Timestamp> since) {
  load();
  return tables_->completed_actinst_since(since);
}

std::vector<DetailRow> CsvDirectorySource::details_for(const std::vector<std::string>& ids) {
  load();
  return tables_->details_for(ids);
}

struct SqliteSource::Handle {
  sqlite3* db = nullptr;
  ~Handle() {
    if (db) sqlite3_close(db);
  }
};

namespace {

class Statement {
 public:
  Statement(sqlite3* db, const std::string& sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt_, nullptr) != SQLITE_OK) {
      throw SourceError(std::string("sqlite: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  void bind(int index, const std::string& value) {
    sqlite3_bind_text(stmt_, index, value.c_str(), -1, SQLITE_TRANSIENT);
  }
  void bind_null(int index) { sqlite3_bind_null(stmt_, index); }
  void bind(int index, std::int64_t value) { sqlite3_bind_int64(stmt_, index, value); }
  void bind(int index, double value) { sqlite3_bind_double(stmt_, index, value); }

  bool step() {
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw SourceError(std::string("sqlite: ") + sqlite3_errmsg(db_));
  }

  void reset() {
    sqlite3_reset(stmt_);
    sqlite3_clear_bindings(stmt_);
  }

  bool is_null(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }
  std::string text(int col) const {
    const auto* p = sqlite3_column_text(stmt_, col);
    return p ? reinterpret_cast<const char*>(p) : "";
  }
  std::optional<std::string> opt(int col) const {
    if (is_null(col)) return std::nullopt;
    return text(col);
  }
  std::int64_t int64(int col) const { return sqlite3_column_int64(stmt_, col); }
  double real(int col) const { return sqlite3_column_double(stmt_, col); }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

void exec(sqlite3* db, const std::string& sql) {
  char* err = nullptr;
  if (sqlite3_exec(db, sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw SourceError("sqlite: " + msg);
  }
}

std::optional<Timestamp> ts_column(const Statement& st, int col, const std::string& what) {
  if (st.is_null(col) || st.text(col).empty()) return std::nullopt;
  return parse_iso8601_or_throw(st.text(col), "sqlite: " + what);
}

}  // namespace

SqliteSource::SqliteSource(const std::string& path) : db_(std::make_unique<Handle>()) {
  if (sqlite3_open_v2(path.c_str(), &db_->db, SQLITE_OPEN_READONLY, nullptr) != SQLITE_OK) {
    throw SourceError("sqlite: cannot open '" + path + "': " +
                      (db_->db ? sqlite3_errmsg(db_->db) : "out of memory"));
  }
}

SqliteSource::~SqliteSource() = default;

std::string SqliteSource::actinst_query(bool with_watermark) {
  std::string sql =
      "SELECT ID_, PROC_DEF_KEY_, PROC_INST_ID_, ACT_ID_, ACT_NAME_, ACT_TYPE_, START_TIME_, "
      "END_TIME_, ASSIGNEE_ FROM ACT_HI_ACTINST WHERE END_TIME_ IS NOT NULL";
  if (with_watermark) sql += " AND END_TIME_ >= ?1";
  return sql + " ORDER BY END_TIME_, ID_";
}

std::string SqliteSource::detail_query(std::size_t id_count) {
  std::string sql =
      "SELECT ACT_INST_ID_, NAME_, VAR_TYPE_, TEXT_, LONG_, DOUBLE_, TIME_ FROM ACT_HI_DETAIL "
      "WHERE ACT_INST_ID_ IN (";
  for (std::size_t i = 0; i < id_count; ++i) sql += i ? ",?" : "?";
  return sql + ")";
}

std::vector<ActInstRow> SqliteSource::completed_actinst_since(std::optional<Timestamp> since) {
  Statement st(db_->db, actinst_query(since.has_value()));
  if (since) st.bind(1, format_iso8601(*since));
  std::vector<ActInstRow> out;
  while (st.step()) {
    ActInstRow r;
    r.id = st.text(0);
    r.proc_def_key = st.text(1);
    r.proc_inst_id = st.text(2);
    r.act_id = st.text(3);
    r.act_name = st.text(4);
    r.act_type = st.text(5);
    auto start = ts_column(st, 6, "START_TIME_ of " + r.id);
    if (!start) throw SourceError("sqlite: row " + r.id + " has no START_TIME_");
    r.start_time = *start;
    r.end_time = ts_column(st, 7, "END_TIME_ of " + r.id);
    r.assignee = st.opt(8);
    if (r.assignee && r.assignee->empty()) r.assignee.reset();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DetailRow> SqliteSource::details_for(const std::vector<std::string>& act_inst_ids) {
  constexpr std::size_t kChunk = 500;
  std::vector<DetailRow> out;
  for (std::size_t begin = 0; begin < act_inst_ids.size(); begin += kChunk) {
    const std::size_t n = std::min(kChunk, act_inst_ids.size() - begin);
    Statement st(db_->db, detail_query(n));
    for (std::size_t i = 0; i < n; ++i) st.bind(static_cast<int>(i + 1), act_inst_ids[begin + i]);
    while (st.step()) {
      DetailRow d;
      d.act_inst_id = st.text(0);
      d.name = st.text(1);
      d.var_type = st.text(2);
      d.text = st.opt(3);
      if (!st.is_null(4)) d.long_value = st.int64(4);
      if (!st.is_null(5)) d.double_value = st.real(5);
      d.time = ts_column(st, 6, "TIME_ of detail " + d.name);
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::unique_ptr<TabularSource> open_source(const std::string& location) {
  if (location.rfind("sqlite:", 0) == 0) {
    std::string path = location.substr(7);
    if (path.rfind("//", 0) == 0) path = path.substr(2);
    std::error_code ec;
    if (!fs::exists(path, ec)) throw SourceError("sqlite database not found: " + path);
    return std::make_unique<SqliteSource>(path);
  }
  if (location.find("://") != std::string::npos) {
    throw SourceError("no driver for event-data source '" + location + "'");
  }
  return std::make_unique<CsvDirectorySource>(location);
}

void write_sqlite_tables(const std::string& path, const std::vector<ActInstRow>& actinst,
                         const std::vector<DetailRow>& details) {
  sqlite3* raw = nullptr;
  if (sqlite3_open(path.c_str(), &raw) != SQLITE_OK) {
    sqlite3_close(raw);
    throw SourceError("sqlite: cannot create '" + path + "'");
  }
  std::unique_ptr<sqlite3, decltype(&sqlite3_close)> db(raw, &sqlite3_close);
  exec(db.get(),
       "CREATE TABLE IF NOT EXISTS ACT_HI_ACTINST (ID_ TEXT PRIMARY KEY, PROC_DEF_KEY_ TEXT, "
       "PROC_INST_ID_ TEXT, ACT_ID_ TEXT, ACT_NAME_ TEXT, ACT_TYPE_ TEXT, START_TIME_ TEXT, "
       "END_TIME_ TEXT, ASSIGNEE_ TEXT);"
       "CREATE TABLE IF NOT EXISTS ACT_HI_DETAIL (ACT_INST_ID_ TEXT, NAME_ TEXT, VAR_TYPE_ TEXT, "
       "TEXT_ TEXT, LONG_ INTEGER, DOUBLE_ REAL, TIME_ TEXT);"
       "BEGIN;");
  {
    Statement ins(db.get(), "INSERT INTO ACT_HI_ACTINST VALUES (?,?,?,?,?,?,?,?,?)");
    for (const auto& r : actinst) {
      ins.bind(1, r.id);
      ins.bind(2, r.proc_def_key);
      ins.bind(3, r.proc_inst_id);
      ins.bind(4, r.act_id);
      ins.bind(5, r.act_name);
      ins.bind(6, r.act_type);
      ins.bind(7, format_iso8601(r.start_time));
      if (r.end_time) ins.bind(8, format_iso8601(*r.end_time)); else ins.bind_null(8);
      if (r.assignee) ins.bind(9, *r.assignee); else ins.bind_null(9);
      ins.step();
      ins.reset();
    }
    Statement det(db.get(), "INSERT INTO ACT_HI_DETAIL VALUES (?,?,?,?,?,?,?)");
    for (const auto& d : details) {
      det.bind(1, d.act_inst_id);
      det.bind(2, d.name);
      det.bind(3, d.var_type);
      if (d.text) det.bind(4, *d.text); else det.bind_null(4);
      if (d.long_value) det.bind(5, *d.long_value); else det.bind_null(5);
      if (d.double_value) det.bind(6, *d.double_value); else det.bind_null(6);
      if (d.time) det.bind(7, format_iso8601(*d.time)); else det.bind_null(7);
      det.step();
      det.reset();
    }
  }
  exec(db.get(), "COMMIT;");
}

}  // namespace procmine
