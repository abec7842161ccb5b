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

#include "procmine/timestamp.h"

#include <cstdio>

#include "procmine/errors.h"

namespace procmine {
namespace {

constexpr std::int64_t kMillisPerDay = 86'400'000;

// Days since 1970-01-01 for a proleptic Gregorian date.
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2 ? 1 : 0;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
  std::int64_t year;
  unsigned month;
  unsigned day;
};

constexpr CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {y + (m <= 2 ? 1 : 0), m, d};
}

constexpr bool is_leap(std::int64_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

constexpr unsigned days_in_month(std::int64_t y, unsigned m) {
  constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ == s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  void skip() { ++pos_; }

  bool expect(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  bool digits(int n, int* out) {
    int v = 0;
    for (int i = 0; i < n; ++i) {
      const char c = peek();
      if (c < '0' || c > '9') return false;
      v = v * 10 + (c - '0');
      ++pos_;
    }
    *out = v;
    return true;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_iso8601(Timestamp ts) {
  std::int64_t days = ts.millis / kMillisPerDay;
  std::int64_t rem = ts.millis % kMillisPerDay;
  if (rem < 0) {
    rem += kMillisPerDay;
    --days;
  }
  const CivilDate date = civil_from_days(days);
  const auto ms = static_cast<int>(rem % 1000);
  const auto secs = static_cast<int>(rem / 1000);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<long long>(date.year), date.month, date.day, secs / 3600,
                (secs / 60) % 60, secs % 60, ms);
  return buf;
}

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  Cursor c(text);
  int year = 0, month = 0, day = 0;
  if (!c.digits(4, &year) || !c.expect('-') || !c.digits(2, &month) || !c.expect('-') ||
      !c.digits(2, &day)) {
    return std::nullopt;
  }
  if (month < 1 || month > 12 || day < 1 ||
      static_cast<unsigned>(day) > days_in_month(year, static_cast<unsigned>(month))) {
    return std::nullopt;
  }
  std::int64_t millis = days_from_civil(year, static_cast<unsigned>(month),
                                        static_cast<unsigned>(day)) *
                        kMillisPerDay;
  if (c.done()) return Timestamp{millis};

  if (c.peek() != 'T' && c.peek() != 't' && c.peek() != ' ') return std::nullopt;
  c.skip();
  int hour = 0, minute = 0, second = 0;
  if (!c.digits(2, &hour) || !c.expect(':') || !c.digits(2, &minute) || !c.expect(':') ||
      !c.digits(2, &second)) {
    return std::nullopt;
  }
  if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
  millis += ((hour * 60LL + minute) * 60LL + second) * 1000LL;

  if (c.peek() == '.' || c.peek() == ',') {
    c.skip();
    int fraction_digits = 0;
    int ms = 0;
    while (c.peek() >= '0' && c.peek() <= '9') {
      if (fraction_digits < 3) ms = ms * 10 + (c.peek() - '0');
      ++fraction_digits;
      c.skip();
    }
    if (fraction_digits == 0) return std::nullopt;
    for (int i = fraction_digits; i < 3; ++i) ms *= 10;
    millis += ms;
  }

  if (c.done()) return Timestamp{millis};
  if (c.peek() == 'Z' || c.peek() == 'z') {
    c.skip();
    return c.done() ? std::optional<Timestamp>(Timestamp{millis}) : std::nullopt;
  }
  const char sign = c.peek();
  if (sign != '+' && sign != '-') return std::nullopt;
  c.skip();
  int off_h = 0, off_m = 0;
  if (!c.digits(2, &off_h)) return std::nullopt;
  c.expect(':');
  if (!c.digits(2, &off_m) || !c.done() || off_h > 23 || off_m > 59) return std::nullopt;
  const std::int64_t offset = (off_h * 60LL + off_m) * 60'000LL;
  millis += sign == '+' ? -offset : offset;
  return Timestamp{millis};
}

Timestamp parse_iso8601_or_throw(std::string_view text, std::string_view context) {
  auto ts = parse_iso8601(text);
  if (!ts) {
    throw ParseError(std::string(context) + ": unparseable timestamp '" + std::string(text) +
                     "'");
  }
  return *ts;
}

}  // namespace procmine
