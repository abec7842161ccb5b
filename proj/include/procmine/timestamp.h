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

#ifndef PROCMINE_TIMESTAMP_H_
#define PROCMINE_TIMESTAMP_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace procmine {

// A UTC instant at millisecond precision.
struct Timestamp {
  std::int64_t millis = 0;

  static constexpr Timestamp from_millis(std::int64_t ms) { return Timestamp{ms}; }

  friend constexpr auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

// Seconds elapsed from `from` to `to` (negative when `to` precedes `from`).
inline double seconds_between(Timestamp from, Timestamp to) {
  return static_cast<double>(to.millis - from.millis) / 1000.0;
}

// Formats as "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string format_iso8601(Timestamp ts);

// Accepts "YYYY-MM-DD[T| ]HH:MM:SS[.f+][Z|+HH:MM|-HH:MM|+HHMM]" and a bare date
// "YYYY-MM-DD". A missing offset is read as UTC. Sub-millisecond digits are
// truncated. Returns nullopt on any syntax or range error.
std::optional<Timestamp> parse_iso8601(std::string_view text);

// Throwing variant of parse_iso8601; `context` is prefixed to the message.
Timestamp parse_iso8601_or_throw(std::string_view text, std::string_view context);

}  // namespace procmine

#endif  // PROCMINE_TIMESTAMP_H_
