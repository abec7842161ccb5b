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

#ifndef PROCMINE_CSV_H_
#define PROCMINE_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace procmine::csv {

struct Record {
  std::vector<std::string> fields;
  long line = 0;  // physical line on which the record starts (1-based)
};

// Splits RFC-4180 text into records. Accepts LF or CRLF line endings and
// quoted fields spanning lines. A trailing newline does not yield an empty
// record. Throws ParseError on an unterminated quoted field.
std::vector<Record> parse(std::string_view text);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string quote(std::string_view field);

// Appends one record terminated by CRLF.
void append_row(std::string& out, const std::vector<std::string>& fields);

}  // namespace procmine::csv

#endif  // PROCMINE_CSV_H_
