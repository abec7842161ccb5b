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

#include "procmine/csv.h"

#include <gtest/gtest.h>

#include "procmine/errors.h"

namespace procmine {
namespace {

TEST(CsvTest, ParsesQuotedFieldsAndLineEndings) {
  const auto records = csv::parse("a,b,c\r\n\"x,1\",\"say \"\"hi\"\"\",\"multi\nline\"\nlast,,\n");
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].fields, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(records[1].fields, (std::vector<std::string>{"x,1", "say \"hi\"", "multi\nline"}));
  EXPECT_EQ(records[2].fields, (std::vector<std::string>{"last", "", ""}));
  EXPECT_EQ(records[1].line, 2);
  EXPECT_EQ(records[2].line, 4);
}

TEST(CsvTest, StripsBomAndSkipsBlankLines) {
  const auto records = csv::parse("\xEF\xBB\xBFh1,h2\n\n1,2");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].fields[0], "h1");
  EXPECT_EQ(records[1].line, 3);
}

TEST(CsvTest, KeepsSingleEmptyQuotedField) {
  const auto records = csv::parse("\"\"\n");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].fields, std::vector<std::string>{""});
}

TEST(CsvTest, UnterminatedQuoteThrows) { EXPECT_THROW(csv::parse("a,\"b\n"), ParseError); }

TEST(CsvTest, WriteThenParseIsIdentity) {
  const std::vector<std::vector<std::string>> rows = {
      {"plain", "with,comma", "with \"quote\""}, {"", "cr\rlf\r\n", "ünïcødé"}};
  std::string text;
  for (const auto& r : rows) csv::append_row(text, r);
  const auto records = csv::parse(text);
  ASSERT_EQ(records.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(records[i].fields, rows[i]);
}

TEST(CsvTest, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(csv::quote("abc"), "abc");
  EXPECT_EQ(csv::quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::quote("a\"b"), "\"a\"\"b\"");
}

}  // namespace
}  // namespace procmine
