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

#include "procmine/xml.h"

#include <gtest/gtest.h>

#include "procmine/errors.h"

namespace procmine {
namespace {

TEST(XmlTest, ParsesNamespacesAttributesAndText) {
  const auto root = xml::parse(
      "<?xml version=\"1.0\"?>\n<a:root xmlns:a=\"urn:x\" id=\"1\">\n  <a:child k=\"v &amp; w\">"
      "hi</a:child>\n  <plain/>\n</a:root>");
  EXPECT_EQ(root.ns, "urn:x");
  EXPECT_EQ(root.name, "root");
  ASSERT_NE(root.attribute("id"), nullptr);
  EXPECT_EQ(*root.attribute("id"), "1");
  ASSERT_EQ(root.children.size(), 2u);
  EXPECT_EQ(root.children[0].text, "hi");
  EXPECT_EQ(root.children[0].attribute_or("k", ""), "v & w");
  EXPECT_EQ(root.children[1].ns, "");
  EXPECT_EQ(root.children[1].line, 4);
  EXPECT_EQ(root.attribute_or("missing", "dflt"), "dflt");
}

TEST(XmlTest, TruncatedDocumentThrowsWithLine) {
  try {
    xml::parse("<a>\n<b>\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
  }
}

TEST(XmlTest, WriterEscapesAndRoundTrips) {
  xml::Writer w;
  w.open("log", {{"k", "a<b>\"c\"&d\ne"}});
  w.empty("string", {{"key", "x"}, {"value", "tab\there 数据"}});
  w.close();
  const auto root = xml::parse(w.finish());
  EXPECT_EQ(root.attribute_or("k", ""), "a<b>\"c\"&d\ne");
  ASSERT_EQ(root.children.size(), 1u);
  EXPECT_EQ(root.children[0].attribute_or("value", ""), "tab\there 数据");
}

}  // namespace
}  // namespace procmine
