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

#ifndef PROCMINE_XML_H_
#define PROCMINE_XML_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace procmine::xml {

// Minimal namespace-aware DOM produced by `parse`. Element and attribute names
// are split into namespace URI and local name; prefixes are not retained.
struct Element {
  std::string ns;
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;  // local name -> value
  std::vector<Element> children;
  std::string text;
  long line = 0;

  const std::string* attribute(std::string_view key) const;
  std::string attribute_or(std::string_view key, std::string_view fallback) const;
};

// Parses a complete document. Throws ParseError (with line number) on any
// well-formedness error, including truncated input.
Element parse(std::string_view document);

// Escapes text for use in element content or double-quoted attribute values.
std::string escape(std::string_view text);

// Streaming writer with two-space indentation.
class Writer {
 public:
  Writer();

  void open(std::string_view name,
            const std::vector<std::pair<std::string, std::string>>& attributes = {});
  void empty(std::string_view name,
             const std::vector<std::pair<std::string, std::string>>& attributes);
  void close();

  std::string finish();

 private:
  void indent();
  void write_tag(std::string_view name,
                 const std::vector<std::pair<std::string, std::string>>& attributes);

  std::string out_;
  std::vector<std::string> stack_;
};

}  // namespace procmine::xml

#endif  // PROCMINE_XML_H_
