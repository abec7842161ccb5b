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

#include <expat.h>

#include <string>

#include "procmine/errors.h"

namespace procmine::xml {
namespace {

constexpr char kNsSeparator = '\x1f';

std::pair<std::string, std::string> split_name(const char* raw) {
  std::string_view s(raw);
  const auto sep = s.find(kNsSeparator);
  if (sep == std::string_view::npos) return {std::string(), std::string(s)};
  return {std::string(s.substr(0, sep)), std::string(s.substr(sep + 1))};
}

struct BuildState {
  XML_Parser parser = nullptr;
  std::vector<Element*> stack;
  Element root;
  bool has_root = false;
};

void on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto* st = static_cast<BuildState*>(user);
  Element el;
  std::tie(el.ns, el.name) = split_name(name);
  el.line = static_cast<long>(XML_GetCurrentLineNumber(st->parser));
  for (int i = 0; attrs[i] != nullptr; i += 2) {
    el.attributes.emplace_back(split_name(attrs[i]).second, attrs[i + 1]);
  }
  if (st->stack.empty()) {
    st->root = std::move(el);
    st->has_root = true;
    st->stack.push_back(&st->root);
  } else {
    auto& kids = st->stack.back()->children;
    kids.push_back(std::move(el));
    st->stack.push_back(&kids.back());
  }
}

void on_end(void* user, const XML_Char*) {
  static_cast<BuildState*>(user)->stack.pop_back();
}

void on_text(void* user, const XML_Char* s, int len) {
  auto* st = static_cast<BuildState*>(user);
  if (!st->stack.empty()) st->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

}  // namespace

const std::string* Element::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::string Element::attribute_or(std::string_view key, std::string_view fallback) const {
  const auto* v = attribute(key);
  return v ? *v : std::string(fallback);
}

Element parse(std::string_view document) {
  BuildState st;
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(
      XML_ParserCreateNS("UTF-8", kNsSeparator), &XML_ParserFree);
  if (!parser) throw ParseError("xml: parser allocation failed");
  st.parser = parser.get();
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  // Only the innermost open element gains children, so the pointers held on
  // the stack (its ancestors and itself) are never invalidated.
  if (XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), 1) ==
      XML_STATUS_ERROR) {
    throw ParseError("xml: " + std::string(XML_ErrorString(XML_GetErrorCode(parser.get()))) +
                     " at line " + std::to_string(XML_GetCurrentLineNumber(parser.get())));
  }
  if (!st.has_root) throw ParseError("xml: document has no root element");
  return std::move(st.root);
}

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
  return out;
}

Writer::Writer() { out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"; }

void Writer::indent() { out_.append(stack_.size() * 2, ' '); }

void Writer::write_tag(std::string_view name,
                       const std::vector<std::pair<std::string, std::string>>& attributes) {
  out_ += '<';
  out_ += name;
  for (const auto& [k, v] : attributes) {
    out_ += ' ';
    out_ += k;
    out_ += "=\"";
    out_ += escape(v);
    out_ += '"';
  }
}

void Writer::open(std::string_view name,
                  const std::vector<std::pair<std::string, std::string>>& attributes) {
  indent();
  write_tag(name, attributes);
  out_ += ">\n";
  stack_.emplace_back(name);
}

void Writer::empty(std::string_view name,
                   const std::vector<std::pair<std::string, std::string>>& attributes) {
  indent();
  write_tag(name, attributes);
  out_ += "/>\n";
}

void Writer::close() {
  const std::string name = std::move(stack_.back());
  stack_.pop_back();
  indent();
  out_ += "</" + name + ">\n";
}

std::string Writer::finish() {
  while (!stack_.empty()) close();
  return std::move(out_);
}

}  // namespace procmine::xml
