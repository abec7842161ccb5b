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

#include "procmine/json_schema.h"

#include <algorithm>

#include "procmine/errors.h"
#include "procmine/timestamp.h"

namespace procmine {
namespace {

using nlohmann::json;

bool has_type(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  throw ValidationError("json schema: unknown type '" + type + "'");
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& schema, const json& value, const std::string& path) {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) fail(path, "no value allowed");
      return;
    }
    if (auto ref = schema.find("$ref"); ref != schema.end()) {
      check(resolve(ref->get<std::string>()), value, path);
      return;
    }
    if (auto type = schema.find("type"); type != schema.end()) {
      bool ok = false;
      if (type->is_array()) {
        for (const auto& t : *type) ok = ok || has_type(value, t.get<std::string>());
      } else {
        ok = has_type(value, type->get<std::string>());
      }
      if (!ok) {
        fail(path, "expected type " + type->dump() + ", found " + value.type_name());
        return;
      }
    }
    if (auto e = schema.find("enum"); e != schema.end()) {
      if (std::find(e->begin(), e->end(), value) == e->end()) {
        fail(path, "value " + value.dump() + " not in " + e->dump());
      }
    }
    if (value.is_number()) {
      const double v = value.get<double>();
      if (auto m = schema.find("minimum"); m != schema.end() && v < m->get<double>()) {
        fail(path, "below minimum " + m->dump());
      }
      if (auto m = schema.find("maximum"); m != schema.end() && v > m->get<double>()) {
        fail(path, "above maximum " + m->dump());
      }
    }
    if (value.is_string()) {
      if (auto f = schema.find("format"); f != schema.end() && *f == "date-time" &&
                                          !parse_iso8601(value.get<std::string>())) {
        fail(path, "not a date-time");
      }
    }
    if (value.is_array()) {
      if (auto m = schema.find("minItems"); m != schema.end() && value.size() < m->get<std::size_t>()) {
        fail(path, "fewer than " + m->dump() + " items");
      }
      if (auto items = schema.find("items"); items != schema.end()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          check(*items, value[i], path + "/" + std::to_string(i));
        }
      }
    }
    if (value.is_object()) {
      if (auto req = schema.find("required"); req != schema.end()) {
        for (const auto& name : *req) {
          if (!value.contains(name.get<std::string>())) {
            fail(path, "missing required member '" + name.get<std::string>() + "'");
          }
        }
      }
      const auto props = schema.find("properties");
      const auto extra = schema.find("additionalProperties");
      for (const auto& [name, member] : value.items()) {
        const std::string child = path + "/" + name;
        if (props != schema.end() && props->contains(name)) {
          check(props->at(name), member, child);
        } else if (extra != schema.end()) {
          check(*extra, member, child);
        }
      }
    }
  }

  std::vector<std::string> errors;

 private:
  const json& resolve(const std::string& ref) {
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) throw ValidationError("json schema: unsupported $ref " + ref);
    const auto defs = root_.find("$defs");
    if (defs == root_.end() || !defs->contains(ref.substr(prefix.size()))) {
      throw ValidationError("json schema: unresolved $ref " + ref);
    }
    return defs->at(ref.substr(prefix.size()));
  }

  void fail(const std::string& path, const std::string& message) {
    errors.push_back((path.empty() ? "/" : path) + ": " + message);
  }

  const json& root_;
};

}  // namespace

std::vector<std::string> validate_json(const json& schema, const json& instance) {
  Validator v(schema);
  v.check(schema, instance, "");
  return std::move(v.errors);
}

}  // namespace procmine
