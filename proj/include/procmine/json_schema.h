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

#ifndef PROCMINE_JSON_SCHEMA_H_
#define PROCMINE_JSON_SCHEMA_H_

#include <string>
#include <vector>

#include "json.hpp"

namespace procmine {

// Validates `instance` against a JSON Schema using the keywords type,
// properties, required, additionalProperties, items, enum, minimum, maximum,
// minItems, format ("date-time") and local "$ref"s into "$defs". Returns one
// message per violation, prefixed with a JSON pointer; empty when valid.
std::vector<std::string> validate_json(const nlohmann::json& schema,
                                       const nlohmann::json& instance);

}  // namespace procmine

#endif  // PROCMINE_JSON_SCHEMA_H_
