// Copyright 2026 The decosim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "decosim/errors.hpp"

namespace decosim {

enum class ScenarioKind { thermal, twostate, noncommutative, localize, sweep };

const char* to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

// Validated scenario description: the kind, and a parameter map with every
// default filled in. Unknown keys, type mismatches and out-of-range values
// are rejected at parse time.
struct ScenarioConfig {
  ScenarioKind kind;
  int schema_version = 1;
  nlohmann::json parameters;
};

// Strict parse of a JSON config document:
//   { "kind": "...", "schema_version": 1, "parameters": { ... } }
// Syntax errors carry the byte position; unknown keys name the nearest
// valid key. The optional seed override is applied before validation.
ScenarioConfig parse_config(const std::string& text,
                            std::optional<std::uint64_t> seed_override = {});

ScenarioConfig parse_config_file(const std::string& path,
                                 std::optional<std::uint64_t> seed_override = {});

// Re-validate an already assembled document (used by sweep fan-out).
ScenarioConfig validate_config_json(nlohmann::json doc);

}  // namespace decosim
