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

#include <filesystem>
#include <string>
#include <vector>

#include "decosim/config.hpp"

namespace decosim {

struct OutputRecord {
  std::string path;     // relative to the run directory
  std::string fnv1a64;  // content digest
};

struct RunManifest {
  nlohmann::json config_echo;
  std::vector<OutputRecord> outputs;
  double wall_time_s = 0.0;
  std::filesystem::path manifest_path;

  nlohmann::json to_json() const;
};

// Execute the scenario and write its outputs plus manifest.json under
// out_dir. All content is computed before anything touches the
// filesystem, so a failing run leaves no partial files.
RunManifest run_scenario(const ScenarioConfig& cfg,
                         const std::filesystem::path& out_dir);

}  // namespace decosim
