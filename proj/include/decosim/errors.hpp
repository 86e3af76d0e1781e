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

#include <stdexcept>
#include <string>

namespace decosim {

// Rejected configuration: bad keys, out-of-range values, dimension caps.
// The CLI maps this to exit code 2.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested computation is outside its numerical regime of validity
// (degenerate actions, stationary-phase gap too small, unresolved
// separations). The CLI maps this to exit code 3.
struct regime_error : std::runtime_error {
  explicit regime_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failure while emitting outputs. The CLI maps this to exit
// code 4.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace decosim
