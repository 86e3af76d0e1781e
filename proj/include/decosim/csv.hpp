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

#include <cstdio>
#include <string>
#include <vector>

namespace decosim {

// Comma-separated, '.' decimal, 17 significant digits, mandatory header
// row, LF line endings. Rows render bit-identically across reruns.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (k) body_ += ',';
      body_ += header[k];
    }
    body_ += '\n';
    columns_ = header.size();
  }

  void add_row(const std::vector<double>& values) {
    char buf[40];
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (k) body_ += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", values[k]);
      body_ += buf;
    }
    body_ += '\n';
  }

  std::size_t columns() const { return columns_; }
  const std::string& str() const { return body_; }

 private:
  std::string body_;
  std::size_t columns_ = 0;
};

}  // namespace decosim
