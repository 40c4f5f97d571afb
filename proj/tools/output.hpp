// Copyright 2026 The ciss-frg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ciss::cli {

// Locale-independent, 17 significant digits; "nan" and "inf" for non-finite.
std::string format_number(double v);
std::string sha256_hex(std::string_view data);
std::string iso8601_utc(std::chrono::system_clock::time_point t);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row);
  std::size_t size() const { return rows_.size(); }
  // Leading "# config_digest=..." line, then the header and rows.
  std::string render(std::string_view digest) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes to a sibling temporary file and renames it over the target.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace ciss::cli
