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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ciss::cli {

// Bad flags, config keys or values. Exit status 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KeySpec {
  std::string key;
  std::string default_value;
  std::string help;
  // Execution-only keys (paths, thread budget) are left out of the digest.
  bool in_digest = true;
};

using Values = std::map<std::string, std::string>;

// `key = value` lines, `#` comments.
Values parse_key_value(std::string_view text, std::string_view source);
// Flat key-value file, or a JSON run summary whose "config" object is reused.
Values read_config_file(const std::string& path);

double parse_double(std::string_view text, std::string_view key);
std::vector<double> parse_double_list(std::string_view text, std::string_view key);
std::vector<std::string> parse_string_list(std::string_view text);

class Config {
 public:
  Config(std::string subcommand, std::vector<KeySpec> specs);

  const std::string& subcommand() const { return subcommand_; }
  const std::vector<KeySpec>& specs() const { return specs_; }

  // Later merges win. Unknown keys throw UsageError.
  void merge(const Values& v, std::string_view origin);
  bool is_set(const std::string& key) const;
  void set(const std::string& key, std::string value);

  const std::string& str(const std::string& key) const;
  double real(const std::string& key) const;
  int integer(const std::string& key) const;
  std::uint64_t unsigned64(const std::string& key) const;
  bool boolean(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<std::string> strings(const std::string& key) const;

  std::string canonical_text() const;
  std::string digest() const;
  nlohmann::ordered_json to_json() const;

 private:
  const KeySpec& spec(const std::string& key) const;

  std::string subcommand_;
  std::vector<KeySpec> specs_;
  Values values_;
  std::map<std::string, bool> explicit_;
};

}  // namespace ciss::cli
