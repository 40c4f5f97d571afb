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

#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "output.hpp"

namespace ciss::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += ",";
      out += json_scalar(e);
    }
    return out;
  }
  throw UsageError("unsupported JSON config value: " + v.dump());
}

}  // namespace

Values parse_key_value(std::string_view text, std::string_view source) {
  Values out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw UsageError(std::string(source) + ":" + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty())
      throw UsageError(std::string(source) + ":" + std::to_string(line_no) + ": empty key");
    out[key] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

Values read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const std::string_view head = trim(text);
  if (head.empty() || head.front() != '{') return parse_key_value(text, path);

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  const nlohmann::json& cfg = j.contains("config") ? j.at("config") : j;
  if (!cfg.is_object()) throw UsageError("config file '" + path + "': \"config\" must be an object");
  Values out;
  for (const auto& [k, v] : cfg.items()) out[k] = json_scalar(v);
  return out;
}

double parse_double(std::string_view text, std::string_view key) {
  const std::string_view t = trim(text);
  const std::string l = lower(t);
  if (l == "inf" || l == "+inf" || l == "infinity") return std::numeric_limits<double>::infinity();
  if (l == "-inf" || l == "-infinity") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || std::isnan(v))
    throw UsageError("invalid number '" + std::string(t) + "' for " + std::string(key));
  return v;
}

std::vector<std::string> parse_string_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const std::string_view item = trim(text.substr(pos, end - pos));
    if (!item.empty()) out.emplace_back(item);
    pos = end + 1;
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view text, std::string_view key) {
  std::vector<double> out;
  for (const auto& s : parse_string_list(text)) out.push_back(parse_double(s, key));
  return out;
}

Config::Config(std::string subcommand, std::vector<KeySpec> specs)
    : subcommand_(std::move(subcommand)), specs_(std::move(specs)) {
  for (const auto& s : specs_) {
    values_[s.key] = s.default_value;
    explicit_[s.key] = false;
  }
}

const KeySpec& Config::spec(const std::string& key) const {
  for (const auto& s : specs_)
    if (s.key == key) return s;
  throw UsageError("unknown key '" + key + "' for " + subcommand_);
}

void Config::merge(const Values& v, std::string_view origin) {
  for (const auto& [k, val] : v) {
    if (k == "subcommand") {
      if (val != subcommand_)
        throw UsageError(std::string(origin) + " is for subcommand '" + val + "', not '" +
                         subcommand_ + "'");
      continue;
    }
    if (!values_.count(k))
      throw UsageError("unknown key '" + k + "' in " + std::string(origin) + " for " + subcommand_);
    values_[k] = val;
    explicit_[k] = true;
  }
}

bool Config::is_set(const std::string& key) const {
  spec(key);
  return explicit_.at(key);
}

void Config::set(const std::string& key, std::string value) {
  spec(key);
  values_[key] = std::move(value);
}

const std::string& Config::str(const std::string& key) const {
  spec(key);
  return values_.at(key);
}

double Config::real(const std::string& key) const { return parse_double(str(key), key); }

int Config::integer(const std::string& key) const {
  const std::string_view t = trim(str(key));
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw UsageError("invalid integer '" + std::string(t) + "' for " + key);
  return v;
}

std::uint64_t Config::unsigned64(const std::string& key) const {
  const std::string_view t = trim(str(key));
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (!t.empty() && ec == std::errc() && ptr == t.data() + t.size()) return v;
  // Allow 1e7-style counts when they are exact integers.
  const double d = parse_double(t, key);
  if (d >= 0 && d < 1.8e19 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
  throw UsageError("invalid non-negative integer '" + std::string(t) + "' for " + key);
}

bool Config::boolean(const std::string& key) const {
  const std::string l = lower(trim(str(key)));
  if (l == "true" || l == "1" || l == "yes" || l == "on") return true;
  if (l == "false" || l == "0" || l == "no" || l == "off" || l.empty()) return false;
  throw UsageError("invalid boolean '" + str(key) + "' for " + key);
}

std::vector<double> Config::reals(const std::string& key) const {
  return parse_double_list(str(key), key);
}

std::vector<std::string> Config::strings(const std::string& key) const {
  return parse_string_list(str(key));
}

std::string Config::canonical_text() const {
  std::string out = "subcommand = " + subcommand_ + "\n";
  for (const auto& [k, v] : values_)
    if (spec(k).in_digest) out += k + " = " + v + "\n";
  return out;
}

std::string Config::digest() const { return sha256_hex(canonical_text()); }

nlohmann::ordered_json Config::to_json() const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand_;
  for (const auto& [k, v] : values_) j[k] = v;
  return j;
}

}  // namespace ciss::cli
