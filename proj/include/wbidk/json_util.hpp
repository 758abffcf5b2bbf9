// Copyright 2026 The wbidk Authors
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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wbidk/types.hpp"

namespace wbidk {

// Configuration file problem: parse errors carry file:line, validation errors
// name the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace jsonio {

using nlohmann::json;

inline json load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line =
        1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw ConfigError(path.string() + ":" + std::to_string(line) +
                      ": JSON parse error: " + e.what());
  }
}

inline void check_schema(const json& j, const std::string& expected,
                         const std::string& ctx) {
  if (!j.contains("schema") || !j["schema"].is_string())
    throw ConfigError(ctx + ": missing 'schema' field");
  const std::string got = j["schema"].get<std::string>();
  if (got != expected)
    throw ConfigError(ctx + ": schema '" + got + "', expected '" + expected +
                      "'");
}

inline const json& require(const json& j, const char* key,
                           const std::string& ctx) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(ctx + ": missing field '" + std::string(key) + "'");
  return *it;
}

inline double number(const json& j, const std::string& ctx) {
  if (!j.is_number())
    throw ConfigError(ctx + ": expected a number");
  return j.get<double>();
}

inline double get_number(const json& j, const char* key,
                         const std::string& ctx) {
  return number(require(j, key, ctx), ctx + "." + key);
}

inline double get_number_or(const json& j, const char* key, double fallback,
                            const std::string& ctx) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : number(*it, ctx + "." + key);
}

inline bool get_bool_or(const json& j, const char* key, bool fallback,
                        const std::string& ctx) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_boolean()) throw ConfigError(ctx + "." + key + ": expected a bool");
  return it->get<bool>();
}

inline std::string get_string(const json& j, const char* key,
                              const std::string& ctx) {
  const auto& f = require(j, key, ctx);
  if (!f.is_string()) throw ConfigError(ctx + "." + key + ": expected a string");
  return f.get<std::string>();
}

inline std::string get_string_or(const json& j, const char* key,
                                 const std::string& fallback,
                                 const std::string& ctx) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_string()) throw ConfigError(ctx + "." + key + ": expected a string");
  return it->get<std::string>();
}

template <int N>
Eigen::Matrix<double, N, 1> fixed_vector(const json& j,
                                         const std::string& ctx) {
  if (!j.is_array() || j.size() != N)
    throw ConfigError(ctx + ": expected an array of " + std::to_string(N) +
                      " numbers");
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v[i] = number(j[i], ctx);
  return v;
}

template <int N>
Eigen::Matrix<double, N, 1> get_fixed_vector(const json& j, const char* key,
                                             const std::string& ctx) {
  return fixed_vector<N>(require(j, key, ctx), ctx + "." + key);
}

template <int N>
Eigen::Matrix<double, N, 1> get_fixed_vector_or(
    const json& j, const char* key, const Eigen::Matrix<double, N, 1>& fallback,
    const std::string& ctx) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : fixed_vector<N>(*it, ctx + "." + key);
}

template <typename Derived>
json to_array(const Eigen::MatrixBase<Derived>& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace jsonio
}  // namespace wbidk
