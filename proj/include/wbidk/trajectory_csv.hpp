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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wbidk/simulator.hpp"

namespace wbidk {

// All report files print floats with 9 significant digits.
inline std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline constexpr const char* kTrajectoryHeader =
    "t,q0,q1,q2,q3,q4,q5,q6,q7,q8,"
    "qd0,qd1,qd2,qd3,qd4,qd5,qd6,qd7,qd8,"
    "vd0,vd1,vd2,vd3,vd4,vd5,"
    "v0,v1,v2,v3,v4,v5,"
    "fh0,fh1,fh2,fh3,fh4,fh5,"
    "E_K,flags";

inline void write_trajectory_csv(const TrajectoryLog& log, std::ostream& out) {
  out << kTrajectoryHeader << "\n";
  for (const auto& s : log.steps) {
    out << fmt9(s.t);
    for (int i = 0; i < 9; ++i) out << ',' << fmt9(s.q[i]);
    for (int i = 0; i < 9; ++i) out << ',' << fmt9(s.qd[i]);
    for (int i = 0; i < 6; ++i) out << ',' << fmt9(s.vd[i]);
    for (int i = 0; i < 6; ++i) out << ',' << fmt9(s.v[i]);
    for (int i = 0; i < 6; ++i) out << ',' << fmt9(s.fh[i]);
    out << ',' << fmt9(s.energy) << ',' << s.flags << "\n";
  }
}

inline void write_trajectory_csv(const TrajectoryLog& log,
                                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error(path.string() + ": cannot open for writing");
  write_trajectory_csv(log, out);
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

// std::stod rejects subnormals (ERANGE); strtod returns them rounded, which
// is what a log of exponentially decaying signals needs.
inline double parse_double(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) throw std::runtime_error("bad number '" + s + "'");
  return v;
}

}  // namespace detail

// Reads a trajectory written by write_trajectory_csv. dt is recovered from
// the time grid (0 for single-row logs).
inline TrajectoryLog read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open file");
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader)
    throw std::runtime_error(path.string() + ": bad trajectory header");

  TrajectoryLog log;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 39)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected 39 fields");
    std::size_t f = 0;
    auto next = [&] { return detail::parse_double(fields[f++]); };
    StepRecord s;
    s.t = next();
    for (int i = 0; i < 9; ++i) s.q[i] = next();
    for (int i = 0; i < 9; ++i) s.qd[i] = next();
    for (int i = 0; i < 6; ++i) s.vd[i] = next();
    for (int i = 0; i < 6; ++i) s.v[i] = next();
    for (int i = 0; i < 6; ++i) s.fh[i] = next();
    s.energy = next();
    s.flags = static_cast<std::uint32_t>(std::stoul(fields[f]));
    log.steps.push_back(s);
  }
  if (log.steps.size() >= 2) log.dt = log.steps[1].t - log.steps[0].t;
  return log;
}

}  // namespace wbidk
