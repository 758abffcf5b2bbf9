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
#include <span>
#include <stdexcept>
#include <vector>

#include "wbidk/kinematics.hpp"
#include "wbidk/simulator.hpp"

namespace wbidk {

// The five per-run scalars: mean stored energy, mean human force norm, mean
// end-effector speed, execution time N·dt and final displacement from the
// target.
struct RunMetrics {
  double avg_energy = 0.0;          // Ē  [J]
  double avg_force = 0.0;           // F̄_h [N]
  double avg_speed = 0.0;           // v̄  [m/s]
  double exec_time = 0.0;           // T_f [s]
  double final_displacement = 0.0;  // x_f [m]
};

// Averages run over the logged steps; x_f is the distance between the
// end-effector at the final logged state and the target position.
inline RunMetrics compute_metrics(const MobileManipulatorModel& model,
                                  const TrajectoryLog& log,
                                  const Eigen::Vector3d& target_position) {
  if (log.steps.empty())
    throw std::invalid_argument("compute_metrics: empty trajectory log");
  RunMetrics m;
  for (const auto& s : log.steps) {
    m.avg_energy += s.energy;
    m.avg_force += s.fh.norm();
    m.avg_speed += s.v.norm();
  }
  const double n = static_cast<double>(log.steps.size());
  m.avg_energy /= n;
  m.avg_force /= n;
  m.avg_speed /= n;
  m.exec_time = n * log.dt;
  const JointState q_final = JointState::from_vector(log.steps.back().q);
  m.final_displacement =
      (forward_kinematics(model, q_final).position - target_position).norm();
  return m;
}

// Tukey-hinge boxplot statistics: the median splits the sorted sample into
// halves that both include the median element when the count is odd; quartiles
// are the medians of the halves. Outliers lie beyond 1.5·IQR whiskers.
struct BoxplotStats {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;
};

inline BoxplotStats boxplot_stats(std::vector<double> values) {
  if (values.empty())
    throw std::invalid_argument("boxplot_stats: empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();

  auto median_of = [](std::span<const double> v) {
    const std::size_t m = v.size();
    return (m % 2 == 1) ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
  };

  BoxplotStats s;
  s.median = median_of(values);
  s.min = values.front();
  s.max = values.back();
  const std::size_t half = (n % 2 == 1) ? n / 2 + 1 : n / 2;
  s.q1 = median_of(std::span<const double>(values.data(), half));
  s.q3 = median_of(std::span<const double>(values.data() + (n - half), half));

  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  s.whisker_low = s.max;
  s.whisker_high = s.min;
  for (double v : values) {
    if (v < lo_fence || v > hi_fence) {
      s.outliers.push_back(v);
    } else {
      s.whisker_low = std::min(s.whisker_low, v);
      s.whisker_high = std::max(s.whisker_high, v);
    }
  }
  return s;
}

struct AggregateStats {
  std::size_t count = 0;
  BoxplotStats energy;
  BoxplotStats force;
  BoxplotStats speed;
  BoxplotStats displacement;
  BoxplotStats time;
};

inline AggregateStats aggregate(std::span<const RunMetrics> runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
  auto collect = [&](double RunMetrics::* field) {
    std::vector<double> v;
    v.reserve(runs.size());
    for (const auto& r : runs) v.push_back(r.*field);
    return boxplot_stats(std::move(v));
  };
  AggregateStats s;
  s.count = runs.size();
  s.energy = collect(&RunMetrics::avg_energy);
  s.force = collect(&RunMetrics::avg_force);
  s.speed = collect(&RunMetrics::avg_speed);
  s.displacement = collect(&RunMetrics::final_displacement);
  s.time = collect(&RunMetrics::exec_time);
  return s;
}

}  // namespace wbidk
