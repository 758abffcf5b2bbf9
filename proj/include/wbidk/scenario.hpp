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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbidk/admittance.hpp"
#include "wbidk/kinematics.hpp"
#include "wbidk/model.hpp"
#include "wbidk/solvers.hpp"
#include "wbidk/wrench_profile.hpp"

namespace wbidk {

enum class ControllerKind { MinimumEnergy, Locomotion, Switch };

inline const char* controller_name(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::MinimumEnergy: return "min_energy";
    case ControllerKind::Locomotion: return "locomotion";
    case ControllerKind::Switch: return "switch";
  }
  return "?";
}

inline ControllerKind controller_from_name(const std::string& name) {
  if (name == "min_energy" || name == "minimum_energy")
    return ControllerKind::MinimumEnergy;
  if (name == "locomotion" || name == "benchmark")
    return ControllerKind::Locomotion;
  if (name == "switch") return ControllerKind::Switch;
  throw std::invalid_argument("unknown controller '" + name +
                              "' (expected min_energy, locomotion or switch)");
}

struct ModeEvent {
  double time = 0.0;
  OperatingMode mode = OperatingMode::Manipulation;
};

// Everything needed to run one closed-loop scenario. The model is referenced
// by file; loaders resolve the path relative to the scenario file.
struct ScenarioSpec {
  std::string name;
  std::string model_path;

  ControllerKind controller = ControllerKind::MinimumEnergy;
  BenchmarkWeights weights;
  Vector9d secondary_gains =
      (Vector9d() << 1, 1, 1, 1, 1, 1, 0, 0, 0).finished();
  AdmittanceParams admittance;

  double dt = 0.002;           // s
  double duration_cap = 60.0;  // s

  JointState initial_state;
  JointState preferred_state;  // q_des
  // Operational-space target; derived from FK(q_des) unless given explicitly.
  bool derive_target_from_preferred = true;
  Eigen::Vector3d target_position = Eigen::Vector3d::Zero();

  double stop_radius = 0.01;  // m
  double stop_hold = 0.5;     // s

  WrenchProfile wrench_profile;
  // Per-step uniform noise amplitude added to the scripted wrench (per axis).
  Vector6d wrench_noise = Vector6d::Zero();
  std::uint64_t seed = 0;

  // Switch controller only.
  std::vector<ModeEvent> mode_schedule;
  double switch_latency = 1.0;  // s of zero commanded velocity per switch

  bool enforce_joint_limits = false;

  SecondaryTask secondary_task() const {
    return SecondaryTask{secondary_gains, preferred_state};
  }

  // Cross-field validation against the loaded model; resolves the target
  // position when it is derived from the preferred configuration.
  void validate(const MobileManipulatorModel& model) {
    if (!(dt > 0.0)) throw std::invalid_argument("scenario: dt must be > 0");
    if (!(duration_cap > 0.0))
      throw std::invalid_argument("scenario: duration_cap must be > 0");
    if (!(stop_radius > 0.0))
      throw std::invalid_argument("scenario: stop_radius must be > 0");
    if (!(stop_hold >= 0.0))
      throw std::invalid_argument("scenario: stop_hold must be >= 0");
    if (!(switch_latency >= 0.0))
      throw std::invalid_argument("scenario: switch_latency must be >= 0");
    if ((wrench_noise.array() < 0.0).any() || !all_finite(wrench_noise))
      throw std::invalid_argument("scenario: wrench_noise must be >= 0");
    if ((secondary_gains.array() < 0.0).any() || !all_finite(secondary_gains))
      throw std::invalid_argument("scenario: secondary gains must be >= 0");
    if (!all_finite(initial_state.vector()) ||
        !all_finite(preferred_state.vector()))
      throw std::invalid_argument("scenario: non-finite joint state");
    admittance.validate();
    weights.validate();
    wrench_profile.validate();

    if (controller == ControllerKind::Switch) {
      if (mode_schedule.empty())
        throw std::invalid_argument(
            "scenario: switch controller requires a mode schedule");
      double prev = -1.0;
      for (const auto& e : mode_schedule) {
        if (!(e.time >= 0.0) || e.time <= prev)
          throw std::invalid_argument(
              "scenario: mode schedule times must be >= 0 and increasing");
        prev = e.time;
      }
      if (mode_schedule.front().time != 0.0)
        throw std::invalid_argument(
            "scenario: mode schedule must start at t = 0");
    }

    if (derive_target_from_preferred)
      target_position = forward_kinematics(model, preferred_state).position;
    if (!all_finite(target_position))
      throw std::invalid_argument("scenario: non-finite target position");
  }
};

inline bool operator==(const ModeEvent& a, const ModeEvent& b) {
  return a.time == b.time && a.mode == b.mode;
}

inline bool operator==(const WrenchSegment& a, const WrenchSegment& b) {
  return a.start == b.start && a.duration == b.duration && a.kind == b.kind &&
         a.value == b.value && a.value_end == b.value_end &&
         a.amplitude == b.amplitude && a.frequency == b.frequency &&
         a.phase == b.phase;
}

// Field-wise equality, used by the scenario round-trip checks.
inline bool operator==(const ScenarioSpec& a, const ScenarioSpec& b) {
  return a.name == b.name && a.model_path == b.model_path &&
         a.controller == b.controller &&
         a.weights.task_weight == b.weights.task_weight &&
         a.weights.damping == b.weights.damping &&
         a.secondary_gains == b.secondary_gains &&
         a.admittance.mass == b.admittance.mass &&
         a.admittance.damping == b.admittance.damping && a.dt == b.dt &&
         a.duration_cap == b.duration_cap &&
         a.initial_state.vector() == b.initial_state.vector() &&
         a.preferred_state.vector() == b.preferred_state.vector() &&
         a.derive_target_from_preferred == b.derive_target_from_preferred &&
         a.target_position == b.target_position &&
         a.stop_radius == b.stop_radius && a.stop_hold == b.stop_hold &&
         a.wrench_profile.segments == b.wrench_profile.segments &&
         a.wrench_noise == b.wrench_noise && a.seed == b.seed &&
         a.mode_schedule == b.mode_schedule &&
         a.switch_latency == b.switch_latency &&
         a.enforce_joint_limits == b.enforce_joint_limits;
}

}  // namespace wbidk
