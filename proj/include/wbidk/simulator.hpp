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

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbidk/admittance.hpp"
#include "wbidk/inertia.hpp"
#include "wbidk/kinematics.hpp"
#include "wbidk/scenario.hpp"
#include "wbidk/solvers.hpp"

namespace wbidk {

// Per-step flags in the trajectory log.
namespace step_flags {
inline constexpr std::uint32_t kDamped = 1;         // singularity fallback
inline constexpr std::uint32_t kDwell = 2;          // switch latency, q̇_d = 0
inline constexpr std::uint32_t kLocomotionMode = 4; // switch controller mode
inline constexpr std::uint32_t kLimitClamped = 8;   // joint limit saturation
}  // namespace step_flags

struct StepRecord {
  double t = 0.0;
  Vector9d q = Vector9d::Zero();    // state at t, before integration
  Vector9d qd = Vector9d::Zero();   // commanded joint velocity
  Vector6d vd = Vector6d::Zero();   // admittance output
  Vector6d v = Vector6d::Zero();    // J q̇_d
  Vector6d fh = Vector6d::Zero();   // applied wrench
  double energy = 0.0;              // E_K of the commanded velocity, J
  std::uint32_t flags = 0;
};

struct TrajectoryLog {
  double dt = 0.0;
  std::vector<StepRecord> steps;  // uniform grid t_k = k·dt
};

class SimulationError : public std::runtime_error {
 public:
  SimulationError(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what),
        step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

// Explicit Euler step. Base velocities are world-framed, so the planar pose
// advances componentwise; arm joints advance by q̇_a·dt.
inline JointState integrate_step(const JointState& q, const JointVelocity& qd,
                                 double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("integrate_step: dt must be > 0");
  JointState next;
  next.arm = q.arm + qd.arm * dt;
  next.base = q.base + qd.base * dt;
  return next;
}

namespace detail {

// Mode and dwell bookkeeping for the switch controller.
class SwitchState {
 public:
  SwitchState(const std::vector<ModeEvent>& schedule, double latency)
      : schedule_(schedule), latency_(latency) {}

  // Advances to time t; returns current mode and whether t is inside a dwell.
  std::pair<OperatingMode, bool> at(double t) {
    while (next_ < schedule_.size() && schedule_[next_].time <= t) {
      mode_ = schedule_[next_].mode;
      if (schedule_[next_].time > 0.0)
        dwell_until_ = schedule_[next_].time + latency_;
      ++next_;
    }
    return {mode_, t < dwell_until_};
  }

 private:
  const std::vector<ModeEvent>& schedule_;
  double latency_;
  std::size_t next_ = 0;
  OperatingMode mode_ = OperatingMode::Manipulation;
  double dwell_until_ = -1.0;
};

}  // namespace detail

// Runs the closed loop: wrench profile → admittance → IDK solve → logging →
// kinematic integration. Stops when the end-effector has stayed within
// stop_radius of the target for stop_hold seconds, or at the duration cap.
// Deterministic given the spec (noise is drawn from spec.seed). A non-finite
// command aborts with SimulationError carrying the step index.
//
// The spec must have been validated against this model (resolves the target).
inline TrajectoryLog run_scenario(const MobileManipulatorModel& model,
                                  const ScenarioSpec& spec) {
  TrajectoryLog log;
  log.dt = spec.dt;
  log.steps.reserve(
      static_cast<std::size_t>(spec.duration_cap / spec.dt) + 1);

  JointState q = spec.initial_state;
  Twist v_prev;
  const SecondaryTask task = spec.secondary_task();
  const Eigen::Matrix3d base_inertia = model.base.inertia_matrix();

  detail::SwitchState switch_state(spec.mode_schedule, spec.switch_latency);
  std::mt19937_64 rng(spec.seed);
  const bool noisy = (spec.wrench_noise.array() > 0.0).any();

  const bool clamp = spec.enforce_joint_limits && model.arm.joint_limits;
  double inside_since = -1.0;

  for (std::size_t k = 0; k * spec.dt < spec.duration_cap; ++k) {
    const double t = static_cast<double>(k) * spec.dt;

    Wrench fh = spec.wrench_profile.evaluate(t);
    if (noisy) {
      Vector6d noise = Vector6d::Zero();
      for (int i = 0; i < 6; ++i) {
        if (spec.wrench_noise[i] > 0.0) {
          std::uniform_real_distribution<double> dist(-spec.wrench_noise[i],
                                                      spec.wrench_noise[i]);
          noise[i] = dist(rng);
        }
      }
      fh = Wrench::from_vector(fh.vector() + noise);
    }

    const Twist vd = admittance_step(spec.admittance, fh, v_prev, spec.dt);
    v_prev = vd;

    const FrameChain chain = compute_frames(model, q);
    const Matrix6d j_arm = arm_jacobian(chain);
    const Matrix6x3d j_base = base_jacobian(chain);
    Matrix6x9d jacobian;
    jacobian.leftCols<6>() = j_arm;
    jacobian.rightCols<3>() = j_base;
    const Matrix6d m_arm = arm_inertia(model, q.arm);
    Matrix9d inertia = Matrix9d::Zero();
    inertia.topLeftCorner<6, 6>() = m_arm;
    inertia.bottomRightCorner<3, 3>() = base_inertia;

    SolverOutput solved;
    std::uint32_t flags = 0;
    switch (spec.controller) {
      case ControllerKind::MinimumEnergy:
        solved = solve_min_energy_with_secondary(jacobian, inertia,
                                                 vd.vector(), task, q);
        break;
      case ControllerKind::Locomotion:
        solved = solve_benchmark(jacobian, vd.vector(), spec.weights, task, q,
                                 &inertia);
        break;
      case ControllerKind::Switch: {
        const auto [mode, dwell] = switch_state.at(t);
        if (mode == OperatingMode::Locomotion)
          flags |= step_flags::kLocomotionMode;
        if (dwell) {
          solved = SolverOutput{};  // zero commanded velocity
          flags |= step_flags::kDwell;
        } else {
          solved = solve_switch(mode, j_arm, j_base, inertia, vd.vector(),
                                spec.weights, task, q);
        }
        break;
      }
    }
    if (solved.diagnostics.damped) flags |= step_flags::kDamped;

    const Vector9d qd = solved.velocity.vector();
    if (!all_finite(qd) || !all_finite(vd.vector()))
      throw SimulationError(k, "non-finite command");

    JointState next = integrate_step(q, solved.velocity, spec.dt);
    if (clamp && clamp_to_limits(model.arm, next.arm))
      flags |= step_flags::kLimitClamped;

    StepRecord rec;
    rec.t = t;
    rec.q = q.vector();
    rec.qd = qd;
    rec.vd = vd.vector();
    rec.v = jacobian * qd;
    rec.fh = fh.vector();
    rec.energy = kinetic_energy(m_arm, base_inertia, solved.velocity);
    rec.flags = flags;
    if (!std::isfinite(rec.energy))
      throw SimulationError(k, "non-finite kinetic energy");
    log.steps.push_back(rec);

    q = next;

    const double t_next = static_cast<double>(k + 1) * spec.dt;
    const Eigen::Vector3d p = forward_kinematics(model, q).position;
    if ((p - spec.target_position).norm() <= spec.stop_radius) {
      if (inside_since < 0.0) inside_since = t_next;
      if (t_next - inside_since >= spec.stop_hold) break;
    } else {
      inside_since = -1.0;
    }
  }
  return log;
}

}  // namespace wbidk
