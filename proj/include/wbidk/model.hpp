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

#include <Eigen/Eigenvalues>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "wbidk/types.hpp"

namespace wbidk {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One revolute joint of the serial arm. The fixed origin transform
// (translation then rpy rotation) maps the parent link frame to this joint's
// pre-rotation frame; the joint then rotates about `axis` (unit, local).
struct ArmJoint {
  Eigen::Vector3d origin_xyz = Eigen::Vector3d::Zero();
  Eigen::Vector3d origin_rpy = Eigen::Vector3d::Zero();
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
};

// Inertial data of the link carried by a joint, expressed in the rotated
// (link) frame: COM offset and rotational inertia tensor about the COM.
struct LinkInertial {
  double mass = 0.0;                                   // kg
  Eigen::Vector3d com = Eigen::Vector3d::Zero();       // m
  Eigen::Matrix3d inertia = Eigen::Matrix3d::Zero();   // kg·m², about COM
};

struct ArmModel {
  std::array<ArmJoint, kArmDof> joints;
  std::array<LinkInertial, kArmDof> links;
  // Optional per-joint position limits [lower, upper] (rad).
  std::optional<std::array<Eigen::Vector2d, kArmDof>> joint_limits;
};

// Omnidirectional base moving in the plane: virtual joints (x, y, yaw).
struct BaseModel {
  double mass = 115.0;          // kg
  double yaw_inertia = 10.0;    // kg·m², about the vertical axis
  // Arm root relative to the base rotation center.
  Eigen::Vector3d arm_mount_xyz = Eigen::Vector3d::Zero();
  double arm_mount_yaw = 0.0;

  // M_b = diag(m, m, I_yaw): constant, diagonal, positive definite.
  Eigen::Matrix3d inertia_matrix() const {
    return Eigen::Vector3d(mass, mass, yaw_inertia).asDiagonal();
  }
};

struct MobileManipulatorModel {
  std::string name;
  ArmModel arm;
  BaseModel base;
  Eigen::Vector3d tool_xyz = Eigen::Vector3d::Zero();
  Eigen::Vector3d tool_rpy = Eigen::Vector3d::Zero();
};

namespace detail {

inline bool symmetric_positive_definite(const Eigen::Matrix3d& m, double sym_tol) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > sym_tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(m);
  return eig.eigenvalues().minCoeff() > 0.0;
}

}  // namespace detail

// Throws ModelError naming the offending field on the first violated invariant.
inline void validate(const MobileManipulatorModel& model) {
  for (int i = 0; i < kArmDof; ++i) {
    const auto& j = model.arm.joints[i];
    const auto& l = model.arm.links[i];
    const std::string tag = "arm.joints[" + std::to_string(i) + "]";
    if (!all_finite(j.origin_xyz) || !all_finite(j.origin_rpy))
      throw ModelError(tag + ": non-finite origin");
    if (std::abs(j.axis.norm() - 1.0) > 1e-9)
      throw ModelError(tag + ".axis: must be a unit vector");
    if (!(l.mass > 0.0))
      throw ModelError(tag + ".mass: must be > 0");
    if (!detail::symmetric_positive_definite(l.inertia, 1e-9))
      throw ModelError(tag + ".inertia: must be symmetric positive definite");
  }
  if (model.arm.joint_limits) {
    for (int i = 0; i < kArmDof; ++i) {
      const auto& lim = (*model.arm.joint_limits)[i];
      if (!(lim[0] < lim[1]))
        throw ModelError("arm.joints[" + std::to_string(i) +
                         "].limits: lower must be < upper");
    }
  }
  if (!(model.base.mass > 0.0)) throw ModelError("base.mass: must be > 0");
  if (!(model.base.yaw_inertia > 0.0))
    throw ModelError("base.yaw_inertia: must be > 0");
  if (!all_finite(model.base.arm_mount_xyz) ||
      !std::isfinite(model.base.arm_mount_yaw))
    throw ModelError("base.arm_mount: non-finite");
}

// True when q_a is inside the model's joint limits (always true without limits).
inline bool within_limits(const ArmModel& arm, const Vector6d& q_a) {
  if (!arm.joint_limits) return true;
  for (int i = 0; i < kArmDof; ++i) {
    const auto& lim = (*arm.joint_limits)[i];
    if (q_a[i] < lim[0] || q_a[i] > lim[1]) return false;
  }
  return true;
}

// Clamps q_a into the limits. Returns true when any joint was saturated.
inline bool clamp_to_limits(const ArmModel& arm, Vector6d& q_a) {
  if (!arm.joint_limits) return false;
  bool clamped = false;
  for (int i = 0; i < kArmDof; ++i) {
    const auto& lim = (*arm.joint_limits)[i];
    const double c = std::clamp(q_a[i], lim[0], lim[1]);
    clamped |= (c != q_a[i]);
    q_a[i] = c;
  }
  return clamped;
}

}  // namespace wbidk
