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

#include "wbidk/model.hpp"
#include "wbidk/types.hpp"

namespace wbidk {

// World-frame frames along the kinematic chain for one configuration.
struct FrameChain {
  Eigen::Isometry3d base = Eigen::Isometry3d::Identity();   // rotation center
  Eigen::Isometry3d mount = Eigen::Isometry3d::Identity();  // arm root
  // Post-rotation (link) frame of each arm joint.
  std::array<Eigen::Isometry3d, kArmDof> link;
  // World direction of each joint axis and world position of each joint origin.
  std::array<Eigen::Vector3d, kArmDof> axis;
  std::array<Eigen::Vector3d, kArmDof> origin;
  Eigen::Isometry3d ee = Eigen::Isometry3d::Identity();     // tool frame
};

inline Eigen::Isometry3d planar_transform(const Eigen::Vector3d& base_pose) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.translation() << base_pose.x(), base_pose.y(), 0.0;
  t.linear() = Eigen::AngleAxisd(base_pose.z(), Eigen::Vector3d::UnitZ())
                   .toRotationMatrix();
  return t;
}

inline FrameChain compute_frames(const MobileManipulatorModel& model,
                                 const JointState& q) {
  FrameChain chain;
  chain.base = planar_transform(q.base);

  Eigen::Isometry3d mount_offset = Eigen::Isometry3d::Identity();
  mount_offset.translation() = model.base.arm_mount_xyz;
  mount_offset.linear() =
      Eigen::AngleAxisd(model.base.arm_mount_yaw, Eigen::Vector3d::UnitZ())
          .toRotationMatrix();
  chain.mount = chain.base * mount_offset;

  Eigen::Isometry3d t = chain.mount;
  for (int i = 0; i < kArmDof; ++i) {
    const ArmJoint& joint = model.arm.joints[i];
    Eigen::Isometry3d fixed = Eigen::Isometry3d::Identity();
    fixed.translation() = joint.origin_xyz;
    fixed.linear() = rpy_to_matrix(joint.origin_rpy);
    t = t * fixed;
    chain.axis[i] = t.linear() * joint.axis;
    chain.origin[i] = t.translation();
    t = t * Eigen::Isometry3d(Eigen::AngleAxisd(q.arm[i], joint.axis));
    chain.link[i] = t;
  }

  Eigen::Isometry3d tool = Eigen::Isometry3d::Identity();
  tool.translation() = model.tool_xyz;
  tool.linear() = rpy_to_matrix(model.tool_rpy);
  chain.ee = t * tool;
  return chain;
}

// End-effector pose in the world frame: base planar transform ∘ arm chain ∘ tool.
inline Pose forward_kinematics(const MobileManipulatorModel& model,
                               const JointState& q) {
  const FrameChain chain = compute_frames(model, q);
  Pose pose;
  pose.position = chain.ee.translation();
  pose.orientation = Eigen::Quaterniond(chain.ee.linear()).normalized();
  return pose;
}

// Geometric Jacobian of the arm joints for the end-effector point, world frame.
// Column i: [z_i × (p_ee − p_i); z_i].
inline Matrix6d arm_jacobian(const FrameChain& chain) {
  const Eigen::Vector3d p_ee = chain.ee.translation();
  Matrix6d j;
  for (int i = 0; i < kArmDof; ++i) {
    j.block<3, 1>(0, i) = chain.axis[i].cross(p_ee - chain.origin[i]);
    j.block<3, 1>(3, i) = chain.axis[i];
  }
  return j;
}

inline Matrix6d arm_jacobian(const MobileManipulatorModel& model,
                             const JointState& q) {
  return arm_jacobian(compute_frames(model, q));
}

// Arm Jacobian with the base at the identity pose.
inline Matrix6d arm_jacobian(const MobileManipulatorModel& model,
                             const Vector6d& q_a) {
  return arm_jacobian(model, JointState{q_a, Eigen::Vector3d::Zero()});
}

// Maps world-frame base velocities (v_bx, v_by, ω_bz) to the end-effector
// twist contribution. The yaw column's linear part is ẑ × (p_ee − p_base).
inline Matrix6x3d base_jacobian(const FrameChain& chain) {
  const Eigen::Vector3d lever =
      chain.ee.translation() - chain.base.translation();
  Matrix6x3d j = Matrix6x3d::Zero();
  j(0, 0) = 1.0;
  j(1, 1) = 1.0;
  j.block<3, 1>(0, 2) = Eigen::Vector3d::UnitZ().cross(lever);
  j.block<3, 1>(3, 2) = Eigen::Vector3d::UnitZ();
  return j;
}

inline Matrix6x3d base_jacobian(const MobileManipulatorModel& model,
                                const JointState& q) {
  return base_jacobian(compute_frames(model, q));
}

// Whole-body Jacobian [J_a | J_b], arm-then-base column order.
inline Matrix6x9d whole_jacobian(const FrameChain& chain) {
  Matrix6x9d j;
  j.leftCols<6>() = arm_jacobian(chain);
  j.rightCols<3>() = base_jacobian(chain);
  return j;
}

inline Matrix6x9d whole_jacobian(const MobileManipulatorModel& model,
                                 const JointState& q) {
  return whole_jacobian(compute_frames(model, q));
}

}  // namespace wbidk
