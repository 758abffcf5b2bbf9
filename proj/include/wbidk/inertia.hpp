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

#include "wbidk/kinematics.hpp"
#include "wbidk/model.hpp"
#include "wbidk/types.hpp"

namespace wbidk {

// Joint-space inertia of the arm alone, by composite-rigid-body accumulation.
//
// All spatial quantities are expressed at the world origin with the base held
// at identity, using [angular; linear] motion coordinates. The spatial inertia
// of link l about the origin is
//
//   I_l = [ R Ī Rᵀ + m C Cᵀ   m C  ]      C = skew(world COM),
//         [ m Cᵀ              m 1₃ ]
//
// the joint motion axis is S_i = [z_i; p_i × z_i], and
// M_a(i,j) = S_iᵀ (Σ_{l ≥ max(i,j)} I_l) S_j. Symmetric positive definite for
// any configuration of a model with valid link inertials.
inline Matrix6d arm_inertia(const MobileManipulatorModel& model,
                            const Vector6d& q_a) {
  const FrameChain chain =
      compute_frames(model, JointState{q_a, Eigen::Vector3d::Zero()});

  std::array<Matrix6d, kArmDof> composite;
  Matrix6d accum = Matrix6d::Zero();
  for (int l = kArmDof - 1; l >= 0; --l) {
    const LinkInertial& link = model.arm.links[l];
    const Eigen::Matrix3d rot = chain.link[l].linear();
    const Eigen::Vector3d com_w = chain.link[l] * link.com;
    const Eigen::Matrix3d inertia_w = rot * link.inertia * rot.transpose();
    const Eigen::Matrix3d c = skew(com_w);

    Matrix6d spatial;
    spatial.topLeftCorner<3, 3>() =
        inertia_w + link.mass * c * c.transpose();
    spatial.topRightCorner<3, 3>() = link.mass * c;
    spatial.bottomLeftCorner<3, 3>() = link.mass * c.transpose();
    spatial.bottomRightCorner<3, 3>() = link.mass * Eigen::Matrix3d::Identity();
    accum += spatial;
    composite[l] = accum;
  }

  std::array<Vector6d, kArmDof> s;
  for (int i = 0; i < kArmDof; ++i) {
    s[i] << chain.axis[i], chain.origin[i].cross(chain.axis[i]);
  }

  Matrix6d m;
  for (int i = 0; i < kArmDof; ++i) {
    for (int j = i; j < kArmDof; ++j) {
      const double mij = s[i].dot(composite[j] * s[j]);
      m(i, j) = mij;
      m(j, i) = mij;
    }
  }
  return m;
}

// Whole-body inertia: block-diagonal [M_a(q_a), 0; 0, M_b]. Independent of the
// base pose.
inline Matrix9d whole_inertia(const MobileManipulatorModel& model,
                              const Vector6d& q_a) {
  Matrix9d m = Matrix9d::Zero();
  m.topLeftCorner<6, 6>() = arm_inertia(model, q_a);
  m.bottomRightCorner<3, 3>() = model.base.inertia_matrix();
  return m;
}

// Total kinetic energy ½ q̇_aᵀ M_a q̇_a + ½ q̇_bᵀ M_b q̇_b, in joules.
inline double kinetic_energy(const Matrix6d& arm_inertia_matrix,
                             const Eigen::Matrix3d& base_inertia_matrix,
                             const JointVelocity& qd) {
  return 0.5 * qd.arm.dot(arm_inertia_matrix * qd.arm) +
         0.5 * qd.base.dot(base_inertia_matrix * qd.base);
}

inline double kinetic_energy(const Matrix9d& whole_inertia_matrix,
                             const JointVelocity& qd) {
  const Vector9d v = qd.vector();
  return 0.5 * v.dot(whole_inertia_matrix * v);
}

}  // namespace wbidk
