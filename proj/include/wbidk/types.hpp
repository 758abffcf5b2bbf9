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

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>

namespace wbidk {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Vector9d = Eigen::Matrix<double, 9, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix9d = Eigen::Matrix<double, 9, 9>;
using Matrix6x9d = Eigen::Matrix<double, 6, 9>;
using Matrix6x3d = Eigen::Matrix<double, 6, 3>;
using Matrix9x6d = Eigen::Matrix<double, 9, 6>;

inline constexpr int kArmDof = 6;
inline constexpr int kBaseDof = 3;   // x, y, yaw virtual joints
inline constexpr int kWholeDof = kArmDof + kBaseDof;

// 6-vectors in operational space use [linear; angular] ordering throughout.
enum class Frame { World };

struct Twist {
  Eigen::Vector3d linear = Eigen::Vector3d::Zero();
  Eigen::Vector3d angular = Eigen::Vector3d::Zero();
  Frame frame = Frame::World;

  Vector6d vector() const {
    Vector6d v;
    v << linear, angular;
    return v;
  }
  static Twist from_vector(const Vector6d& v, Frame f = Frame::World) {
    return {v.head<3>(), v.tail<3>(), f};
  }
};

struct Wrench {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();
  Eigen::Vector3d torque = Eigen::Vector3d::Zero();
  Frame frame = Frame::World;

  Vector6d vector() const {
    Vector6d v;
    v << force, torque;
    return v;
  }
  static Wrench from_vector(const Vector6d& v, Frame f = Frame::World) {
    return {v.head<3>(), v.tail<3>(), f};
  }
};

// Generalized coordinates, partitioned arm-then-base: (q_a, x_b, y_b, yaw_b).
struct JointState {
  Vector6d arm = Vector6d::Zero();
  Eigen::Vector3d base = Eigen::Vector3d::Zero();  // x [m], y [m], yaw [rad]

  Vector9d vector() const {
    Vector9d v;
    v << arm, base;
    return v;
  }
  static JointState from_vector(const Vector9d& v) {
    return {v.head<6>(), v.tail<3>()};
  }
};

// Generalized velocities, same partition: (q̇_a, v_bx, v_by, ω_bz).
// Base velocities are expressed in the world frame.
struct JointVelocity {
  Vector6d arm = Vector6d::Zero();
  Eigen::Vector3d base = Eigen::Vector3d::Zero();

  Vector9d vector() const {
    Vector9d v;
    v << arm, base;
    return v;
  }
  static JointVelocity from_vector(const Vector9d& v) {
    return {v.head<6>(), v.tail<3>()};
  }
};

struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
};

inline Eigen::Matrix3d skew(const Eigen::Vector3d& p) {
  Eigen::Matrix3d s;
  s << 0.0, -p.z(), p.y(),
       p.z(), 0.0, -p.x(),
      -p.y(), p.x(), 0.0;
  return s;
}

// URDF convention: R = Rz(yaw) * Ry(pitch) * Rx(roll).
inline Eigen::Matrix3d rpy_to_matrix(const Eigen::Vector3d& rpy) {
  return (Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

}  // namespace wbidk
