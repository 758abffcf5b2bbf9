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

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "oracles.hpp"
#include "test_util.hpp"
#include "wbidk/kinematics.hpp"

using namespace wbidk;

namespace {
const MobileManipulatorModel& model() { return testutil::canned_model(); }
}  // namespace

TEST_CASE("forward kinematics at zero matches the documented home pose") {
  const Pose home = forward_kinematics(model(), JointState{});
  // Arm mount (0.15, 0, 0.56) plus the arm's zero-pose offsets.
  CHECK(std::abs(home.position.x() - (-1.03425)) < 1e-12);
  CHECK(std::abs(home.position.y() - (-0.2907)) < 1e-12);
  CHECK(std::abs(home.position.z() - 0.62085) < 1e-12);
  // Tool frame at zero is a +90 degree rotation about world x.
  const Eigen::Matrix3d expected =
      Eigen::AngleAxisd(M_PI / 2, Eigen::Vector3d::UnitX()).toRotationMatrix();
  CHECK((home.orientation.toRotationMatrix() - expected).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("pure base translation translates the end-effector") {
  const Pose home = forward_kinematics(model(), JointState{});
  JointState q;
  q.base << 1.0, 2.0, 0.0;
  const Pose moved = forward_kinematics(model(), q);
  CHECK((moved.position - home.position - Eigen::Vector3d(1, 2, 0)).norm() <
        1e-12);
  CHECK(moved.orientation.angularDistance(home.orientation) < 1e-12);
}

TEST_CASE("forward kinematics agrees with the transform-chain oracle") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    const JointState q = testutil::random_state(rng, model());
    const Pose pose = forward_kinematics(model(), q);
    const Eigen::Matrix4d ref = oracles::chain_fk(model(), q);
    CHECK((pose.position - ref.topRightCorner<3, 1>()).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK((pose.orientation.toRotationMatrix() - ref.topLeftCorner<3, 3>())
              .cwiseAbs()
              .maxCoeff() < 1e-10);
  }
}

TEST_CASE("whole Jacobian is the horizontal concatenation [J_a | J_b]") {
  std::mt19937_64 rng(7);
  const JointState q = testutil::random_state(rng, model());
  const Matrix6x9d j = whole_jacobian(model(), q);
  CHECK((j.leftCols<6>() - arm_jacobian(model(), q)).norm() == 0.0);
  CHECK((j.rightCols<3>() - base_jacobian(model(), q)).norm() == 0.0);

  Vector9d qd = Vector9d::Zero();
  qd.head<6>() = testutil::random_vector6(rng);
  CHECK((j * qd - arm_jacobian(model(), q) * qd.head<6>()).norm() < 1e-14);
}

TEST_CASE("Jacobian columns match central finite differences of FK") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const JointState q = testutil::random_state(rng, model());
    const Matrix6x9d j = whole_jacobian(model(), q);
    const Matrix6x9d fd = oracles::jacobian_fd(model(), q, 1e-6);
    CHECK((j - fd).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("J qdot is the first-order FK change (Taylor check)") {
  std::mt19937_64 rng(13);
  const JointState q = testutil::random_state(rng, model());
  const Vector9d qd = testutil::random_vector9(rng);
  const Matrix6x9d j = whole_jacobian(model(), q);
  const Eigen::Vector3d p0 = forward_kinematics(model(), q).position;

  auto residual = [&](double dt) {
    const JointState q1 = JointState::from_vector(q.vector() + qd * dt);
    const Eigen::Vector3d p1 = forward_kinematics(model(), q1).position;
    return (p1 - p0 - (j * qd).head<3>() * dt).norm();
  };
  // First-order model: halving dt shrinks the residual about four-fold.
  const double r1 = residual(1e-3);
  const double r2 = residual(5e-4);
  CHECK(r1 < 1e-4);
  CHECK(r1 / r2 > 3.0);
  CHECK(r1 / r2 < 5.0);
}

TEST_CASE("tool offset along the last axis keeps column 6 linear part zero") {
  // The tool sits on joint 6's axis, so that column has no moment arm.
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const JointState q = testutil::random_state(rng, model());
    const Matrix6d ja = arm_jacobian(model(), q);
    CHECK(ja.block<3, 1>(0, 5).norm() < 1e-12);
  }
}

TEST_CASE("base Jacobian structure") {
  std::mt19937_64 rng(19);
  const JointState q = testutil::random_state(rng, model());
  const Matrix6x3d jb = base_jacobian(model(), q);

  SECTION("unit translation maps to a unit end-effector twist") {
    CHECK((jb.col(0) - (Vector6d() << 1, 0, 0, 0, 0, 0).finished()).norm() ==
          0.0);
    CHECK((jb.col(1) - (Vector6d() << 0, 1, 0, 0, 0, 0).finished()).norm() ==
          0.0);
  }
  SECTION("linear z and angular x,y rows vanish") {
    CHECK(jb.row(2).norm() == 0.0);
    CHECK(jb.row(3).norm() == 0.0);
    CHECK(jb.row(4).norm() == 0.0);
  }
  SECTION("yaw column is the cross product with the lever arm") {
    const Eigen::Vector3d p_ee = forward_kinematics(model(), q).position;
    const Eigen::Vector3d lever =
        p_ee - Eigen::Vector3d(q.base.x(), q.base.y(), 0.0);
    const Eigen::Vector3d expected = Eigen::Vector3d::UnitZ().cross(lever);
    CHECK((jb.block<3, 1>(0, 2) - expected).norm() < 1e-12);
    CHECK(jb(5, 2) == 1.0);
  }
}

TEST_CASE("end-effector above the rotation center kills the yaw lever") {
  // Build a dedicated model with no mount offset and a straight-up arm so the
  // tool is exactly on the base rotation axis.
  MobileManipulatorModel m = model();
  m.base.arm_mount_xyz.setZero();
  for (auto& joint : m.arm.joints) {
    joint.origin_xyz.setZero();
    joint.origin_rpy.setZero();
  }
  m.tool_xyz = Eigen::Vector3d(0, 0, 0.3);
  m.tool_rpy.setZero();
  const Matrix6x3d jb = base_jacobian(m, JointState{});
  CHECK(jb.block<3, 1>(0, 2).norm() < 1e-12);
  CHECK(jb(5, 2) == 1.0);
}

TEST_CASE("model validation rejects bad inertial data") {
  MobileManipulatorModel m = model();
  m.arm.links[2].mass = 0.0;
  CHECK_THROWS_AS(validate(m), ModelError);

  m = model();
  m.arm.links[0].inertia(0, 1) = 0.5;  // asymmetric
  CHECK_THROWS_AS(validate(m), ModelError);

  m = model();
  (*m.arm.joint_limits)[3] = Eigen::Vector2d(1.0, -1.0);
  CHECK_THROWS_AS(validate(m), ModelError);

  m = model();
  m.base.mass = -2.0;
  CHECK_THROWS_AS(validate(m), ModelError);
}
