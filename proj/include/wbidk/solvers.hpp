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

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <limits>
#include <stdexcept>

#include "wbidk/types.hpp"

namespace wbidk {

// Weights of the prioritized damped-least-squares solver:
//   argmin ½‖v_d − J q̇‖²_ωα + ‖q̇‖²_ωβ.
struct BenchmarkWeights {
  Matrix6d task_weight = Matrix6d::Identity();            // ω_α
  Matrix9d damping = 1e-4 * Matrix9d::Identity();         // ω_β

  void validate() const {
    auto spd = [](const auto& m) {
      if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-9) return false;
      Eigen::SelfAdjointEigenSolver<std::decay_t<decltype(m)>> eig(m);
      return eig.eigenvalues().minCoeff() > 0.0;
    };
    if (!spd(task_weight))
      throw std::invalid_argument("task weight must be symmetric positive definite");
    if (!spd(damping))
      throw std::invalid_argument("damping weight must be symmetric positive definite");
  }
};

// Joint-space attraction toward a preferred configuration: q̇_s = G (q_des − q).
struct SecondaryTask {
  Vector9d gains = (Vector9d() << 1, 1, 1, 1, 1, 1, 0, 0, 0).finished();  // 1/s
  JointState preferred;
};

struct SolverDiagnostics {
  double task_residual = 0.0;   // ‖J q̇_d − v_d‖ of the solved system
  double primary_energy = 0.0;  // ½ q̇ᵀ M q̇ of the primary term; 0 when the
                                // solver was not given an inertia matrix
  double condition = 1.0;       // condition number of the inverted matrix
  double pinv_residual = 0.0;   // max |J J† − I| of the projector's inverse
  bool damped = false;          // singularity fallback engaged
};

struct SolverOutput {
  JointVelocity velocity;
  SolverDiagnostics diagnostics;
};

enum class OperatingMode { Manipulation, Locomotion };

// N(J) = I − J† J. Motions N ξ are invisible at the end-effector whenever
// J J† = I, which callers should confirm via generalized_inverse_residual.
inline Matrix9d null_projector(const Matrix6x9d& jacobian,
                               const Matrix9x6d& pinv) {
  return Matrix9d::Identity() - pinv * jacobian;
}

// max |J J† − I|; ≤ 1e-9 is the consistency precondition for null_projector.
inline double generalized_inverse_residual(const Matrix6x9d& jacobian,
                                           const Matrix9x6d& pinv) {
  return (jacobian * pinv - Matrix6d::Identity()).cwiseAbs().maxCoeff();
}

inline JointVelocity secondary_velocity(const SecondaryTask& task,
                                        const JointState& q) {
  const Vector9d delta = task.preferred.vector() - q.vector();
  return JointVelocity::from_vector(task.gains.cwiseProduct(delta));
}

namespace detail {

// Condition-number indicator, saturated so diagnostics stay finite even for
// singular inputs.
template <typename Matrix>
double spd_condition(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || !std::isfinite(hi))
    return std::numeric_limits<double>::max();
  return std::min(hi / lo, std::numeric_limits<double>::max());
}

// Normal-equation solve of the damped least-squares problem for a 6×N task
// Jacobian: K = Jᵀ ω_α J + ω_β, q̇ = K⁻¹ Jᵀ ω_α v. One step of iterative
// refinement keeps the solution accurate when ω_β is tiny.
template <int N>
struct DlsSolve {
  Eigen::Matrix<double, N, 1> solution;
  Eigen::Matrix<double, N, 6> pseudoinverse;  // K⁻¹ Jᵀ ω_α
  double condition = 1.0;
};

template <int N>
DlsSolve<N> damped_least_squares(const Eigen::Matrix<double, 6, N>& jacobian,
                                 const Vector6d& v,
                                 const Matrix6d& task_weight,
                                 const Eigen::Matrix<double, N, N>& damping) {
  using MatrixN = Eigen::Matrix<double, N, N>;
  const Eigen::Matrix<double, N, 6> jt_wa = jacobian.transpose() * task_weight;
  MatrixN normal = jt_wa * jacobian + damping;
  normal = (0.5 * (normal + normal.transpose())).eval();

  DlsSolve<N> out;
  out.condition = spd_condition(normal);
  const Eigen::LDLT<MatrixN> ldlt(normal);

  const Eigen::Matrix<double, N, 1> rhs = jt_wa * v;
  out.solution = ldlt.solve(rhs);
  out.solution += ldlt.solve(rhs - normal * out.solution);

  out.pseudoinverse = ldlt.solve(jt_wa);
  out.pseudoinverse += ldlt.solve(jt_wa - normal * out.pseudoinverse);
  return out;
}

}  // namespace detail

// Prioritized damped-least-squares benchmark:
//   q̇_d = (Jᵀ ω_α J + ω_β)⁻¹ Jᵀ ω_α v_d + N(J) G (q_des − q),
// with N built from the damped pseudoinverse of the primary term.
inline SolverOutput solve_benchmark(const Matrix6x9d& jacobian,
                                    const Vector6d& v_d,
                                    const BenchmarkWeights& weights,
                                    const SecondaryTask& task,
                                    const JointState& q,
                                    const Matrix9d* inertia = nullptr) {
  const auto dls = detail::damped_least_squares<9>(
      jacobian, v_d, weights.task_weight, weights.damping);
  const Matrix9d projector = null_projector(jacobian, dls.pseudoinverse);
  const Vector9d qd =
      dls.solution + projector * secondary_velocity(task, q).vector();

  SolverOutput out;
  out.velocity = JointVelocity::from_vector(qd);
  out.diagnostics.task_residual = (jacobian * qd - v_d).norm();
  out.diagnostics.condition = dls.condition;
  out.diagnostics.pinv_residual =
      generalized_inverse_residual(jacobian, dls.pseudoinverse);
  if (inertia != nullptr)
    out.diagnostics.primary_energy =
        0.5 * dls.solution.dot(*inertia * dls.solution);
  return out;
}

struct MinEnergyOptions {
  // Above this condition number of J M⁻¹ Jᵀ, μ·I is added before inversion
  // and the step is flagged.
  double condition_threshold = 1e8;
  double damping = 1e-6;
};

namespace detail {

struct MinEnergyCore {
  Matrix9x6d minv_jt;            // M⁻¹ Jᵀ
  Matrix6d op_matrix;            // J M⁻¹ Jᵀ (+ μI when damped)
  Eigen::LDLT<Matrix6d> op_ldlt;
  double condition = 1.0;
  bool damped = false;
};

inline MinEnergyCore min_energy_core(const Matrix6x9d& jacobian,
                                     const Matrix9d& inertia,
                                     const MinEnergyOptions& opts) {
  MinEnergyCore core;
  const Eigen::LLT<Matrix9d> llt(inertia);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("min-energy solve: inertia matrix is not SPD");
  core.minv_jt = llt.solve(jacobian.transpose());

  Matrix6d a = jacobian * core.minv_jt;
  a = (0.5 * (a + a.transpose())).eval();
  core.condition = spd_condition(a);
  core.damped = !(core.condition <= opts.condition_threshold);
  if (core.damped) a += opts.damping * Matrix6d::Identity();
  core.op_matrix = a;
  core.op_ldlt.compute(a);
  return core;
}

inline Vector6d refined_solve(const MinEnergyCore& core, const Vector6d& rhs) {
  Vector6d y = core.op_ldlt.solve(rhs);
  y += core.op_ldlt.solve(rhs - core.op_matrix * y);
  return y;
}

inline Matrix9x6d dynamically_consistent_pinv_matrix(const MinEnergyCore& core) {
  Matrix6d inv = core.op_ldlt.solve(Matrix6d::Identity());
  inv += core.op_ldlt.solve(Matrix6d::Identity() - core.op_matrix * inv);
  return core.minv_jt * inv;
}

}  // namespace detail

// The dynamically consistent pseudoinverse J_M† = M⁻¹Jᵀ (J M⁻¹ Jᵀ)⁻¹, with
// the singularity guard applied to the 6×6 operational-space matrix.
struct DynamicallyConsistentPinv {
  Matrix9x6d pinv;
  double condition = 1.0;
  bool damped = false;
};

inline DynamicallyConsistentPinv dynamically_consistent_pinv(
    const Matrix6x9d& jacobian, const Matrix9d& inertia,
    const MinEnergyOptions& opts = {}) {
  const auto core = detail::min_energy_core(jacobian, inertia, opts);
  return {detail::dynamically_consistent_pinv_matrix(core), core.condition,
          core.damped};
}

// Minimum-kinetic-energy inverse differential kinematics:
//   q̇* = M⁻¹Jᵀ (J M⁻¹ Jᵀ)⁻¹ v_d
// solves min ½ q̇ᵀ M q̇ subject to J q̇ = v_d (the KKT system
// M q̇ + Jᵀλ = 0, J q̇ = v_d with λ = −(J M⁻¹ Jᵀ)⁻¹ v_d).
inline SolverOutput solve_min_energy(const Matrix6x9d& jacobian,
                                     const Matrix9d& inertia,
                                     const Vector6d& v_d,
                                     const MinEnergyOptions& opts = {}) {
  const auto core = detail::min_energy_core(jacobian, inertia, opts);
  const Vector6d y = detail::refined_solve(core, v_d);
  const Vector9d qd = core.minv_jt * y;

  SolverOutput out;
  out.velocity = JointVelocity::from_vector(qd);
  out.diagnostics.task_residual = (jacobian * qd - v_d).norm();
  out.diagnostics.primary_energy = 0.5 * qd.dot(inertia * qd);
  out.diagnostics.condition = core.condition;
  out.diagnostics.damped = core.damped;
  out.diagnostics.pinv_residual = generalized_inverse_residual(
      jacobian, detail::dynamically_consistent_pinv_matrix(core));
  return out;
}

// q̇_d = q̇* + (I − J_M† J) G (q_des − q). The secondary term lives in the
// null space of J, so J q̇_d = J q̇*: the end-effector twist is unchanged.
inline SolverOutput compose_with_secondary(const JointVelocity& qd_star,
                                           const Matrix6x9d& jacobian,
                                           const Matrix9d& inertia,
                                           const SecondaryTask& task,
                                           const JointState& q,
                                           const MinEnergyOptions& opts = {}) {
  const auto core = detail::min_energy_core(jacobian, inertia, opts);
  const Matrix9x6d pinv = detail::dynamically_consistent_pinv_matrix(core);
  const Matrix9d projector = null_projector(jacobian, pinv);
  const Vector9d qs = secondary_velocity(task, q).vector();
  const Vector9d qd = qd_star.vector() + projector * qs;

  SolverOutput out;
  out.velocity = JointVelocity::from_vector(qd);
  out.diagnostics.task_residual =
      (jacobian * (qd - qd_star.vector())).norm();  // secondary leakage
  out.diagnostics.primary_energy =
      0.5 * qd_star.vector().dot(inertia * qd_star.vector());
  out.diagnostics.condition = core.condition;
  out.diagnostics.damped = core.damped;
  out.diagnostics.pinv_residual = generalized_inverse_residual(jacobian, pinv);
  return out;
}

// Full minimum-energy controller step sharing one factorization: primary
// solve plus null-space secondary task.
inline SolverOutput solve_min_energy_with_secondary(
    const Matrix6x9d& jacobian, const Matrix9d& inertia, const Vector6d& v_d,
    const SecondaryTask& task, const JointState& q,
    const MinEnergyOptions& opts = {}) {
  const auto core = detail::min_energy_core(jacobian, inertia, opts);
  const Vector6d y = detail::refined_solve(core, v_d);
  const Vector9d qd_star = core.minv_jt * y;

  Vector9d qd = qd_star;
  if ((task.gains.array() != 0.0).any()) {
    const Matrix9x6d pinv = detail::dynamically_consistent_pinv_matrix(core);
    const Vector9d qs = secondary_velocity(task, q).vector();
    qd += qs - pinv * (jacobian * qs);
  }

  SolverOutput out;
  out.velocity = JointVelocity::from_vector(qd);
  out.diagnostics.task_residual = (jacobian * qd - v_d).norm();
  out.diagnostics.primary_energy = 0.5 * qd_star.dot(inertia * qd_star);
  out.diagnostics.condition = core.condition;
  out.diagnostics.damped = core.damped;
  return out;
}

// Switch-mode benchmark: Manipulation drives the arm alone (base pinned to
// zero) through damped least squares on J_a; Locomotion runs the full
// prioritized benchmark solve.
inline SolverOutput solve_switch(OperatingMode mode, const Matrix6d& arm_jacobian,
                                 const Matrix6x3d& base_jacobian,
                                 const Matrix9d& inertia, const Vector6d& v_d,
                                 const BenchmarkWeights& weights,
                                 const SecondaryTask& task,
                                 const JointState& q) {
  if (mode == OperatingMode::Locomotion) {
    Matrix6x9d jacobian;
    jacobian.leftCols<6>() = arm_jacobian;
    jacobian.rightCols<3>() = base_jacobian;
    return solve_benchmark(jacobian, v_d, weights, task, q, &inertia);
  }

  const Matrix6d arm_damping = weights.damping.topLeftCorner<6, 6>();
  const auto dls = detail::damped_least_squares<6>(
      arm_jacobian, v_d, weights.task_weight, arm_damping);

  SolverOutput out;
  out.velocity.arm = dls.solution;
  out.velocity.base.setZero();
  out.diagnostics.task_residual = (arm_jacobian * dls.solution - v_d).norm();
  out.diagnostics.condition = dls.condition;
  out.diagnostics.primary_energy =
      0.5 * out.velocity.vector().dot(inertia * out.velocity.vector());
  return out;
}

}  // namespace wbidk
