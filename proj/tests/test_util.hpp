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
#include <filesystem>
#include <random>
#include <string>

#include "wbidk/inertia.hpp"
#include "wbidk/kinematics.hpp"
#include "wbidk/model_io.hpp"

namespace testutil {

inline std::filesystem::path data_dir() { return WBIDK_DATA_DIR; }

inline std::filesystem::path work_dir(const std::string& sub) {
  const std::filesystem::path dir =
      std::filesystem::path(WBIDK_TEST_WORK_DIR) / sub;
  std::filesystem::create_directories(dir);
  return dir;
}

inline const wbidk::MobileManipulatorModel& canned_model() {
  static const wbidk::MobileManipulatorModel model =
      wbidk::load_model(data_dir() / "ur10e_kairos.model.json");
  return model;
}

inline wbidk::JointState random_state(std::mt19937_64& rng,
                                      const wbidk::MobileManipulatorModel& model) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  wbidk::JointState q;
  for (int i = 0; i < wbidk::kArmDof; ++i) {
    if (model.arm.joint_limits) {
      const auto& lim = (*model.arm.joint_limits)[i];
      std::uniform_real_distribution<double> dist(lim[0], lim[1]);
      q.arm[i] = dist(rng);
    } else {
      q.arm[i] = 3.0 * unit(rng);
    }
  }
  q.base << 2.0 * unit(rng), 2.0 * unit(rng), 3.1 * unit(rng);
  return q;
}

struct Instance {
  wbidk::JointState q;
  wbidk::Matrix6x9d jacobian;
  wbidk::Matrix9d inertia;
};

// Random full-rank instance from the canned model; configurations whose
// operational-space matrix J M⁻¹ Jᵀ is conditioned worse than 1e6 are
// rerolled.
inline Instance random_instance(std::mt19937_64& rng) {
  const auto& model = canned_model();
  for (;;) {
    Instance inst;
    inst.q = random_state(rng, model);
    inst.jacobian = wbidk::whole_jacobian(model, inst.q);
    inst.inertia = wbidk::whole_inertia(model, inst.q.arm);
    const wbidk::Matrix6d op =
        inst.jacobian *
        inst.inertia.llt().solve(inst.jacobian.transpose());
    Eigen::SelfAdjointEigenSolver<wbidk::Matrix6d> eig(op,
                                                       Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (lo > 0.0 && hi / lo < 1e6) return inst;
  }
}

inline wbidk::Vector6d random_vector6(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  wbidk::Vector6d v;
  for (int i = 0; i < 6; ++i) v[i] = normal(rng);
  return v;
}

inline wbidk::Vector9d random_vector9(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  wbidk::Vector9d v;
  for (int i = 0; i < 9; ++i) v[i] = normal(rng);
  return v;
}

}  // namespace testutil
