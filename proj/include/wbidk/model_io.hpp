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

#include <filesystem>
#include <string>

#include "wbidk/json_util.hpp"
#include "wbidk/model.hpp"

namespace wbidk {

inline constexpr const char* kModelSchema = "wbidk-model/1";

// Parses a model description. Inertia tensors are given as
// [ixx, iyy, izz, ixy, ixz, iyz]; per-joint limits are optional but must be
// present for all joints or none.
inline MobileManipulatorModel parse_model_json(const jsonio::json& j,
                                               const std::string& ctx) {
  using namespace jsonio;
  check_schema(j, kModelSchema, ctx);

  MobileManipulatorModel model;
  model.name = get_string_or(j, "name", "", ctx);

  const json& base = require(j, "base", ctx);
  model.base.mass = get_number(base, "mass", ctx + ".base");
  model.base.yaw_inertia = get_number(base, "yaw_inertia", ctx + ".base");
  model.base.arm_mount_xyz = get_fixed_vector_or<3>(
      base, "arm_mount_xyz", Eigen::Vector3d::Zero(), ctx + ".base");
  model.base.arm_mount_yaw =
      get_number_or(base, "arm_mount_yaw", 0.0, ctx + ".base");

  const json& arm = require(j, "arm", ctx);
  const json& joints = require(arm, "joints", ctx + ".arm");
  if (!joints.is_array() || joints.size() != kArmDof)
    throw ConfigError(ctx + ".arm.joints: expected exactly " +
                      std::to_string(kArmDof) + " joints");

  int with_limits = 0;
  std::array<Eigen::Vector2d, kArmDof> limits;
  for (int i = 0; i < kArmDof; ++i) {
    const std::string jctx = ctx + ".arm.joints[" + std::to_string(i) + "]";
    const json& joint = joints[i];
    auto& spec = model.arm.joints[i];
    spec.origin_xyz = get_fixed_vector<3>(joint, "origin_xyz", jctx);
    spec.origin_rpy = get_fixed_vector_or<3>(joint, "origin_rpy",
                                             Eigen::Vector3d::Zero(), jctx);
    spec.axis = get_fixed_vector_or<3>(joint, "axis",
                                       Eigen::Vector3d::UnitZ(), jctx);
    auto& link = model.arm.links[i];
    link.mass = get_number(joint, "mass", jctx);
    link.com = get_fixed_vector<3>(joint, "com", jctx);
    const Vector6d in = get_fixed_vector<6>(joint, "inertia", jctx);
    link.inertia << in[0], in[3], in[4],
                    in[3], in[1], in[5],
                    in[4], in[5], in[2];
    if (joint.contains("limits")) {
      const auto lim = fixed_vector<2>(joint["limits"], jctx + ".limits");
      limits[i] = lim;
      ++with_limits;
    }
  }
  if (with_limits == kArmDof) {
    model.arm.joint_limits = limits;
  } else if (with_limits != 0) {
    throw ConfigError(ctx +
                      ".arm.joints: 'limits' must be given for all joints or "
                      "for none");
  }

  if (j.contains("tool")) {
    const json& tool = j["tool"];
    model.tool_xyz = get_fixed_vector_or<3>(tool, "xyz",
                                            Eigen::Vector3d::Zero(), ctx + ".tool");
    model.tool_rpy = get_fixed_vector_or<3>(tool, "rpy",
                                            Eigen::Vector3d::Zero(), ctx + ".tool");
  }

  try {
    validate(model);
  } catch (const ModelError& e) {
    throw ConfigError(ctx + ": " + e.what());
  }
  return model;
}

inline MobileManipulatorModel load_model(const std::filesystem::path& path) {
  return parse_model_json(jsonio::load_file(path), path.string());
}

}  // namespace wbidk
