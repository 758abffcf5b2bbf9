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
#include <fstream>
#include <string>

#include "wbidk/json_util.hpp"
#include "wbidk/model_io.hpp"
#include "wbidk/scenario.hpp"

namespace wbidk {

inline constexpr const char* kScenarioSchema = "wbidk-scenario/1";

namespace detail {

inline WrenchSegment::Kind segment_kind_from_name(const std::string& name,
                                                  const std::string& ctx) {
  if (name == "constant") return WrenchSegment::Kind::Constant;
  if (name == "ramp") return WrenchSegment::Kind::Ramp;
  if (name == "sinusoid") return WrenchSegment::Kind::Sinusoid;
  throw ConfigError(ctx + ": unknown segment kind '" + name + "'");
}

inline const char* segment_kind_name(WrenchSegment::Kind kind) {
  switch (kind) {
    case WrenchSegment::Kind::Constant: return "constant";
    case WrenchSegment::Kind::Ramp: return "ramp";
    case WrenchSegment::Kind::Sinusoid: return "sinusoid";
  }
  return "?";
}

inline JointState joint_state_from_json(const jsonio::json& j,
                                        const std::string& ctx) {
  JointState q;
  q.arm = jsonio::get_fixed_vector<6>(j, "arm", ctx);
  q.base = jsonio::get_fixed_vector<3>(j, "base", ctx);
  return q;
}

}  // namespace detail

// Parses a scenario without touching the referenced model file.
inline ScenarioSpec parse_scenario_json(const jsonio::json& j,
                                        const std::string& ctx) {
  using namespace jsonio;
  check_schema(j, kScenarioSchema, ctx);

  ScenarioSpec spec;
  spec.name = get_string_or(j, "name", "", ctx);
  spec.model_path = get_string(j, "model", ctx);
  spec.controller = controller_from_name(
      get_string_or(j, "controller", "min_energy", ctx));

  if (j.contains("admittance")) {
    const json& adm = j["admittance"];
    spec.admittance.mass = get_fixed_vector_or<6>(
        adm, "mass", spec.admittance.mass, ctx + ".admittance");
    spec.admittance.damping = get_fixed_vector_or<6>(
        adm, "damping", spec.admittance.damping, ctx + ".admittance");
  }
  if (j.contains("weights")) {
    const json& w = j["weights"];
    spec.weights.task_weight =
        get_fixed_vector_or<6>(w, "task_weight_diag", Vector6d::Ones(),
                               ctx + ".weights")
            .asDiagonal();
    spec.weights.damping =
        get_fixed_vector_or<9>(w, "damping_diag",
                               Vector9d::Constant(1e-4), ctx + ".weights")
            .asDiagonal();
  }
  spec.secondary_gains =
      get_fixed_vector_or<9>(j, "secondary_gains", spec.secondary_gains, ctx);

  spec.dt = get_number_or(j, "dt", spec.dt, ctx);
  spec.duration_cap = get_number_or(j, "duration_cap", spec.duration_cap, ctx);
  spec.initial_state =
      detail::joint_state_from_json(require(j, "initial_state", ctx),
                                    ctx + ".initial_state");
  spec.preferred_state =
      detail::joint_state_from_json(require(j, "preferred_state", ctx),
                                    ctx + ".preferred_state");
  spec.derive_target_from_preferred =
      get_bool_or(j, "derive_target_from_preferred", true, ctx);
  if (!spec.derive_target_from_preferred)
    spec.target_position = get_fixed_vector<3>(j, "target_position", ctx);

  spec.stop_radius = get_number_or(j, "stop_radius", spec.stop_radius, ctx);
  spec.stop_hold = get_number_or(j, "stop_hold", spec.stop_hold, ctx);

  if (j.contains("wrench_profile")) {
    const json& profile = j["wrench_profile"];
    if (!profile.is_array())
      throw ConfigError(ctx + ".wrench_profile: expected an array");
    for (std::size_t i = 0; i < profile.size(); ++i) {
      const std::string sctx =
          ctx + ".wrench_profile[" + std::to_string(i) + "]";
      const json& sj = profile[i];
      WrenchSegment seg;
      seg.start = get_number(sj, "start", sctx);
      seg.duration = get_number(sj, "duration", sctx);
      seg.kind = detail::segment_kind_from_name(
          get_string_or(sj, "kind", "constant", sctx), sctx);
      seg.value =
          get_fixed_vector_or<6>(sj, "value", Vector6d::Zero(), sctx);
      seg.value_end =
          get_fixed_vector_or<6>(sj, "value_end", Vector6d::Zero(), sctx);
      seg.amplitude =
          get_fixed_vector_or<6>(sj, "amplitude", Vector6d::Zero(), sctx);
      seg.frequency = get_number_or(sj, "frequency", 0.0, sctx);
      seg.phase = get_number_or(sj, "phase", 0.0, sctx);
      spec.wrench_profile.segments.push_back(seg);
    }
  }
  spec.wrench_noise =
      get_fixed_vector_or<6>(j, "wrench_noise", Vector6d::Zero(), ctx);
  spec.seed = static_cast<std::uint64_t>(
      get_number_or(j, "seed", 0.0, ctx));

  if (j.contains("mode_schedule")) {
    const json& sched = j["mode_schedule"];
    if (!sched.is_array())
      throw ConfigError(ctx + ".mode_schedule: expected an array");
    for (std::size_t i = 0; i < sched.size(); ++i) {
      const std::string ectx = ctx + ".mode_schedule[" + std::to_string(i) + "]";
      ModeEvent e;
      e.time = get_number(sched[i], "time", ectx);
      const std::string mode = get_string(sched[i], "mode", ectx);
      if (mode == "manipulation") {
        e.mode = OperatingMode::Manipulation;
      } else if (mode == "locomotion") {
        e.mode = OperatingMode::Locomotion;
      } else {
        throw ConfigError(ectx + ": unknown mode '" + mode + "'");
      }
      spec.mode_schedule.push_back(e);
    }
  }
  spec.switch_latency =
      get_number_or(j, "switch_latency", spec.switch_latency, ctx);
  spec.enforce_joint_limits =
      get_bool_or(j, "enforce_joint_limits", false, ctx);
  return spec;
}

inline jsonio::json scenario_to_json(const ScenarioSpec& spec) {
  using jsonio::json;
  using jsonio::to_array;
  json j;
  j["schema"] = kScenarioSchema;
  j["name"] = spec.name;
  j["model"] = spec.model_path;
  j["controller"] = controller_name(spec.controller);
  j["admittance"] = {{"mass", to_array(spec.admittance.mass)},
                     {"damping", to_array(spec.admittance.damping)}};
  j["weights"] = {
      {"task_weight_diag",
       to_array(spec.weights.task_weight.diagonal())},
      {"damping_diag", to_array(spec.weights.damping.diagonal())}};
  j["secondary_gains"] = to_array(spec.secondary_gains);
  j["dt"] = spec.dt;
  j["duration_cap"] = spec.duration_cap;
  j["initial_state"] = {{"arm", to_array(spec.initial_state.arm)},
                        {"base", to_array(spec.initial_state.base)}};
  j["preferred_state"] = {{"arm", to_array(spec.preferred_state.arm)},
                          {"base", to_array(spec.preferred_state.base)}};
  j["derive_target_from_preferred"] = spec.derive_target_from_preferred;
  if (!spec.derive_target_from_preferred)
    j["target_position"] = to_array(spec.target_position);
  j["stop_radius"] = spec.stop_radius;
  j["stop_hold"] = spec.stop_hold;
  json profile = json::array();
  for (const auto& seg : spec.wrench_profile.segments) {
    json sj;
    sj["start"] = seg.start;
    sj["duration"] = seg.duration;
    sj["kind"] = detail::segment_kind_name(seg.kind);
    sj["value"] = to_array(seg.value);
    if (seg.kind == WrenchSegment::Kind::Ramp)
      sj["value_end"] = to_array(seg.value_end);
    if (seg.kind == WrenchSegment::Kind::Sinusoid) {
      sj["amplitude"] = to_array(seg.amplitude);
      sj["frequency"] = seg.frequency;
      sj["phase"] = seg.phase;
    }
    profile.push_back(sj);
  }
  j["wrench_profile"] = profile;
  j["wrench_noise"] = to_array(spec.wrench_noise);
  j["seed"] = spec.seed;
  if (!spec.mode_schedule.empty()) {
    json sched = json::array();
    for (const auto& e : spec.mode_schedule)
      sched.push_back(
          {{"time", e.time},
           {"mode", e.mode == OperatingMode::Locomotion ? "locomotion"
                                                        : "manipulation"}});
    j["mode_schedule"] = sched;
  }
  j["switch_latency"] = spec.switch_latency;
  j["enforce_joint_limits"] = spec.enforce_joint_limits;
  return j;
}

inline void save_scenario(const ScenarioSpec& spec,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path.string() + ": cannot open for writing");
  out << scenario_to_json(spec).dump(2) << "\n";
}

struct LoadedScenario {
  ScenarioSpec spec;
  MobileManipulatorModel model;
  std::filesystem::path model_file;
};

// Loads and fully validates a scenario, including the referenced model
// (resolved relative to the scenario file), and resolves the target position.
inline LoadedScenario load_scenario(const std::filesystem::path& path) {
  LoadedScenario out;
  out.spec = parse_scenario_json(jsonio::load_file(path), path.string());
  std::filesystem::path model_path(out.spec.model_path);
  if (model_path.is_relative()) model_path = path.parent_path() / model_path;
  out.model_file = model_path;
  out.model = load_model(model_path);
  try {
    out.spec.validate(out.model);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return out;
}

}  // namespace wbidk
