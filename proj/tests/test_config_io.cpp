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
#include <fstream>

#include "test_util.hpp"
#include "wbidk/manifest_io.hpp"
#include "wbidk/model_io.hpp"
#include "wbidk/scenario_io.hpp"

using namespace wbidk;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("canned model loads and validates") {
  const MobileManipulatorModel m =
      load_model(testutil::data_dir() / "ur10e_kairos.model.json");
  CHECK(m.name == "ur10e_kairos");
  CHECK(m.base.mass == 115.0);
  CHECK(m.base.yaw_inertia == 10.0);
  REQUIRE(m.arm.joint_limits.has_value());
  CHECK((*m.arm.joint_limits)[1][1] == 0.0);
  CHECK(m.tool_xyz.z() == 0.11655);
}

TEST_CASE("model parse errors name the file, line and field") {
  const auto dir = testutil::work_dir("model_io");

  SECTION("syntax error reports the line") {
    const auto path = dir / "broken.json";
    std::ofstream(path) << "{\n  \"schema\": \"wbidk-model/1\",\n  oops\n}\n";
    try {
      load_model(path);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK_THAT(e.what(), ContainsSubstring("broken.json:3"));
    }
  }

  SECTION("invariant violation names the field") {
    auto j = jsonio::load_file(testutil::data_dir() / "ur10e_kairos.model.json");
    j["arm"]["joints"][2]["mass"] = -1.0;
    try {
      parse_model_json(j, "patched");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK_THAT(e.what(), ContainsSubstring("arm.joints[2].mass"));
    }
  }

  SECTION("missing field is reported") {
    auto j = jsonio::load_file(testutil::data_dir() / "ur10e_kairos.model.json");
    j["base"].erase("mass");
    try {
      parse_model_json(j, "patched");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK_THAT(e.what(), ContainsSubstring("missing field 'mass'"));
    }
  }

  SECTION("wrong schema is rejected") {
    auto j = jsonio::load_file(testutil::data_dir() / "ur10e_kairos.model.json");
    j["schema"] = "wbidk-model/99";
    CHECK_THROWS_AS(parse_model_json(j, "patched"), ConfigError);
  }
}

TEST_CASE("scenario round-trips through save and load") {
  const auto dir = testutil::work_dir("scenario_io");

  SECTION("the canned scenario") {
    const auto scenario_path =
        testutil::data_dir() / "peg_in_hole.scenario.json";
    const ScenarioSpec original =
        parse_scenario_json(jsonio::load_file(scenario_path),
                            scenario_path.string());
    save_scenario(original, dir / "copy.json");
    const ScenarioSpec reloaded = parse_scenario_json(
        jsonio::load_file(dir / "copy.json"), "copy.json");
    CHECK(original == reloaded);
  }

  SECTION("a scenario exercising every field") {
    ScenarioSpec spec;
    spec.name = "full";
    spec.model_path = "m.json";
    spec.controller = ControllerKind::Switch;
    spec.admittance.mass = Vector6d::Constant(2.5);
    spec.weights.damping = (1e-3 * Vector9d::Ones()).asDiagonal();
    spec.secondary_gains << 1, 2, 3, 4, 5, 6, 0.5, 0.5, 0.25;
    spec.dt = 0.004;
    spec.duration_cap = 12.5;
    spec.initial_state.arm << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6;
    spec.initial_state.base << -1, 2, 0.3;
    spec.preferred_state = spec.initial_state;
    spec.derive_target_from_preferred = false;
    spec.target_position << 1.5, -0.5, 0.8;
    spec.stop_radius = 0.02;
    spec.stop_hold = 0.25;
    WrenchSegment ramp;
    ramp.start = 0.5;
    ramp.duration = 1.5;
    ramp.kind = WrenchSegment::Kind::Ramp;
    ramp.value << 1, 2, 3, 0, 0, 0;
    ramp.value_end << 4, 5, 6, 0, 0, 0;
    WrenchSegment sine;
    sine.start = 3.0;
    sine.duration = 2.0;
    sine.kind = WrenchSegment::Kind::Sinusoid;
    sine.amplitude << 0, 7, 0, 0, 0, 0;
    sine.frequency = 0.75;
    sine.phase = 0.4;
    spec.wrench_profile.segments = {ramp, sine};
    spec.wrench_noise << 0.5, 0.5, 0, 0, 0, 0;
    spec.seed = 424242;
    spec.mode_schedule = {{0.0, OperatingMode::Manipulation},
                          {2.5, OperatingMode::Locomotion}};
    spec.switch_latency = 0.75;
    spec.enforce_joint_limits = true;

    save_scenario(spec, dir / "full.json");
    const ScenarioSpec reloaded =
        parse_scenario_json(jsonio::load_file(dir / "full.json"), "full.json");
    CHECK(spec == reloaded);
  }
}

TEST_CASE("scenario loading resolves the model and the target") {
  const LoadedScenario loaded =
      load_scenario(testutil::data_dir() / "peg_in_hole.scenario.json");
  CHECK(loaded.spec.controller == ControllerKind::MinimumEnergy);
  CHECK(loaded.spec.dt == 0.002);
  // Target = FK(preferred): the preferred base pose is 4 m down the x axis.
  const Eigen::Vector3d home =
      forward_kinematics(loaded.model, loaded.spec.initial_state).position;
  CHECK((loaded.spec.target_position - home - Eigen::Vector3d(4, 0, 0))
            .norm() < 1e-12);
}

TEST_CASE("scenario referencing a missing model names the path") {
  const auto dir = testutil::work_dir("scenario_missing");
  auto j = jsonio::load_file(testutil::data_dir() / "peg_in_hole.scenario.json");
  j["model"] = "no_such_model.json";
  std::ofstream(dir / "bad.scenario.json") << j.dump(2);
  try {
    load_scenario(dir / "bad.scenario.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK_THAT(e.what(), ContainsSubstring("no_such_model.json"));
  }
}

TEST_CASE("scenario cross-field validation") {
  LoadedScenario loaded =
      load_scenario(testutil::data_dir() / "peg_in_hole.scenario.json");

  SECTION("non-positive dt") {
    loaded.spec.dt = 0.0;
    CHECK_THROWS_AS(loaded.spec.validate(loaded.model), std::invalid_argument);
  }
  SECTION("switch controller requires a schedule starting at zero") {
    loaded.spec.controller = ControllerKind::Switch;
    loaded.spec.mode_schedule.clear();
    CHECK_THROWS_AS(loaded.spec.validate(loaded.model), std::invalid_argument);
    loaded.spec.mode_schedule = {{1.0, OperatingMode::Locomotion}};
    CHECK_THROWS_AS(loaded.spec.validate(loaded.model), std::invalid_argument);
  }
  SECTION("overlapping wrench segments") {
    WrenchSegment s;
    s.start = 0.0;
    s.duration = 100.0;
    loaded.spec.wrench_profile.segments.insert(
        loaded.spec.wrench_profile.segments.begin(), s);
    CHECK_THROWS_AS(loaded.spec.validate(loaded.model), std::invalid_argument);
  }
}

TEST_CASE("manifest loads, validates and enumerates runs") {
  const RunManifest manifest =
      load_manifest(testutil::data_dir() / "comparison.manifest.json");
  REQUIRE(manifest.entries.size() == 3);
  CHECK(manifest.reference_medians.has_value());

  const auto runs = plan_runs(manifest);
  REQUIRE(runs.size() == 9);
  for (std::size_t i = 0; i < runs.size(); ++i) CHECK(runs[i].index == i);
  CHECK(runs[0].controller == ControllerKind::Locomotion);
  CHECK(runs[3].controller == ControllerKind::Switch);
  CHECK(runs[8].controller == ControllerKind::MinimumEnergy);
  CHECK(runs[4].seed == 203);  // entry seed 202, repetition 1
}

TEST_CASE("27 repetitions over three controllers plan 81 runs") {
  RunManifest manifest;
  for (const auto kind :
       {ControllerKind::Locomotion, ControllerKind::Switch,
        ControllerKind::MinimumEnergy}) {
    ManifestEntry e;
    e.scenario_path = "s.json";
    e.controller = kind;
    e.repetitions = 27;
    e.seed = 1000;
    manifest.entries.push_back(e);
  }
  const auto runs = plan_runs(manifest);
  REQUIRE(runs.size() == 81);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    CHECK(runs[i].index == i);
    CHECK(runs[i].rep == static_cast<int>(i % 27));
    CHECK(runs[i].seed == 1000 + i % 27);
  }
}

TEST_CASE("manifest rejects bad entries") {
  const auto dir = testutil::work_dir("manifest_io");

  SECTION("missing scenario file") {
    jsonio::json j;
    j["schema"] = kManifestSchema;
    j["entries"] = {{{"scenario", "ghost.scenario.json"}}};
    const auto path = dir / "ghost.manifest.json";
    std::ofstream(path) << j.dump(2);
    try {
      load_manifest(path);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK_THAT(e.what(), ContainsSubstring("ghost.scenario.json"));
    }
  }

  SECTION("zero repetitions") {
    jsonio::json j;
    j["schema"] = kManifestSchema;
    j["entries"] = {{{"scenario", (testutil::data_dir() /
                                   "peg_in_hole.scenario.json").string()},
                     {"repetitions", 0}}};
    const auto path = dir / "reps.manifest.json";
    std::ofstream(path) << j.dump(2);
    CHECK_THROWS_AS(load_manifest(path), ConfigError);
  }
}
