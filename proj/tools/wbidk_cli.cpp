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

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "wbidk/manifest_io.hpp"
#include "wbidk/metrics.hpp"
#include "wbidk/model_io.hpp"
#include "wbidk/runner.hpp"
#include "wbidk/scenario_io.hpp"
#include "wbidk/simulator.hpp"
#include "wbidk/trajectory_csv.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitInvalid = 2;

std::optional<wbidk::ControllerKind> parse_controller(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return wbidk::controller_from_name(name);
}

int cmd_run(const std::string& manifest_path, const std::string& out_dir,
            const std::string& controller, double dt, int jobs) {
  const wbidk::RunManifest manifest = wbidk::load_manifest(manifest_path);
  wbidk::ExecuteOptions options;
  options.out_dir = out_dir;
  options.jobs = jobs;
  options.controller_override = parse_controller(controller);
  if (dt > 0.0) options.dt_override = dt;

  const wbidk::ReportBundle bundle = wbidk::execute(manifest, options);
  std::cout << "bundle: " << bundle.dir.string() << "\n"
            << "runs: " << bundle.rows.size() << " succeeded, "
            << bundle.failures.size() << " failed\n";
  for (const auto& f : bundle.failures)
    std::cerr << "failed: " << f.run_id << ": " << f.error << "\n";
  if (!bundle.rows.empty()) {
    wbidk::ReferenceMedians reference;
    const auto ref = bundle.dir / "reference_medians.csv";
    if (std::filesystem::exists(ref))
      reference = wbidk::load_reference_medians(ref);
    std::cout << "\n" << wbidk::comparison_table(bundle.rows, reference);
  }
  return bundle.all_ok ? kExitOk : kExitPartial;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 const std::string& controller, double dt) {
  wbidk::LoadedScenario loaded = wbidk::load_scenario(scenario_path);
  wbidk::ScenarioSpec& spec = loaded.spec;
  if (const auto kind = parse_controller(controller)) spec.controller = *kind;
  if (dt > 0.0) spec.dt = dt;
  spec.validate(loaded.model);

  std::filesystem::create_directories(out_dir);
  const std::string name =
      wbidk::detail::scenario_stem(scenario_path) + "_" +
      wbidk::controller_name(spec.controller);
  const auto traj_path =
      std::filesystem::path(out_dir) / (name + ".traj.csv");

  try {
    const wbidk::TrajectoryLog log = wbidk::run_scenario(loaded.model, spec);
    wbidk::write_trajectory_csv(log, traj_path);
    const wbidk::RunMetrics m =
        wbidk::compute_metrics(loaded.model, log, spec.target_position);
    std::cout << "trajectory: " << traj_path.string() << "\n"
              << "steps: " << log.steps.size() << "\n"
              << "E_bar [J]:   " << wbidk::fmt9(m.avg_energy) << "\n"
              << "F_bar [N]:   " << wbidk::fmt9(m.avg_force) << "\n"
              << "v_bar [m/s]: " << wbidk::fmt9(m.avg_speed) << "\n"
              << "x_f [m]:     " << wbidk::fmt9(m.final_displacement) << "\n"
              << "T_f [s]:     " << wbidk::fmt9(m.exec_time) << "\n";
  } catch (const wbidk::SimulationError& e) {
    std::cerr << "simulation aborted: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitOk;
}

int cmd_report(const std::string& bundle_dir) {
  wbidk::regenerate_reports(bundle_dir);
  std::ifstream cmp(std::filesystem::path(bundle_dir) / "comparison.txt");
  std::cout << cmp.rdbuf();
  return kExitOk;
}

int cmd_validate(const std::string& file) {
  const auto j = wbidk::jsonio::load_file(file);
  const std::string schema =
      j.contains("schema") && j["schema"].is_string()
          ? j["schema"].get<std::string>()
          : "";
  if (schema == wbidk::kModelSchema) {
    wbidk::load_model(file);
    std::cout << "OK: model " << file << "\n";
  } else if (schema == wbidk::kScenarioSchema) {
    wbidk::load_scenario(file);
    std::cout << "OK: scenario " << file << "\n";
  } else if (schema == wbidk::kManifestSchema) {
    wbidk::load_manifest(file);
    std::cout << "OK: manifest " << file << "\n";
  } else {
    throw wbidk::ConfigError(file + ": unknown or missing schema '" + schema +
                             "'");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whole-body inverse-differential-kinematics control simulator"};
  app.require_subcommand(1);

  std::string manifest_path, scenario_path, bundle_dir, file_path;
  std::string out_dir = "out";
  std::string controller;
  double dt = 0.0;
  int jobs = 1;

  auto* run = app.add_subcommand(
      "run", "Execute all runs of a manifest and write a report bundle");
  run->add_option("manifest", manifest_path, "Manifest file")->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--controller", controller,
                  "Override the controller for every run");
  run->add_option("--dt", dt, "Override the control period [s]");
  run->add_option("--jobs", jobs, "Parallel worker count");

  auto* simulate =
      app.add_subcommand("simulate", "Run a single scenario to a CSV log");
  simulate->add_option("scenario", scenario_path, "Scenario file")->required();
  simulate->add_option("--out", out_dir, "Output directory");
  simulate->add_option("--controller", controller, "Override the controller");
  simulate->add_option("--dt", dt, "Override the control period [s]");

  auto* report = app.add_subcommand(
      "report", "Regenerate aggregate tables and plot data from a bundle");
  report->add_option("bundle", bundle_dir, "Bundle directory")->required();

  auto* validate =
      app.add_subcommand("validate", "Validate a model/scenario/manifest file");
  validate->add_option("file", file_path, "File to validate")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(manifest_path, out_dir, controller, dt, jobs);
    if (simulate->parsed())
      return cmd_simulate(scenario_path, out_dir, controller, dt);
    if (report->parsed()) return cmd_report(bundle_dir);
    if (validate->parsed()) return cmd_validate(file_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
