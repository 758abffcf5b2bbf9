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

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wbidk/manifest_io.hpp"
#include "wbidk/metrics.hpp"
#include "wbidk/scenario_io.hpp"
#include "wbidk/simulator.hpp"
#include "wbidk/trajectory_csv.hpp"

namespace wbidk {

struct ExecuteOptions {
  std::filesystem::path out_dir = "out";
  int jobs = 1;
  std::optional<ControllerKind> controller_override;  // wins over manifest
  std::optional<double> dt_override;
};

struct MetricsRow {
  std::string run_id;
  std::string controller;
  RunMetrics metrics;
};

struct FailedRun {
  std::string run_id;
  std::string error;
};

// Output directory contents after a successful execute():
//   <run_id>.traj.csv      one per successful run
//   metrics.csv            one row per successful run
//   aggregate.csv          boxplot statistics per controller and metric
//   comparison.txt         median table with reference columns
//   plot_speed_<c>.csv     (t, ‖v‖) of the median-energy run per controller
//   plot_energy_<c>.csv    (t, E_K) of the same run
//   reference_medians.csv  copy of the reference table, when configured
//   failed_runs.csv        only when some runs failed
//   run_info.txt           timestamped sidecar (only non-deterministic file)
struct ReportBundle {
  std::filesystem::path dir;
  std::vector<MetricsRow> rows;
  std::vector<FailedRun> failures;
  bool all_ok = true;
};

// Reference medians per controller, shown next to computed medians in
// comparison tables. Display-only context; never used as a test oracle.
using ReferenceMedians = std::map<std::string, std::array<double, 5>>;

inline constexpr const char* kMetricsHeader =
    "run_id,controller,E_bar,F_bar,v_bar,x_f,T_f";

inline void write_metrics_csv(const std::vector<MetricsRow>& rows,
                              const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error(path.string() + ": cannot open for writing");
  out << kMetricsHeader << "\n";
  for (const auto& r : rows) {
    out << r.run_id << ',' << r.controller << ',' << fmt9(r.metrics.avg_energy)
        << ',' << fmt9(r.metrics.avg_force) << ',' << fmt9(r.metrics.avg_speed)
        << ',' << fmt9(r.metrics.final_displacement) << ','
        << fmt9(r.metrics.exec_time) << "\n";
  }
}

inline std::vector<MetricsRow> read_metrics_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open file");
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader)
    throw std::runtime_error(path.string() + ": bad metrics header");
  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 7)
      throw std::runtime_error(path.string() + ": expected 7 fields per row");
    MetricsRow r;
    r.run_id = f[0];
    r.controller = f[1];
    r.metrics.avg_energy = detail::parse_double(f[2]);
    r.metrics.avg_force = detail::parse_double(f[3]);
    r.metrics.avg_speed = detail::parse_double(f[4]);
    r.metrics.final_displacement = detail::parse_double(f[5]);
    r.metrics.exec_time = detail::parse_double(f[6]);
    rows.push_back(r);
  }
  return rows;
}

inline ReferenceMedians load_reference_medians(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open file");
  std::string line;
  if (!std::getline(in, line) ||
      line != "controller,E_bar,F_bar,v_bar,x_f,T_f")
    throw std::runtime_error(path.string() + ": bad reference header");
  ReferenceMedians ref;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 6)
      throw std::runtime_error(path.string() + ": expected 6 fields per row");
    ref[f[0]] = {detail::parse_double(f[1]), detail::parse_double(f[2]),
                 detail::parse_double(f[3]), detail::parse_double(f[4]),
                 detail::parse_double(f[5])};
  }
  return ref;
}

namespace detail {

inline std::string scenario_stem(const std::filesystem::path& path) {
  std::string stem = path.stem().string();  // strips .json
  const std::string suffix = ".scenario";
  if (stem.size() > suffix.size() &&
      stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0)
    stem.resize(stem.size() - suffix.size());
  return stem;
}

inline std::string make_run_id(const PlannedRun& plan,
                               ControllerKind controller) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", plan.index);
  return std::string(buf) + "_" + scenario_stem(plan.scenario_path) + "_" +
         controller_name(controller) + "_rep" + std::to_string(plan.rep);
}

// Controllers appear in reports in this canonical order.
inline std::vector<std::string> controller_order(
    const std::vector<MetricsRow>& rows) {
  std::vector<std::string> order;
  for (const char* name : {"locomotion", "switch", "min_energy"}) {
    for (const auto& r : rows) {
      if (r.controller == name) {
        order.push_back(name);
        break;
      }
    }
  }
  return order;
}

inline std::vector<RunMetrics> metrics_of(const std::vector<MetricsRow>& rows,
                                          const std::string& controller) {
  std::vector<RunMetrics> out;
  for (const auto& r : rows)
    if (r.controller == controller) out.push_back(r.metrics);
  return out;
}

inline std::string fmt_cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%9.4g", v);
  return buf;
}

inline void append_outliers(std::ostream& out, const BoxplotStats& s) {
  for (std::size_t i = 0; i < s.outliers.size(); ++i)
    out << (i ? ";" : "") << fmt9(s.outliers[i]);
}

}  // namespace detail

inline void write_aggregate_csv(const std::vector<MetricsRow>& rows,
                                const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error(path.string() + ": cannot open for writing");
  out << "controller,metric,count,median,q1,q3,min,max,whisker_low,"
         "whisker_high,outliers\n";
  for (const auto& controller : detail::controller_order(rows)) {
    const auto metrics = detail::metrics_of(rows, controller);
    const AggregateStats agg(aggregate(metrics));
    const std::pair<const char*, const BoxplotStats*> columns[] = {
        {"E_bar", &agg.energy},   {"F_bar", &agg.force},
        {"v_bar", &agg.speed},    {"x_f", &agg.displacement},
        {"T_f", &agg.time}};
    for (const auto& [name, s] : columns) {
      out << controller << ',' << name << ',' << agg.count << ','
          << fmt9(s->median) << ',' << fmt9(s->q1) << ',' << fmt9(s->q3) << ','
          << fmt9(s->min) << ',' << fmt9(s->max) << ',' << fmt9(s->whisker_low)
          << ',' << fmt9(s->whisker_high) << ',';
      detail::append_outliers(out, *s);
      out << "\n";
    }
  }
}

// Plain-text median table: one row per controller, the five metric medians,
// each followed by the reference median when available. Controllers with no
// successful runs are marked absent.
inline std::string comparison_table(const std::vector<MetricsRow>& rows,
                                    const ReferenceMedians& reference) {
  std::ostringstream out;
  out << "controller  runs   E_bar[J]  ref     F_bar[N]  ref     v_bar[m/s]  "
         "ref     x_f[m]   ref     T_f[s]   ref\n";
  for (const char* controller : {"locomotion", "switch", "min_energy"}) {
    const auto metrics = detail::metrics_of(rows, controller);
    if (metrics.empty()) {
      char head[48];
      std::snprintf(head, sizeof head, "%-11s    0 (absent)\n", controller);
      out << head;
      continue;
    }
    const AggregateStats agg(aggregate(metrics));
    const double medians[5] = {agg.energy.median, agg.force.median,
                               agg.speed.median, agg.displacement.median,
                               agg.time.median};
    char head[32];
    std::snprintf(head, sizeof head, "%-11s %4zu", controller, agg.count);
    out << head;
    const auto ref_it = reference.find(controller);
    for (int i = 0; i < 5; ++i) {
      out << ' ' << detail::fmt_cell(medians[i]);
      if (ref_it != reference.end()) {
        out << ' ' << detail::fmt_cell(ref_it->second[i]);
      } else {
        out << "     -   ";
      }
    }
    out << "\n";
  }
  if (!reference.empty())
    out << "\nref columns: median values from a prior hardware user study "
           "(see reference_medians.csv); shown for context only.\n";
  return out.str();
}

// Writes aggregate.csv, comparison.txt and per-controller plot data, reading
// each controller's median-energy trajectory back from the bundle directory.
inline void write_reports(const std::filesystem::path& dir,
                          const std::vector<MetricsRow>& rows,
                          const ReferenceMedians& reference) {
  if (rows.empty()) return;
  write_aggregate_csv(rows, dir / "aggregate.csv");

  std::ofstream cmp(dir / "comparison.txt");
  if (!cmp) throw std::runtime_error("cannot write comparison.txt");
  cmp << comparison_table(rows, reference);

  for (const auto& controller : detail::controller_order(rows)) {
    const auto metrics = detail::metrics_of(rows, controller);
    const double median_energy = aggregate(metrics).energy.median;
    // Representative run: average energy closest to the median (first wins).
    const MetricsRow* pick = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
      if (r.controller != controller) continue;
      const double d = std::abs(r.metrics.avg_energy - median_energy);
      if (d < best) {
        best = d;
        pick = &r;
      }
    }
    const TrajectoryLog log =
        read_trajectory_csv(dir / (pick->run_id + ".traj.csv"));
    std::ofstream speed(dir / ("plot_speed_" + controller + ".csv"));
    std::ofstream energy(dir / ("plot_energy_" + controller + ".csv"));
    if (!speed || !energy) throw std::runtime_error("cannot write plot data");
    speed << "t,v_norm\n";
    energy << "t,E_K\n";
    for (const auto& s : log.steps) {
      speed << fmt9(s.t) << ',' << fmt9(s.v.norm()) << "\n";
      energy << fmt9(s.t) << ',' << fmt9(s.energy) << "\n";
    }
  }
}

// Runs every planned scenario×controller×repetition, writes the bundle.
// Individual run failures are isolated: they appear in failed_runs.csv and
// clear all_ok, but never corrupt other runs' outputs.
inline ReportBundle execute(const RunManifest& manifest,
                            const ExecuteOptions& options) {
  const auto plan = plan_runs(manifest);
  std::filesystem::create_directories(options.out_dir);

  struct Slot {
    bool ok = false;
    MetricsRow row;
    std::string error;
  };
  std::vector<Slot> slots(plan.size());

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor.fetch_add(1); i < plan.size();
         i = cursor.fetch_add(1)) {
      Slot& slot = slots[i];
      const PlannedRun& meta = plan[i];
      try {
        LoadedScenario loaded = load_scenario(meta.scenario_path);
        ScenarioSpec& spec = loaded.spec;
        if (options.controller_override) {
          spec.controller = *options.controller_override;
        } else if (meta.controller) {
          spec.controller = *meta.controller;
        }
        if (options.dt_override) spec.dt = *options.dt_override;
        spec.seed = meta.seed;
        spec.validate(loaded.model);

        const std::string run_id = detail::make_run_id(meta, spec.controller);
        const TrajectoryLog log = run_scenario(loaded.model, spec);
        write_trajectory_csv(log, options.out_dir / (run_id + ".traj.csv"));
        slot.row = {run_id, controller_name(spec.controller),
                    compute_metrics(loaded.model, log, spec.target_position)};
        slot.ok = true;
      } catch (const std::exception& e) {
        slot.error = e.what();
        slot.row.run_id = detail::make_run_id(
            meta, meta.controller.value_or(ControllerKind::MinimumEnergy));
      }
    }
  };

  const int jobs = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ReportBundle bundle;
  bundle.dir = options.out_dir;
  for (const auto& slot : slots) {
    if (slot.ok) {
      bundle.rows.push_back(slot.row);
    } else {
      bundle.failures.push_back({slot.row.run_id, slot.error});
      bundle.all_ok = false;
    }
  }

  write_metrics_csv(bundle.rows, options.out_dir / "metrics.csv");
  if (!bundle.failures.empty()) {
    std::ofstream out(options.out_dir / "failed_runs.csv");
    out << "run_id,error\n";
    for (const auto& f : bundle.failures) {
      std::string msg = f.error;
      for (auto& c : msg)
        if (c == ',' || c == '\n') c = ';';
      out << f.run_id << ',' << msg << "\n";
    }
  }

  ReferenceMedians reference;
  if (manifest.reference_medians) {
    reference = load_reference_medians(*manifest.reference_medians);
    std::filesystem::copy_file(
        *manifest.reference_medians,
        options.out_dir / "reference_medians.csv",
        std::filesystem::copy_options::overwrite_existing);
  }
  write_reports(options.out_dir, bundle.rows, reference);

  std::ofstream info(options.out_dir / "run_info.txt");
  const auto now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  info << "manifest: " << manifest.name << "\n"
       << "generated: " << std::ctime(&now)
       << "runs: " << plan.size() << " planned, " << bundle.rows.size()
       << " succeeded, " << bundle.failures.size() << " failed\n";
  return bundle;
}

// Rebuilds aggregate.csv, comparison.txt and the plot data files from an
// existing bundle directory (metrics.csv plus the trajectory files).
inline void regenerate_reports(const std::filesystem::path& dir) {
  const auto rows = read_metrics_csv(dir / "metrics.csv");
  ReferenceMedians reference;
  const auto ref_path = dir / "reference_medians.csv";
  if (std::filesystem::exists(ref_path))
    reference = load_reference_medians(ref_path);
  write_reports(dir, rows, reference);
}

}  // namespace wbidk
