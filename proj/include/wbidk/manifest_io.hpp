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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wbidk/json_util.hpp"
#include "wbidk/scenario_io.hpp"

namespace wbidk {

inline constexpr const char* kManifestSchema = "wbidk-manifest/1";

struct ManifestEntry {
  std::filesystem::path scenario_path;  // resolved
  std::optional<ControllerKind> controller;  // overrides the scenario's
  int repetitions = 1;
  std::uint64_t seed = 0;
};

struct RunManifest {
  std::string name;
  std::vector<ManifestEntry> entries;
  std::optional<std::filesystem::path> reference_medians;  // resolved
};

// One scheduled simulation. Repetition seeds are entry.seed + rep so noisy
// profiles draw distinct streams per repetition.
struct PlannedRun {
  std::size_t index = 0;
  std::filesystem::path scenario_path;
  std::optional<ControllerKind> controller;
  int rep = 0;
  std::uint64_t seed = 0;
};

// Deterministic enumeration: manifest entry order, then repetition index.
inline std::vector<PlannedRun> plan_runs(const RunManifest& manifest) {
  std::vector<PlannedRun> runs;
  std::size_t index = 0;
  for (const auto& entry : manifest.entries) {
    for (int rep = 0; rep < entry.repetitions; ++rep) {
      runs.push_back(PlannedRun{index++, entry.scenario_path, entry.controller,
                                rep, entry.seed + static_cast<std::uint64_t>(rep)});
    }
  }
  return runs;
}

// Loads and fully validates a manifest: every referenced scenario (and its
// model) must parse and validate.
inline RunManifest load_manifest(const std::filesystem::path& path) {
  using namespace jsonio;
  const json j = load_file(path);
  const std::string ctx = path.string();
  check_schema(j, kManifestSchema, ctx);

  RunManifest manifest;
  manifest.name = get_string_or(j, "name", "", ctx);

  const json& entries = require(j, "entries", ctx);
  if (!entries.is_array() || entries.empty())
    throw ConfigError(ctx + ".entries: expected a non-empty array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string ectx = ctx + ".entries[" + std::to_string(i) + "]";
    const json& ej = entries[i];
    ManifestEntry entry;
    std::filesystem::path scenario(get_string(ej, "scenario", ectx));
    if (scenario.is_relative()) scenario = path.parent_path() / scenario;
    entry.scenario_path = scenario;
    if (ej.contains("controller") && !ej["controller"].is_null()) {
      try {
        entry.controller =
            controller_from_name(get_string(ej, "controller", ectx));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(ectx + ".controller: " + e.what());
      }
    }
    entry.repetitions =
        static_cast<int>(get_number_or(ej, "repetitions", 1.0, ectx));
    if (entry.repetitions < 1)
      throw ConfigError(ectx + ".repetitions: must be >= 1");
    entry.seed =
        static_cast<std::uint64_t>(get_number_or(ej, "seed", 0.0, ectx));
    manifest.entries.push_back(entry);

    load_scenario(entry.scenario_path);  // validates scenario + model
  }

  if (j.contains("reference_medians")) {
    std::filesystem::path ref(get_string(j, "reference_medians", ctx));
    if (ref.is_relative()) ref = path.parent_path() / ref;
    if (!std::filesystem::exists(ref))
      throw ConfigError(ctx + ".reference_medians: no such file: " +
                        ref.string());
    manifest.reference_medians = ref;
  }
  return manifest;
}

}  // namespace wbidk
