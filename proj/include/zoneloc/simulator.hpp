/*
 * zoneloc - zone-level WiFi RSS localization with belief functions
 * Copyright 2026 the zoneloc authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "zoneloc/belief.hpp"
#include "zoneloc/fingerprints.hpp"
#include "zoneloc/fit.hpp"

namespace zoneloc {

// Ground truth for synthetic data: one Normal RSS distribution per
// (zone, AP) pair. Zones are named Z1..Zn and APs AP1..APm.
struct ScenarioCell {
  int zone = 0;
  int ap = 0;
  double mean_dbm = 0.0;
  double stdev_dbm = 0.0;
};

struct Scenario {
  int n_zones = 0;
  int n_aps = 0;
  std::vector<ScenarioCell> cells;
  int samples_per_cell = 0;
  std::uint64_t seed = 0;

  // Throws ValidationError; requires every (zone, AP) pair exactly once,
  // positive stdevs, samples_per_cell >= 1 and 2..16 zones.
  void validate() const;
  const ScenarioCell& truth(int zone, int ap) const;

  static std::string zone_id(int zone);
  static std::string ap_id(int ap);
};

Scenario scenario_from_json(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// samples_per_cell Normal draws per (zone, AP); deterministic in the
// scenario seed (each cell draws from its own derived stream).
FingerprintDatabase generate_db(const Scenario& scenario);

// One draw per AP from the true distribution of `true_zone`.
Observation generate_observation(const Scenario& scenario, int true_zone,
                                 std::uint64_t seed);

struct AccuracyReport {
  int trials = 0;
  bool accuracy_defined = false;  // false when trials == 0
  double accuracy = 0.0;
  std::vector<std::vector<int>> confusion;  // [true zone][decided zone]
  double mean_true_zone_confidence = 0.0;
};

// Draws `trials` observations with uniformly random true zones and runs
// localize on each. Trial t uses the derived seed mix_seed(seed, 1 + t), so
// reports are reproducible bit for bit. The model must use the scenario's
// zone/AP identifiers.
AccuracyReport evaluate(const ObservationModel& model,
                        const Scenario& scenario, int trials,
                        std::uint64_t seed);

std::string report_to_json(const AccuracyReport& report);

}  // namespace zoneloc
