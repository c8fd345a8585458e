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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "zoneloc/distributions.hpp"
#include "zoneloc/fingerprints.hpp"
#include "zoneloc/zoneset.hpp"

namespace zoneloc {

// The model carries 2^N_Z - 1 cells per AP and fusion enumerates focal-set
// pairs, so frames are capped hard; beyond kWarnZones fitting still works
// but warns about the table blowup.
inline constexpr int kMaxZones = 16;
inline constexpr int kWarnZones = 12;
inline constexpr double kDefaultDensityFloor = 1e-300;

struct FitConfig {
  double alpha = 0.05;
  std::vector<DistributionFamily> families = {DistributionFamily::kNormal,
                                              DistributionFamily::kLogistic};
  int min_samples = 10;
  double density_floor = kDefaultDensityFloor;

  // Throws ValidationError; alpha must be one of the tabulated levels.
  void validate() const;
};

// Best fit for one (AP, zone set) sample pool. A degenerate entry (too few
// samples, or no spread in any family) carries no distribution and always
// evaluates to density 0.
struct FittedDistribution {
  DistributionFamily family = DistributionFamily::kNormal;
  std::vector<double> params;
  double ks_stat = 0.0;
  bool accepted = false;
  bool degenerate = false;
  int n = 0;
};

// The trained artifact: one FittedDistribution per (AP, non-empty zone set).
// Immutable after fitting/loading; safe for concurrent readers.
struct ObservationModel {
  std::vector<std::string> zones;
  std::vector<std::string> aps;
  // Indexed [ap * num_sets() + (set bits - 1)].
  std::vector<FittedDistribution> cells;

  int n_zones() const { return static_cast<int>(zones.size()); }
  int n_aps() const { return static_cast<int>(aps.size()); }
  zone_bits num_sets() const { return num_nonempty_subsets(n_zones()); }

  const FittedDistribution& cell(int ap, zone_bits bits) const;
  FittedDistribution& cell(int ap, zone_bits bits);

  // Structure-of-arrays evaluation plan: non-degenerate cells grouped by
  // family per AP, so density evaluation runs through the batch kernels.
  struct EvalGroup {
    DistributionFamily family;
    std::vector<zone_bits> bits;
    std::vector<double> p0, p1, p2;
  };
  struct ApPlan {
    std::vector<EvalGroup> groups;
  };

  const ApPlan& plan(int ap) const;
  // Must be called after cells change; fitting and loading do it themselves.
  void rebuild_plans();

 private:
  std::vector<ApPlan> plans_;
};

// Fits every configured family, tests each with the K-S statistic at
// config.alpha, and returns the accepted fit with the smallest statistic
// (ties: config order). When nothing is accepted the smallest-statistic fit
// is returned with accepted = false, so a density is always available.
FittedDistribution select_distribution(std::span<const double> samples,
                                       const FitConfig& config);

// select_distribution over pool_samples for every AP and non-empty zone
// set; pools below config.min_samples become degenerate cells.
ObservationModel fit_observation_model(const FingerprintDatabase& db,
                                       const FitConfig& config);

// Canonical JSON form; serialization is byte-deterministic and load(save(m))
// reproduces the file bit for bit.
std::string model_to_json(const ObservationModel& model);
ObservationModel model_from_json(std::string_view text);

void save_model(const ObservationModel& model,
                const std::filesystem::path& path);
ObservationModel load_model(const std::filesystem::path& path);

}  // namespace zoneloc
