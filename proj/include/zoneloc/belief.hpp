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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zoneloc/fit.hpp"
#include "zoneloc/zoneset.hpp"

namespace zoneloc {

// Basic belief assignment over subsets of the zone frame. Focal elements
// are stored sparsely, sorted by bitmask; absent sets carry mass 0 and
// stored masses are strictly positive. A valid BBA sums to 1; only the raw
// output of the conjunctive rule may place mass on the empty set.
struct MassFunction {
  int n_zones = 0;
  std::vector<std::pair<zone_bits, double>> items;

  double mass(zone_bits bits) const;
  double empty_mass() const { return mass(0); }
  double total() const;
};

// Total ignorance: all mass on the full frame. Neutral element of the
// conjunctive rule. Requires n_zones >= 2.
MassFunction vacuous(int n_zones);

// Normalizes per-set weights into a BBA: weights[i] belongs to the set with
// bitmask i+1, so the span covers every non-empty subset. When the weights
// total less than density_floor the evidence abstains and the vacuous BBA
// is returned.
MassFunction mass_from_weights(int n_zones, std::span<const double> weights,
                               double density_floor = kDefaultDensityFloor);

// Evidence of one AP for one reading: per-set weights are the fitted
// densities of the model's cells at `rss` (0 for degenerate cells),
// normalized by their total.
MassFunction build_bba(const ObservationModel& model, int ap, double rss,
                       double density_floor = kDefaultDensityFloor);

// Conjunctive rule: m(A) = sum over focal pairs (B, C), B∩C = A, of
// m1(B)·m2(C). The empty set may end up carrying mass (conflict).
MassFunction conjunctive_combine(const MassFunction& m1,
                                 const MassFunction& m2);

// Removes the conflict mass and renormalizes the rest by 1 - m(∅),
// completing Dempster's rule. Total conflict (m(∅) = 1) is an error.
MassFunction dempster_normalize(const MassFunction& m);

// Pignistic probability of each zone: BetP(Z_k) = sum over focal sets A
// containing Z_k of m(A)/|A|. Requires m(∅) = 0.
std::vector<double> pignistic(const MassFunction& m);

struct ConfidenceMap {
  std::vector<double> confidences;  // one per zone, sums to 1
  int decided_zone = 0;             // argmax, lowest index on ties
};

// argmax with lowest-index tie-break.
int decide_zone(std::span<const double> confidences);

// Intermediate products of one localization, for tracing.
struct LocalizeDetail {
  int used_aps = 0;
  int ignored_readings = 0;  // observation APs absent from the model
  std::vector<std::pair<int, MassFunction>> per_ap;
  MassFunction fused;             // conjunctive fold before normalization
  MassFunction fused_normalized;
};

// Full online pipeline: one BBA per detected modeled AP, conjunctive fold,
// one final Dempster normalization, pignistic transform, decision.
// Readings for APs the model does not know are ignored (counted in
// `detail`); a reading-less observation is a NoEvidenceError.
ConfidenceMap localize(const ObservationModel& model, const Observation& obs,
                       double density_floor = kDefaultDensityFloor,
                       LocalizeDetail* detail = nullptr);

// {"zones": [...], "confidences": [...], "decided_zone": k} with
// confidences printed to 6 decimal places.
std::string confidence_map_to_json(const ConfidenceMap& map,
                                   std::span<const std::string> zones);

}  // namespace zoneloc
