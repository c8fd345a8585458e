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

#include "zoneloc/belief.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "zoneloc/errors.hpp"
#include "zoneloc/kernels.hpp"

namespace zoneloc {

namespace {

void check_frame(int n_zones) {
  if (n_zones < 2 || n_zones > kMaxZones)
    throw DomainError("mass function frame must have 2.." +
                      std::to_string(kMaxZones) + " zones");
}

}  // namespace

double MassFunction::mass(zone_bits bits) const {
  const auto it = std::lower_bound(
      items.begin(), items.end(), bits,
      [](const auto& item, zone_bits key) { return item.first < key; });
  if (it != items.end() && it->first == bits) return it->second;
  return 0.0;
}

double MassFunction::total() const {
  double s = 0.0;
  for (const auto& [bits, m] : items) s += m;
  return s;
}

MassFunction vacuous(int n_zones) {
  check_frame(n_zones);
  MassFunction m;
  m.n_zones = n_zones;
  m.items.emplace_back(ZoneSet::full(n_zones).bits, 1.0);
  return m;
}

MassFunction mass_from_weights(int n_zones, std::span<const double> weights,
                               double density_floor) {
  check_frame(n_zones);
  if (weights.size() != num_nonempty_subsets(n_zones))
    throw DomainError("mass_from_weights: expected one weight per non-empty "
                      "zone set");
  for (const double w : weights)
    if (!(w >= 0.0))
      throw DomainError("mass_from_weights: weights must be non-negative");

  const auto& k = kernels::active();
  const double total = k.sum(weights.data(), weights.size());
  if (!(total >= density_floor)) return vacuous(n_zones);

  std::vector<double> masses(weights.begin(), weights.end());
  k.scale_inplace(masses.data(), masses.size(), 1.0 / total);

  MassFunction m;
  m.n_zones = n_zones;
  for (std::size_t i = 0; i < masses.size(); ++i)
    if (masses[i] > 0.0)
      m.items.emplace_back(static_cast<zone_bits>(i + 1), masses[i]);
  return m;
}

MassFunction build_bba(const ObservationModel& model, int ap, double rss,
                       double density_floor) {
  if (ap < 0 || ap >= model.n_aps())
    throw DomainError("build_bba: AP index out of range");

  const ObservationModel::ApPlan& plan = model.plan(ap);
  std::vector<double> weights(model.num_sets(), 0.0);
  std::vector<double> scratch;

  const auto& k = kernels::active();
  for (const auto& group : plan.groups) {
    const std::size_t n = group.bits.size();
    scratch.resize(n);
    switch (group.family) {
      case DistributionFamily::kNormal:
        k.normal_pdf(rss, group.p0.data(), group.p1.data(), scratch.data(), n);
        break;
      case DistributionFamily::kLogistic:
        k.logistic_pdf(rss, group.p0.data(), group.p1.data(), scratch.data(),
                       n);
        break;
      case DistributionFamily::kLogNormalShifted:
        k.lognormal_shifted_pdf(rss, group.p0.data(), group.p1.data(),
                                group.p2.data(), scratch.data(), n);
        break;
      case DistributionFamily::kWeibullShifted:
        k.weibull_shifted_pdf(rss, group.p0.data(), group.p1.data(),
                              group.p2.data(), scratch.data(), n);
        break;
    }
    for (std::size_t i = 0; i < n; ++i) weights[group.bits[i] - 1] = scratch[i];
  }

  return mass_from_weights(model.n_zones(), weights, density_floor);
}

MassFunction conjunctive_combine(const MassFunction& m1,
                                 const MassFunction& m2) {
  check_frame(m1.n_zones);
  if (m1.n_zones != m2.n_zones)
    throw DomainError("conjunctive_combine: frames differ (" +
                      std::to_string(m1.n_zones) + " vs " +
                      std::to_string(m2.n_zones) + " zones)");

  // Dense accumulator over 2^N_Z subsets; focal pairs only.
  std::vector<double> acc(zone_bits{1} << m1.n_zones, 0.0);
  for (const auto& [b1, v1] : m1.items)
    for (const auto& [b2, v2] : m2.items) acc[b1 & b2] += v1 * v2;

  MassFunction out;
  out.n_zones = m1.n_zones;
  for (zone_bits bits = 0; bits < acc.size(); ++bits)
    if (acc[bits] > 0.0) out.items.emplace_back(bits, acc[bits]);
  return out;
}

MassFunction dempster_normalize(const MassFunction& m) {
  check_frame(m.n_zones);
  const double conflict = m.empty_mass();
  if (conflict == 0.0) return m;
  if (conflict >= 1.0)
    throw ConflictError(
        "total conflict: the conjunctive combination left all mass on the "
        "empty set");

  MassFunction out;
  out.n_zones = m.n_zones;
  const double inv = 1.0 / (1.0 - conflict);
  for (const auto& [bits, v] : m.items) {
    if (bits == 0) continue;
    out.items.emplace_back(bits, v * inv);
  }
  return out;
}

std::vector<double> pignistic(const MassFunction& m) {
  check_frame(m.n_zones);
  if (m.empty_mass() != 0.0)
    throw DomainError(
        "pignistic: the mass function carries conflict; normalize first");

  std::vector<double> bet(m.n_zones, 0.0);
  for (const auto& [bits, v] : m.items) {
    const double share = v / static_cast<double>(std::popcount(bits));
    for (int k = 0; k < m.n_zones; ++k)
      if ((bits >> k) & 1u) bet[k] += share;
  }
  return bet;
}

int decide_zone(std::span<const double> confidences) {
  if (confidences.empty()) throw DomainError("decide_zone: no confidences");
  int best = 0;
  for (int k = 1; k < static_cast<int>(confidences.size()); ++k)
    if (confidences[k] > confidences[best]) best = k;
  return best;
}

ConfidenceMap localize(const ObservationModel& model, const Observation& obs,
                       double density_floor, LocalizeDetail* detail) {
  std::vector<int> detected;
  for (int ap = 0; ap < model.n_aps(); ++ap)
    if (obs.readings.contains(model.aps[ap])) detected.push_back(ap);

  int ignored = 0;
  for (const auto& [ap_id, rss] : obs.readings)
    if (std::find(model.aps.begin(), model.aps.end(), ap_id) ==
        model.aps.end())
      ++ignored;

  if (detail != nullptr) {
    detail->used_aps = static_cast<int>(detected.size());
    detail->ignored_readings = ignored;
    detail->per_ap.clear();
  }
  if (detected.empty())
    throw NoEvidenceError(
        "no evidence: the observation contains no reading for any modeled "
        "access point");

  // Undetected APs would contribute vacuous BBAs, the neutral element, so
  // the fold simply skips them.
  MassFunction fused;
  bool first = true;
  for (const int ap : detected) {
    MassFunction bba =
        build_bba(model, ap, obs.readings.at(model.aps[ap]), density_floor);
    if (detail != nullptr) detail->per_ap.emplace_back(ap, bba);
    if (first) {
      fused = std::move(bba);
      first = false;
    } else {
      fused = conjunctive_combine(fused, bba);
    }
    if (fused.empty_mass() >= 1.0)
      throw ConflictError("total conflict after fusing evidence from access "
                          "point '" +
                          model.aps[ap] + "'");
  }

  const MassFunction normalized = dempster_normalize(fused);
  if (detail != nullptr) {
    detail->fused = fused;
    detail->fused_normalized = normalized;
  }

  ConfidenceMap map;
  map.confidences = pignistic(normalized);
  map.decided_zone = decide_zone(map.confidences);
  return map;
}

std::string confidence_map_to_json(const ConfidenceMap& map,
                                   std::span<const std::string> zones) {
  std::string out = "{\"zones\":";
  out += nlohmann::json(std::vector<std::string>(zones.begin(), zones.end()))
             .dump();
  out += ",\"confidences\":[";
  char buf[32];
  for (std::size_t k = 0; k < map.confidences.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.6f", map.confidences[k]);
    if (k > 0) out += ',';
    out += buf;
  }
  out += "],\"decided_zone\":";
  out += std::to_string(map.decided_zone);
  out += '}';
  return out;
}

}  // namespace zoneloc
