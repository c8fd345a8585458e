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

#include "zoneloc/simulator.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "zoneloc/errors.hpp"
#include "zoneloc/rng.hpp"

namespace zoneloc {

void Scenario::validate() const {
  if (n_zones < 2) throw ValidationError("scenario needs at least 2 zones");
  if (n_zones > kMaxZones)
    throw ValidationError("scenario exceeds the zone cap of " +
                          std::to_string(kMaxZones));
  if (n_aps < 1) throw ValidationError("scenario needs at least 1 AP");
  if (samples_per_cell < 1)
    throw ValidationError("samples_per_cell must be >= 1");

  std::vector<bool> seen(static_cast<std::size_t>(n_zones) * n_aps, false);
  for (const ScenarioCell& c : cells) {
    if (c.zone < 0 || c.zone >= n_zones)
      throw ValidationError("scenario cell zone index out of range");
    if (c.ap < 0 || c.ap >= n_aps)
      throw ValidationError("scenario cell AP index out of range");
    if (!std::isfinite(c.mean_dbm))
      throw ValidationError("scenario cell mean must be finite");
    if (!(c.stdev_dbm > 0.0) || !std::isfinite(c.stdev_dbm))
      throw ValidationError("scenario cell stdev must be positive");
    const std::size_t idx = static_cast<std::size_t>(c.zone) * n_aps + c.ap;
    if (seen[idx]) throw ValidationError("duplicate scenario cell");
    seen[idx] = true;
  }
  for (const bool s : seen)
    if (!s)
      throw ValidationError("scenario must cover every (zone, AP) pair");
}

const ScenarioCell& Scenario::truth(int zone, int ap) const {
  for (const ScenarioCell& c : cells)
    if (c.zone == zone && c.ap == ap) return c;
  throw DomainError("scenario cell not found");
}

std::string Scenario::zone_id(int zone) {
  return "Z" + std::to_string(zone + 1);
}

std::string Scenario::ap_id(int ap) { return "AP" + std::to_string(ap + 1); }

Scenario scenario_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("scenario JSON parse error: ") +
                          e.what());
  }

  Scenario s;
  try {
    s.n_zones = doc.at("n_zones").get<int>();
    s.n_aps = doc.at("n_aps").get<int>();
    s.samples_per_cell = doc.at("samples_per_cell").get<int>();
    s.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& c : doc.at("cells")) {
      ScenarioCell cell;
      cell.zone = c.at("zone").get<int>();
      cell.ap = c.at("ap").get<int>();
      cell.mean_dbm = c.at("mean_dbm").get<double>();
      cell.stdev_dbm = c.at("stdev_dbm").get<double>();
      s.cells.push_back(cell);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed scenario JSON: ") + e.what());
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

FingerprintDatabase generate_db(const Scenario& scenario) {
  scenario.validate();

  FingerprintDatabase db;
  for (int z = 0; z < scenario.n_zones; ++z)
    db.zones.push_back(Scenario::zone_id(z));
  for (int a = 0; a < scenario.n_aps; ++a) db.aps.push_back(Scenario::ap_id(a));
  db.samples.assign(scenario.n_zones,
                    std::vector<std::vector<double>>(scenario.n_aps));

  for (int z = 0; z < scenario.n_zones; ++z) {
    for (int a = 0; a < scenario.n_aps; ++a) {
      const ScenarioCell& cell = scenario.truth(z, a);
      Rng rng(mix_seed(scenario.seed,
                       static_cast<std::uint64_t>(z) * scenario.n_aps + a));
      auto& out = db.samples[z][a];
      out.reserve(scenario.samples_per_cell);
      for (int i = 0; i < scenario.samples_per_cell; ++i)
        out.push_back(rng.normal(cell.mean_dbm, cell.stdev_dbm));
    }
  }
  return db;
}

Observation generate_observation(const Scenario& scenario, int true_zone,
                                 std::uint64_t seed) {
  scenario.validate();
  if (true_zone < 0 || true_zone >= scenario.n_zones)
    throw DomainError("generate_observation: zone index out of range");

  Rng rng(seed);
  Observation obs;
  for (int a = 0; a < scenario.n_aps; ++a) {
    const ScenarioCell& cell = scenario.truth(true_zone, a);
    obs.readings.emplace(Scenario::ap_id(a),
                         rng.normal(cell.mean_dbm, cell.stdev_dbm));
  }
  return obs;
}

AccuracyReport evaluate(const ObservationModel& model,
                        const Scenario& scenario, int trials,
                        std::uint64_t seed) {
  scenario.validate();
  if (trials < 0) throw DomainError("evaluate: trials must be >= 0");

  if (model.n_zones() != scenario.n_zones ||
      model.n_aps() != scenario.n_aps)
    throw DomainError("evaluate: model and scenario frames differ");
  for (int z = 0; z < scenario.n_zones; ++z)
    if (model.zones[z] != Scenario::zone_id(z))
      throw DomainError("evaluate: model zone identifiers do not match the "
                        "scenario");
  for (int a = 0; a < scenario.n_aps; ++a)
    if (model.aps[a] != Scenario::ap_id(a))
      throw DomainError("evaluate: model AP identifiers do not match the "
                        "scenario");

  AccuracyReport report;
  report.trials = trials;
  report.confusion.assign(scenario.n_zones,
                          std::vector<int>(scenario.n_zones, 0));
  if (trials == 0) return report;

  Rng zone_rng(mix_seed(seed, 0));
  int correct = 0;
  double conf_sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int true_zone = zone_rng.below(scenario.n_zones);
    const Observation obs =
        generate_observation(scenario, true_zone, mix_seed(seed, 1 + t));
    const ConfidenceMap map = localize(model, obs);
    report.confusion[true_zone][map.decided_zone] += 1;
    if (map.decided_zone == true_zone) ++correct;
    conf_sum += map.confidences[true_zone];
  }

  report.accuracy_defined = true;
  report.accuracy = static_cast<double>(correct) / trials;
  report.mean_true_zone_confidence = conf_sum / trials;
  return report;
}

std::string report_to_json(const AccuracyReport& report) {
  nlohmann::ordered_json doc;
  if (report.accuracy_defined)
    doc["accuracy"] = report.accuracy;
  else
    doc["accuracy"] = nullptr;
  doc["confusion"] = report.confusion;
  if (report.accuracy_defined)
    doc["mean_true_zone_confidence"] = report.mean_true_zone_confidence;
  else
    doc["mean_true_zone_confidence"] = nullptr;
  doc["trials"] = report.trials;
  return doc.dump(2);
}

}  // namespace zoneloc
