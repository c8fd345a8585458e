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

#include "zoneloc/fit.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "zoneloc/errors.hpp"
#include "zoneloc/ks.hpp"

namespace zoneloc {

namespace {

constexpr int kModelVersion = 1;
constexpr const char* kDegenerateFamily = "none";

void check_cell_index(const ObservationModel& model, int ap, zone_bits bits) {
  if (ap < 0 || ap >= model.n_aps())
    throw DomainError("model cell: AP index out of range");
  if (bits == 0 || bits > model.num_sets())
    throw DomainError("model cell: zone set outside the frame");
}

}  // namespace

void FitConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ValidationError("alpha must be in (0, 1)");
  // Fail fast instead of mid-fit inside ks_critical_value.
  const bool tabulated = std::fabs(alpha - 0.10) < 1e-12 ||
                         std::fabs(alpha - 0.05) < 1e-12 ||
                         std::fabs(alpha - 0.01) < 1e-12;
  if (!tabulated)
    throw ValidationError("alpha must be one of 0.10, 0.05, 0.01");
  if (families.empty())
    throw ValidationError("at least one candidate family is required");
  if (min_samples < 3) throw ValidationError("min_samples must be >= 3");
  if (!(density_floor > 0.0))
    throw ValidationError("density_floor must be positive");
}

const FittedDistribution& ObservationModel::cell(int ap, zone_bits bits) const {
  check_cell_index(*this, ap, bits);
  return cells[static_cast<std::size_t>(ap) * num_sets() + (bits - 1)];
}

FittedDistribution& ObservationModel::cell(int ap, zone_bits bits) {
  check_cell_index(*this, ap, bits);
  return cells[static_cast<std::size_t>(ap) * num_sets() + (bits - 1)];
}

const ObservationModel::ApPlan& ObservationModel::plan(int ap) const {
  if (ap < 0 || ap >= n_aps())
    throw DomainError("model plan: AP index out of range");
  if (plans_.size() != aps.size())
    throw DomainError("model plan: rebuild_plans() has not been called");
  return plans_[ap];
}

void ObservationModel::rebuild_plans() {
  if (cells.size() != static_cast<std::size_t>(n_aps()) * num_sets())
    throw DomainError("model: cell table size does not match the frame");

  plans_.assign(aps.size(), ApPlan{});
  for (int ap = 0; ap < n_aps(); ++ap) {
    ApPlan& plan = plans_[ap];
    for (zone_bits bits = 1; bits <= num_sets(); ++bits) {
      const FittedDistribution& fd = cell(ap, bits);
      if (fd.degenerate) continue;
      validate_params(fd.family, fd.params);

      EvalGroup* group = nullptr;
      for (auto& g : plan.groups)
        if (g.family == fd.family) group = &g;
      if (group == nullptr) {
        plan.groups.push_back(EvalGroup{fd.family, {}, {}, {}, {}});
        group = &plan.groups.back();
      }
      group->bits.push_back(bits);
      group->p0.push_back(fd.params[0]);
      group->p1.push_back(fd.params[1]);
      group->p2.push_back(fd.params.size() > 2 ? fd.params[2] : 0.0);
    }
  }
}

FittedDistribution select_distribution(std::span<const double> samples,
                                       const FitConfig& config) {
  config.validate();
  const int n = static_cast<int>(samples.size());
  if (n < config.min_samples)
    throw DomainError("select_distribution: fewer samples than min_samples");

  const double critical = ks_critical_value(samples.size(), config.alpha);

  FittedDistribution best_accepted;
  FittedDistribution best_any;
  bool have_accepted = false;
  bool have_any = false;

  for (const DistributionFamily family : config.families) {
    const auto params = estimate_params(family, samples);
    if (!params) continue;  // no spread under this family

    FittedDistribution fit;
    fit.family = family;
    fit.params = *params;
    fit.ks_stat = ks_statistic(samples, family, fit.params);
    fit.n = n;
    fit.accepted = fit.ks_stat <= critical;

    if (!have_any || fit.ks_stat < best_any.ks_stat) {
      best_any = fit;
      have_any = true;
    }
    if (fit.accepted &&
        (!have_accepted || fit.ks_stat < best_accepted.ks_stat)) {
      best_accepted = fit;
      have_accepted = true;
    }
  }

  if (!have_any) {
    FittedDistribution degenerate;
    degenerate.degenerate = true;
    degenerate.n = n;
    return degenerate;
  }
  return have_accepted ? best_accepted : best_any;
}

ObservationModel fit_observation_model(const FingerprintDatabase& db,
                                       const FitConfig& config) {
  config.validate();
  if (db.n_zones() < 2)
    throw ValidationError("observation model needs at least 2 zones");
  if (db.n_zones() > kMaxZones)
    throw ValidationError(
        "too many zones: " + std::to_string(db.n_zones()) +
        " exceeds the cap of " + std::to_string(kMaxZones) +
        " (the model holds 2^N_Z - 1 cells per AP)");
  if (db.n_zones() > kWarnZones)
    std::cerr << "warning: " << db.n_zones() << " zones produce "
              << num_nonempty_subsets(db.n_zones())
              << " model cells per AP; fitting may be slow\n";

  ObservationModel model;
  model.zones = db.zones;
  model.aps = db.aps;
  model.cells.resize(static_cast<std::size_t>(model.n_aps()) *
                     model.num_sets());

  for (int ap = 0; ap < model.n_aps(); ++ap) {
    for (zone_bits bits = 1; bits <= model.num_sets(); ++bits) {
      const std::vector<double> pooled = pool_samples(db, ap, ZoneSet(bits));
      FittedDistribution& out = model.cell(ap, bits);
      if (static_cast<int>(pooled.size()) < config.min_samples) {
        out.degenerate = true;
        out.n = static_cast<int>(pooled.size());
      } else {
        out = select_distribution(pooled, config);
      }
    }
  }

  model.rebuild_plans();
  return model;
}

std::string model_to_json(const ObservationModel& model) {
  nlohmann::ordered_json doc;
  doc["version"] = kModelVersion;
  doc["zones"] = model.zones;
  doc["aps"] = model.aps;
  auto& cells = doc["cells"] = nlohmann::ordered_json::array();
  for (int ap = 0; ap < model.n_aps(); ++ap) {
    for (zone_bits bits = 1; bits <= model.num_sets(); ++bits) {
      const FittedDistribution& fd = model.cell(ap, bits);
      nlohmann::ordered_json c;
      c["ap"] = ap;
      c["set_bits"] = bits;
      c["family"] = fd.degenerate ? std::string(kDegenerateFamily)
                                  : std::string(family_name(fd.family));
      c["params"] = fd.degenerate ? std::vector<double>{} : fd.params;
      c["ks_stat"] = fd.ks_stat;
      c["accepted"] = fd.accepted;
      c["degenerate"] = fd.degenerate;
      c["n"] = fd.n;
      cells.push_back(std::move(c));
    }
  }
  return doc.dump(2);
}

ObservationModel model_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("model JSON parse error: ") + e.what());
  }

  try {
    if (doc.at("version").get<int>() != kModelVersion)
      throw ValidationError("unsupported model version");

    ObservationModel model;
    model.zones = doc.at("zones").get<std::vector<std::string>>();
    model.aps = doc.at("aps").get<std::vector<std::string>>();
    if (model.n_zones() < 2)
      throw ValidationError("model needs at least 2 zones");
    if (model.n_zones() > kMaxZones)
      throw ValidationError("model exceeds the zone cap");
    if (model.aps.empty()) throw ValidationError("model lists no APs");

    std::set<std::string_view> seen;
    for (const auto& z : model.zones)
      if (z.empty() || !seen.insert(z).second)
        throw ValidationError("zone identifiers must be unique and non-empty");
    seen.clear();
    for (const auto& a : model.aps)
      if (a.empty() || !seen.insert(a).second)
        throw ValidationError("AP identifiers must be unique and non-empty");

    const std::size_t expected =
        static_cast<std::size_t>(model.n_aps()) * model.num_sets();
    model.cells.resize(expected);
    std::vector<bool> filled(expected, false);

    for (const auto& c : doc.at("cells")) {
      const int ap = c.at("ap").get<int>();
      const zone_bits bits = c.at("set_bits").get<zone_bits>();
      if (ap < 0 || ap >= model.n_aps())
        throw ValidationError("cell AP index out of range");
      if (bits == 0 || bits > model.num_sets())
        throw ValidationError("cell set_bits outside the frame");
      const std::size_t idx =
          static_cast<std::size_t>(ap) * model.num_sets() + (bits - 1);
      if (filled[idx]) throw ValidationError("duplicate model cell");
      filled[idx] = true;

      FittedDistribution fd;
      fd.degenerate = c.at("degenerate").get<bool>();
      fd.params = c.at("params").get<std::vector<double>>();
      fd.ks_stat = c.at("ks_stat").get<double>();
      fd.accepted = c.at("accepted").get<bool>();
      fd.n = c.at("n").get<int>();
      const std::string fam = c.at("family").get<std::string>();
      if (fd.degenerate) {
        if (fam != kDegenerateFamily || !fd.params.empty())
          throw ValidationError("degenerate cell must have family 'none' "
                                "and no params");
      } else {
        const auto family = family_from_name(fam);
        if (!family)
          throw ValidationError("unknown distribution family '" + fam + "'");
        fd.family = *family;
        validate_params(fd.family, fd.params);
      }
      if (!(fd.ks_stat >= 0.0 && fd.ks_stat <= 1.0))
        throw ValidationError("ks_stat must be in [0, 1]");
      model.cells[idx] = std::move(fd);
    }

    for (const bool f : filled)
      if (!f) throw ValidationError("model cell table is incomplete");

    model.rebuild_plans();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed model JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ValidationError(std::string("malformed model JSON: ") + e.what());
  }
}

void save_model(const ObservationModel& model,
                const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  out << model_to_json(model) << '\n';
  if (!out) throw ValidationError("write failed: " + path.string());
}

ObservationModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace zoneloc
