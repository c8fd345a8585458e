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

// zoneloc CLI: fit, localize, evaluate, simulate. Machine-readable JSON/CSV
// goes to stdout or --out; human prose goes to stderr. Exit codes: 0 ok,
// 1 validation error, 2 runtime error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zoneloc/belief.hpp"
#include "zoneloc/detail/strings.hpp"
#include "zoneloc/errors.hpp"
#include "zoneloc/fingerprints.hpp"
#include "zoneloc/fit.hpp"
#include "zoneloc/simulator.hpp"

namespace {

using namespace zoneloc;

std::vector<DistributionFamily> parse_families(const std::string& csv) {
  std::vector<DistributionFamily> families;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string token =
        csv.substr(start, comma == std::string::npos ? std::string::npos
                                                     : comma - start);
    std::string canonical = token;
    if (token == "lognormal") canonical = "lognormal_shifted";
    if (token == "weibull") canonical = "weibull_shifted";
    const auto family = family_from_name(canonical);
    if (!family)
      throw ValidationError("unknown distribution family '" + token + "'");
    families.push_back(*family);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (families.empty())
    throw ValidationError("at least one distribution family is required");
  return families;
}

// (ap_id, zone_id, x, pdf) rows for the fitted singleton distributions,
// over a grid spanning the observed RSS range.
void write_plot_data(const ObservationModel& model,
                     const FingerprintDatabase& db,
                     const std::string& path) {
  double lo = 0.0;
  double hi = 0.0;
  bool any = false;
  for (const auto& row : db.samples) {
    for (const auto& cell : row) {
      for (const double x : cell) {
        if (!any) {
          lo = hi = x;
          any = true;
        }
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
  }
  if (!any) throw ValidationError("no samples to plot");
  lo = std::floor(lo) - 5.0;
  hi = std::ceil(hi) + 5.0;

  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << "ap_id,zone_id,x_dbm,pdf\n";
  const int steps = static_cast<int>((hi - lo) / 0.25);
  for (int ap = 0; ap < model.n_aps(); ++ap) {
    for (int z = 0; z < model.n_zones(); ++z) {
      const FittedDistribution& fd = model.cell(ap, ZoneSet::single(z).bits);
      if (fd.degenerate) continue;
      for (int i = 0; i <= steps; ++i) {
        const double x = lo + 0.25 * i;
        const double pdf = eval_distribution(fd.family, fd.params, x).pdf;
        out << model.aps[ap] << ',' << model.zones[z] << ','
            << detail::shortest_double(x) << ','
            << detail::shortest_double(pdf) << '\n';
      }
    }
  }
  if (!out) throw ValidationError("write failed: " + path);
}

nlohmann::json mass_function_json(const MassFunction& m,
                                  const std::vector<std::string>& zones) {
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& [bits, mass] : m.items) {
    nlohmann::json entry;
    entry["bits"] = bits;
    std::vector<std::string> members;
    for (int k = 0; k < m.n_zones; ++k)
      if ((bits >> k) & 1u) members.push_back(zones[k]);
    entry["zones"] = members;
    entry["mass"] = mass;
    sets.push_back(entry);
  }
  return sets;
}

int run_fit(const std::string& fingerprints, const std::string& out,
            double alpha, const std::string& families, int min_samples,
            const std::optional<std::string>& plot_data) {
  FitConfig config;
  config.alpha = alpha;
  config.families = parse_families(families);
  config.min_samples = min_samples;
  config.validate();

  const FingerprintDatabase db = load_fingerprint_db(fingerprints);
  const ObservationModel model = fit_observation_model(db, config);
  save_model(model, out);
  if (plot_data) write_plot_data(model, db, *plot_data);

  std::cerr << "fitted " << model.cells.size() << " cells (" << model.n_aps()
            << " APs x " << model.num_sets() << " zone sets) -> " << out
            << '\n';
  return 0;
}

int run_localize(const std::string& model_path, const std::string& obs_path,
                 bool trace) {
  const ObservationModel model = load_model(model_path);
  const Observation obs = load_observation(obs_path);

  LocalizeDetail detail;
  const ConfidenceMap map = localize(model, obs, kDefaultDensityFloor, &detail);
  if (trace) {
    for (const auto& [ap, bba] : detail.per_ap) {
      nlohmann::ordered_json line;
      line["type"] = "bba";
      line["ap"] = model.aps[ap];
      line["masses"] = mass_function_json(bba, model.zones);
      std::cout << line.dump() << '\n';
    }
    nlohmann::ordered_json fused;
    fused["type"] = "fused";
    fused["masses"] = mass_function_json(detail.fused, model.zones);
    std::cout << fused.dump() << '\n';
    nlohmann::ordered_json norm;
    norm["type"] = "fused_normalized";
    norm["masses"] = mass_function_json(detail.fused_normalized, model.zones);
    std::cout << norm.dump() << '\n';
  }
  if (detail.ignored_readings > 0)
    std::cerr << "warning: ignored " << detail.ignored_readings
              << " reading(s) for unmodeled access points\n";

  std::cout << confidence_map_to_json(map, model.zones) << '\n';
  return 0;
}

int run_evaluate(const std::string& model_path, const std::string& scenario_path,
                 int trials, std::uint64_t seed) {
  const ObservationModel model = load_model(model_path);
  const Scenario scenario = load_scenario(scenario_path);
  const AccuracyReport report = evaluate(model, scenario, trials, seed);
  std::cout << report_to_json(report) << '\n';
  return 0;
}

int run_simulate(const std::string& scenario_path, const std::string& out) {
  const Scenario scenario = load_scenario(scenario_path);
  const FingerprintDatabase db = generate_db(scenario);
  save_fingerprint_db(db, out);
  std::cerr << "wrote " << scenario.n_zones << " zones x " << scenario.n_aps
            << " APs x " << scenario.samples_per_cell << " samples -> " << out
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zone-level WiFi RSS localization with belief functions"};
  app.require_subcommand(1);

  std::string fingerprints;
  std::string model_path;
  std::string obs_path;
  std::string scenario_path;
  std::string out_path;
  std::string families = "normal,logistic";
  std::optional<std::string> plot_data;
  double alpha = 0.05;
  int min_samples = 10;
  int trials = 1000;
  std::uint64_t seed = 7;
  bool trace = false;

  CLI::App* fit = app.add_subcommand(
      "fit", "fit an observation model from a fingerprint CSV");
  fit->add_option("--fingerprints", fingerprints, "fingerprint CSV")
      ->required();
  fit->add_option("--out", out_path, "model JSON output path")->required();
  fit->add_option("--alpha", alpha, "significance level (0.10, 0.05, 0.01)");
  fit->add_option("--families", families,
                  "comma-separated candidate families");
  fit->add_option("--min-samples", min_samples,
                  "minimum pooled samples per cell");
  fit->add_option("--plot-data", plot_data,
                  "write (ap,zone,x,pdf) curves for the singleton fits");

  CLI::App* loc = app.add_subcommand(
      "localize", "assign zone confidences to one observation");
  loc->add_option("--model", model_path, "model JSON")->required();
  loc->add_option("--observation", obs_path, "observation CSV")->required();
  loc->add_flag("--trace", trace, "emit per-AP BBAs and the fused masses");

  CLI::App* eval = app.add_subcommand(
      "evaluate", "measure localization accuracy on synthetic trials");
  eval->add_option("--model", model_path, "model JSON")->required();
  eval->add_option("--scenario", scenario_path, "scenario JSON")->required();
  eval->add_option("--trials", trials, "number of observations to draw");
  eval->add_option("--seed", seed, "base seed for the trial streams");

  CLI::App* sim = app.add_subcommand(
      "simulate", "generate a synthetic fingerprint CSV from a scenario");
  sim->add_option("--scenario", scenario_path, "scenario JSON")->required();
  sim->add_option("--out", out_path, "fingerprint CSV output path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fit->parsed())
      return run_fit(fingerprints, out_path, alpha, families, min_samples,
                     plot_data);
    if (loc->parsed()) return run_localize(model_path, obs_path, trace);
    if (eval->parsed())
      return run_evaluate(model_path, scenario_path, trials, seed);
    if (sim->parsed()) return run_simulate(scenario_path, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    // DomainError, ConflictError, NoEvidenceError.
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
