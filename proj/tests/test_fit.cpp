#include <doctest.h>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support/tmpdir.hpp"
#include "zoneloc/errors.hpp"
#include "zoneloc/fit.hpp"
#include "zoneloc/ks.hpp"
#include "zoneloc/rng.hpp"

using namespace zoneloc;

namespace {

FingerprintDatabase make_db(int n_zones, int n_aps) {
  FingerprintDatabase db;
  for (int z = 0; z < n_zones; ++z)
    db.zones.push_back("Z" + std::to_string(z + 1));
  for (int a = 0; a < n_aps; ++a) db.aps.push_back("A" + std::to_string(a + 1));
  db.samples.assign(n_zones, std::vector<std::vector<double>>(n_aps));
  return db;
}

void fill_cell(FingerprintDatabase& db, int zone, int ap, double mean,
               double stdev, int count, std::uint64_t seed) {
  Rng rng(seed);
  for (int i = 0; i < count; ++i)
    db.samples[zone][ap].push_back(rng.normal(mean, stdev));
}

}  // namespace

TEST_SUITE_BEGIN("fit");

TEST_CASE("select_distribution: clean normal data is accepted as normal") {
  Rng rng(11);
  std::vector<double> samples;
  for (int i = 0; i < 500; ++i) samples.push_back(rng.normal(-60.0, 4.0));

  FitConfig config;
  const FittedDistribution fit = select_distribution(samples, config);
  CHECK_FALSE(fit.degenerate);
  CHECK(fit.accepted);
  CHECK(fit.n == 500);
  CHECK(fit.params[0] == doctest::Approx(-60.0).epsilon(0.02));
  CHECK(fit.params[1] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("select_distribution: constant samples give the degenerate marker") {
  const std::vector<double> samples(20, -45.0);
  FitConfig config;
  const FittedDistribution fit = select_distribution(samples, config);
  CHECK(fit.degenerate);
  CHECK_FALSE(fit.accepted);
  CHECK(fit.params.empty());
  CHECK(fit.n == 20);
}

TEST_CASE("select_distribution: rejected single family is kept, unaccepted") {
  // Strongly bimodal data: no normal fit passes, but the best fit is still
  // returned so a density always exists.
  std::vector<double> samples;
  Rng rng(5);
  for (int i = 0; i < 200; ++i)
    samples.push_back((i % 2 == 0 ? -80.0 : -40.0) + 0.3 * rng.uniform01());

  FitConfig config;
  config.families = {DistributionFamily::kNormal};
  const FittedDistribution fit = select_distribution(samples, config);
  CHECK_FALSE(fit.degenerate);
  CHECK_FALSE(fit.accepted);
  CHECK(fit.family == DistributionFamily::kNormal);
  CHECK(fit.ks_stat > ks_critical_value(200, config.alpha));
}

TEST_CASE("select_distribution: too few samples violates the contract") {
  FitConfig config;
  config.min_samples = 10;
  CHECK_THROWS_AS(
      select_distribution(std::vector<double>{-50.0, -51.0}, config),
      DomainError);
}

TEST_CASE("fit_observation_model: cell count is N_AP x (2^N_Z - 1)") {
  FingerprintDatabase db = make_db(3, 2);
  for (int z = 0; z < 3; ++z)
    for (int a = 0; a < 2; ++a)
      fill_cell(db, z, a, -50.0 - 10.0 * z - 3.0 * a, 4.0, 40,
                1000 + 10 * z + a);

  FitConfig config;
  const ObservationModel model = fit_observation_model(db, config);
  CHECK(model.cells.size() == 14);
  CHECK(model.num_sets() == 7);
  for (zone_bits bits = 1; bits <= 7; ++bits) {
    CHECK_FALSE(model.cell(0, bits).degenerate);
    CHECK_FALSE(model.cell(1, bits).degenerate);
  }
}

TEST_CASE("fit_observation_model: empty cells degenerate, unions still fit") {
  FingerprintDatabase db = make_db(2, 2);
  fill_cell(db, 0, 0, -50.0, 4.0, 40, 1);  // Z1/A1
  fill_cell(db, 0, 1, -60.0, 4.0, 40, 2);  // Z1/A2
  fill_cell(db, 1, 1, -70.0, 4.0, 40, 3);  // Z2/A2; Z2/A1 left empty

  FitConfig config;
  const ObservationModel model = fit_observation_model(db, config);
  CHECK(model.cell(0, 0b10).degenerate);         // {Z2} for A1: no samples
  CHECK_FALSE(model.cell(0, 0b01).degenerate);   // {Z1} for A1
  CHECK_FALSE(model.cell(0, 0b11).degenerate);   // union pools Z1 alone
  CHECK(model.cell(0, 0b11).n == 40);
  CHECK_FALSE(model.cell(1, 0b11).degenerate);
  CHECK(model.cell(1, 0b11).n == 80);
}

TEST_CASE("fit_observation_model: zone cap") {
  FingerprintDatabase db = make_db(17, 1);
  for (int z = 0; z < 17; ++z) fill_cell(db, z, 0, -60.0, 4.0, 3, z);
  FitConfig config;
  try {
    fit_observation_model(db, config);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("16") != std::string::npos);
  }
}

TEST_CASE("fit_observation_model: large frames warn but still fit") {
  FingerprintDatabase db = make_db(13, 1);
  for (int z = 0; z < 13; ++z) fill_cell(db, z, 0, -40.0 - z, 3.0, 4, z);

  std::stringstream captured;
  std::streambuf* old = std::cerr.rdbuf(captured.rdbuf());
  FitConfig config;
  const ObservationModel model = fit_observation_model(db, config);
  std::cerr.rdbuf(old);

  CHECK(captured.str().find("warning") != std::string::npos);
  CHECK(model.cells.size() == 8191);
  // Singleton pools hold 4 samples, below min_samples.
  CHECK(model.cell(0, 0b1).degenerate);
  CHECK_FALSE(model.cell(0, 0b111).degenerate);
}

TEST_CASE("fit config validation") {
  FitConfig config;
  config.alpha = 0.07;
  CHECK_THROWS_AS(config.validate(), ValidationError);
  config.alpha = 0.05;
  config.families.clear();
  CHECK_THROWS_AS(config.validate(), ValidationError);
  config = FitConfig{};
  config.min_samples = 2;
  CHECK_THROWS_AS(config.validate(), ValidationError);
  config = FitConfig{};
  config.density_floor = 0.0;
  CHECK_THROWS_AS(config.validate(), ValidationError);
}

TEST_CASE("model JSON round-trips bit-exactly and deterministically") {
  FingerprintDatabase db = make_db(3, 2);
  for (int z = 0; z < 3; ++z)
    for (int a = 0; a < 2; ++a)
      fill_cell(db, z, a, -45.0 - 12.0 * z - 5.0 * a, 3.0 + z, 60,
                500 + 10 * z + a);
  // One degenerate cell in the mix.
  db.samples[2][1].clear();

  FitConfig config;
  config.families = {DistributionFamily::kNormal, DistributionFamily::kLogistic,
                     DistributionFamily::kLogNormalShifted,
                     DistributionFamily::kWeibullShifted};
  const ObservationModel model = fit_observation_model(db, config);

  const std::string json = model_to_json(model);
  CHECK(json == model_to_json(fit_observation_model(db, config)));

  const ObservationModel reloaded = model_from_json(json);
  CHECK(model_to_json(reloaded) == json);
  CHECK(reloaded.zones == model.zones);
  CHECK(reloaded.aps == model.aps);

  testsupport::TempDir tmp;
  const auto path = tmp.path() / "model.json";
  save_model(model, path);
  const ObservationModel from_file = load_model(path);
  const auto path2 = tmp.path() / "model2.json";
  save_model(from_file, path2);
  CHECK(testsupport::read_file(path) == testsupport::read_file(path2));
}

TEST_CASE("model JSON rejects malformed input") {
  CHECK_THROWS_AS(model_from_json("not json"), ValidationError);
  CHECK_THROWS_AS(model_from_json("{}"), ValidationError);
  CHECK_THROWS_AS(
      model_from_json(R"({"version":9,"zones":["a","b"],"aps":["x"],"cells":[]})"),
      ValidationError);
  // Incomplete cell table.
  CHECK_THROWS_AS(
      model_from_json(
          R"({"version":1,"zones":["a","b"],"aps":["x"],"cells":[]})"),
      ValidationError);
}

TEST_SUITE_END();
