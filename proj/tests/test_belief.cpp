#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "support/oracles.hpp"
#include "zoneloc/belief.hpp"
#include "zoneloc/errors.hpp"
#include "zoneloc/rng.hpp"

using namespace zoneloc;

namespace {

MassFunction make_mass(int n_zones,
                       std::vector<std::pair<zone_bits, double>> items) {
  MassFunction m;
  m.n_zones = n_zones;
  m.items = std::move(items);
  return m;
}

ObservationModel make_empty_model(std::vector<std::string> zones,
                                  std::vector<std::string> aps) {
  ObservationModel model;
  model.zones = std::move(zones);
  model.aps = std::move(aps);
  model.cells.resize(static_cast<std::size_t>(model.n_aps()) *
                     model.num_sets());
  for (auto& c : model.cells) c.degenerate = true;
  return model;
}

void set_normal_cell(ObservationModel& model, int ap, zone_bits bits,
                     double mean, double stdev) {
  FittedDistribution& c = model.cell(ap, bits);
  c.family = DistributionFamily::kNormal;
  c.params = {mean, stdev};
  c.ks_stat = 0.1;
  c.accepted = true;
  c.degenerate = false;
  c.n = 100;
}

// Two-AP frame reproducing the textbook fusion case at the given readings:
// AP1 yields masses ({Z1}, Ω) = (0.6, 0.4), AP2 yields ({Z2}, Ω) = (0.7, 0.3).
ObservationModel worked_example_model() {
  ObservationModel model = make_empty_model({"Z1", "Z2"}, {"A1", "A2"});
  // Densities at the reading are 1/(sigma*sqrt(2pi)), so mass ratios are
  // inverse sigma ratios: 1 : 1.5 gives 0.6/0.4, 1 : 7/3 gives 0.7/0.3.
  set_normal_cell(model, 0, 0b01, -50.0, 1.0);
  set_normal_cell(model, 0, 0b11, -50.0, 1.5);
  set_normal_cell(model, 1, 0b10, -60.0, 1.0);
  set_normal_cell(model, 1, 0b11, -60.0, 7.0 / 3.0);
  model.rebuild_plans();
  return model;
}

Observation worked_example_observation() {
  Observation obs;
  obs.readings["A1"] = -50.0;
  obs.readings["A2"] = -60.0;
  return obs;
}

}  // namespace

TEST_SUITE_BEGIN("belief");

TEST_CASE("vacuous: definition, identity law, uniform pignistic") {
  const MassFunction v2 = vacuous(2);
  REQUIRE(v2.items.size() == 1);
  CHECK(v2.mass(0b11) == 1.0);

  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const int nz = 2 + rng.below(3);
    const MassFunction m = oracle::random_bba(rng, nz);
    const MassFunction left = conjunctive_combine(vacuous(nz), m);
    const MassFunction right = conjunctive_combine(m, vacuous(nz));
    CHECK(left.items == m.items);
    CHECK(right.items == m.items);
  }

  const std::vector<double> bet = pignistic(vacuous(4));
  for (const double c : bet) CHECK(c == 0.25);
}

TEST_CASE("mass_from_weights: normalization arithmetic") {
  const std::vector<double> uniform = {1.0, 1.0, 1.0};
  const MassFunction m1 = mass_from_weights(2, uniform);
  for (zone_bits bits = 1; bits <= 3; ++bits)
    CHECK(m1.mass(bits) == doctest::Approx(1.0 / 3.0));

  const std::vector<double> w = {0.3, 0.1, 0.1};
  const MassFunction m2 = mass_from_weights(2, w);
  CHECK(m2.mass(0b01) == doctest::Approx(0.6));
  CHECK(m2.mass(0b10) == doctest::Approx(0.2));
  CHECK(m2.mass(0b11) == doctest::Approx(0.2));
}

TEST_CASE("mass_from_weights: scaling the weights changes nothing") {
  const std::vector<double> w = {0.3, 0.1, 0.1};
  std::vector<double> scaled = w;
  for (double& x : scaled) x *= 17.0;
  const MassFunction base = mass_from_weights(2, w);
  const MassFunction alt = mass_from_weights(2, scaled);
  REQUIRE(base.items.size() == alt.items.size());
  for (std::size_t i = 0; i < base.items.size(); ++i) {
    CHECK(base.items[i].first == alt.items[i].first);
    CHECK(std::fabs(base.items[i].second - alt.items[i].second) < 1e-14);
  }
}

TEST_CASE("mass_from_weights: floor and contract checks") {
  const std::vector<double> zeros = {0.0, 0.0, 0.0};
  const MassFunction m = mass_from_weights(2, zeros);
  CHECK(m.items == vacuous(2).items);

  CHECK_THROWS_AS(mass_from_weights(2, std::vector<double>{1.0, 2.0}),
                  DomainError);
  CHECK_THROWS_AS(mass_from_weights(2, std::vector<double>{1.0, -1.0, 1.0}),
                  DomainError);
}

TEST_CASE("conjunctive combination: worked two-source case") {
  const MassFunction m1 = make_mass(2, {{0b01, 0.6}, {0b11, 0.4}});
  const MassFunction m2 = make_mass(2, {{0b10, 0.7}, {0b11, 0.3}});

  const MassFunction joint = conjunctive_combine(m1, m2);
  CHECK(joint.mass(0b00) == doctest::Approx(0.42).epsilon(1e-12));
  CHECK(joint.mass(0b01) == doctest::Approx(0.18).epsilon(1e-12));
  CHECK(joint.mass(0b10) == doctest::Approx(0.28).epsilon(1e-12));
  CHECK(joint.mass(0b11) == doctest::Approx(0.12).epsilon(1e-12));

  // Independent tuple enumeration agrees.
  const MassFunction ref = oracle::combine_tuples({m1, m2});
  for (zone_bits bits = 0; bits <= 3; ++bits)
    CHECK(joint.mass(bits) == doctest::Approx(ref.mass(bits)).epsilon(1e-12));

  const MassFunction flipped = conjunctive_combine(m2, m1);
  for (zone_bits bits = 0; bits <= 3; ++bits)
    CHECK(std::fabs(joint.mass(bits) - flipped.mass(bits)) < 1e-15);

  CHECK_THROWS_AS(conjunctive_combine(m1, vacuous(3)), DomainError);
}

TEST_CASE("conjunctive combination: commutative and associative") {
  Rng rng(99);
  for (int rep = 0; rep < 60; ++rep) {
    const int nz = 2 + rng.below(3);
    const MassFunction a = oracle::random_bba(rng, nz);
    const MassFunction b = oracle::random_bba(rng, nz);
    const MassFunction c = oracle::random_bba(rng, nz);

    const MassFunction ab = conjunctive_combine(a, b);
    const MassFunction ba = conjunctive_combine(b, a);
    const MassFunction ab_c = conjunctive_combine(ab, c);
    const MassFunction a_bc = conjunctive_combine(a, conjunctive_combine(b, c));

    for (zone_bits bits = 0; bits < (zone_bits{1} << nz); ++bits) {
      CHECK(std::fabs(ab.mass(bits) - ba.mass(bits)) < 1e-9);
      CHECK(std::fabs(ab_c.mass(bits) - a_bc.mass(bits)) < 1e-9);
    }
  }
}

TEST_CASE("dempster_normalize: worked case, identity, total conflict") {
  const MassFunction joint = make_mass(
      2, {{0b00, 0.42}, {0b01, 0.18}, {0b10, 0.28}, {0b11, 0.12}});
  const MassFunction normalized = dempster_normalize(joint);
  CHECK(normalized.mass(0b00) == 0.0);
  CHECK(normalized.mass(0b01) == doctest::Approx(0.31034).epsilon(1e-4));
  CHECK(normalized.mass(0b10) == doctest::Approx(0.48276).epsilon(1e-4));
  CHECK(normalized.mass(0b11) == doctest::Approx(0.20690).epsilon(1e-4));
  CHECK(normalized.total() == doctest::Approx(1.0).epsilon(1e-12));

  const MassFunction clean = make_mass(2, {{0b01, 0.5}, {0b11, 0.5}});
  CHECK(dempster_normalize(clean).items == clean.items);

  const MassFunction conflict = make_mass(2, {{0b00, 1.0}});
  CHECK_THROWS_AS(dempster_normalize(conflict), ConflictError);
}

TEST_CASE("pignistic: splits, fixpoint, contract") {
  const std::vector<double> even = pignistic(make_mass(2, {{0b11, 1.0}}));
  CHECK(even[0] == 0.5);
  CHECK(even[1] == 0.5);

  // Bayesian mass functions are a fixpoint, exactly.
  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const int nz = 2 + rng.below(3);
    std::vector<double> weights(num_nonempty_subsets(nz), 0.0);
    for (int k = 0; k < nz; ++k)
      weights[ZoneSet::single(k).bits - 1] = 0.1 + rng.uniform01();
    const MassFunction bayes = mass_from_weights(nz, weights);
    const std::vector<double> bet = pignistic(bayes);
    for (int k = 0; k < nz; ++k)
      CHECK(bet[k] == bayes.mass(ZoneSet::single(k).bits));
  }

  const MassFunction normalized = dempster_normalize(make_mass(
      2, {{0b00, 0.42}, {0b01, 0.18}, {0b10, 0.28}, {0b11, 0.12}}));
  const std::vector<double> bet = pignistic(normalized);
  CHECK(bet[0] == doctest::Approx(0.41379).epsilon(1e-4));
  CHECK(bet[1] == doctest::Approx(0.58621).epsilon(1e-4));
  const std::vector<double> ref = oracle::pignistic_ref(normalized);
  CHECK(bet[0] == doctest::Approx(ref[0]).epsilon(1e-12));

  CHECK_THROWS_AS(pignistic(make_mass(2, {{0b00, 0.3}, {0b11, 0.7}})),
                  DomainError);
}

TEST_CASE("pignistic sums to one on random normalized inputs") {
  Rng rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const int nz = 2 + rng.below(3);
    const MassFunction m = oracle::random_bba(rng, nz);
    const std::vector<double> bet = pignistic(m);
    double sum = 0.0;
    for (const double c : bet) {
      CHECK(c >= 0.0);
      sum += c;
    }
    CHECK(std::fabs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("build_bba: masses are a valid BBA for random models") {
  Rng rng(23);
  for (int rep = 0; rep < 30; ++rep) {
    const int nz = 2 + rng.below(3);
    std::vector<std::string> zone_names;
    for (int z = 0; z < nz; ++z) zone_names.push_back("Z" + std::to_string(z + 1));
    ObservationModel model = make_empty_model(zone_names, {"A1"});
    for (zone_bits bits = 1; bits <= model.num_sets(); ++bits)
      set_normal_cell(model, 0, bits, -90.0 + 60.0 * rng.uniform01(),
                      0.5 + 9.5 * rng.uniform01());
    model.rebuild_plans();

    const double rss = -95.0 + 70.0 * rng.uniform01();
    const MassFunction bba = build_bba(model, 0, rss);
    double sum = 0.0;
    for (const auto& [bits, v] : bba.items) {
      CHECK(v >= 0.0);
      CHECK(bits >= 1);
      sum += v;
    }
    CHECK(std::fabs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("build_bba: an AP with no usable cells abstains (vacuous)") {
  ObservationModel model = make_empty_model({"Z1", "Z2"}, {"A1"});
  model.rebuild_plans();
  const MassFunction bba = build_bba(model, 0, -60.0);
  CHECK(bba.items == vacuous(2).items);
}

TEST_CASE("localize: single AP reduces to the pignistic of its BBA") {
  ObservationModel model = make_empty_model({"Z1", "Z2"}, {"A1"});
  set_normal_cell(model, 0, 0b01, -50.0, 4.0);
  set_normal_cell(model, 0, 0b10, -70.0, 4.0);
  set_normal_cell(model, 0, 0b11, -60.0, 9.0);
  model.rebuild_plans();

  Observation obs;
  obs.readings["A1"] = -53.0;
  const ConfidenceMap map = localize(model, obs);
  const std::vector<double> direct =
      pignistic(dempster_normalize(build_bba(model, 0, -53.0)));
  REQUIRE(map.confidences.size() == direct.size());
  for (std::size_t k = 0; k < direct.size(); ++k)
    CHECK(map.confidences[k] == doctest::Approx(direct[k]).epsilon(1e-12));
  CHECK(map.decided_zone == 0);
}

TEST_CASE("localize: worked two-AP fusion decides Z2") {
  const ObservationModel model = worked_example_model();
  const Observation obs = worked_example_observation();

  LocalizeDetail detail;
  const ConfidenceMap map = localize(model, obs, kDefaultDensityFloor, &detail);
  CHECK(map.confidences[0] == doctest::Approx(0.41379).epsilon(1e-4));
  CHECK(map.confidences[1] == doctest::Approx(0.58621).epsilon(1e-4));
  CHECK(map.decided_zone == 1);
  CHECK(detail.used_aps == 2);
  CHECK(detail.per_ap.size() == 2);
  CHECK(detail.per_ap[0].second.mass(0b01) == doctest::Approx(0.6));
  CHECK(detail.per_ap[1].second.mass(0b10) == doctest::Approx(0.7));
  CHECK(detail.fused.mass(0b00) == doctest::Approx(0.42));
  CHECK(detail.fused_normalized.mass(0b00) == 0.0);
}

TEST_CASE("localize: unknown APs are counted, no modeled AP is an error") {
  const ObservationModel model = worked_example_model();

  Observation stranger;
  stranger.readings["A1"] = -50.0;
  stranger.readings["X9"] = -40.0;
  LocalizeDetail detail;
  localize(model, stranger, kDefaultDensityFloor, &detail);
  CHECK(detail.ignored_readings == 1);
  CHECK(detail.used_aps == 1);

  Observation nothing;
  nothing.readings["X9"] = -40.0;
  CHECK_THROWS_AS(localize(model, nothing), NoEvidenceError);
}

TEST_CASE("localize: total conflict names the AP that sealed it") {
  ObservationModel model = make_empty_model({"Z1", "Z2"}, {"A1", "A2"});
  set_normal_cell(model, 0, 0b01, -50.0, 1.0);  // AP1 believes only {Z1}
  set_normal_cell(model, 1, 0b10, -60.0, 1.0);  // AP2 believes only {Z2}
  model.rebuild_plans();

  Observation obs;
  obs.readings["A1"] = -50.0;
  obs.readings["A2"] = -60.0;
  try {
    localize(model, obs);
    FAIL("expected ConflictError");
  } catch (const ConflictError& e) {
    CHECK(std::string(e.what()).find("A2") != std::string::npos);
  }
}

TEST_CASE("localize: invariant under AP processing order") {
  const ObservationModel model = worked_example_model();

  // Same content with the APs listed in the opposite order.
  ObservationModel swapped = make_empty_model({"Z1", "Z2"}, {"A2", "A1"});
  set_normal_cell(swapped, 1, 0b01, -50.0, 1.0);
  set_normal_cell(swapped, 1, 0b11, -50.0, 1.5);
  set_normal_cell(swapped, 0, 0b10, -60.0, 1.0);
  set_normal_cell(swapped, 0, 0b11, -60.0, 7.0 / 3.0);
  swapped.rebuild_plans();

  const Observation obs = worked_example_observation();
  const ConfidenceMap a = localize(model, obs);
  const ConfidenceMap b = localize(swapped, obs);
  REQUIRE(a.confidences.size() == b.confidences.size());
  for (std::size_t k = 0; k < a.confidences.size(); ++k)
    CHECK(std::fabs(a.confidences[k] - b.confidences[k]) < 1e-9);
  CHECK(a.decided_zone == b.decided_zone);
}

TEST_CASE("decide_zone: argmax with lowest-index ties, rescale-invariant") {
  CHECK(decide_zone(std::vector<double>{0.4, 0.4, 0.2}) == 0);
  CHECK(decide_zone(std::vector<double>{0.1, 0.5, 0.4}) == 1);

  Rng rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> conf(2 + rng.below(4));
    for (double& c : conf) c = rng.uniform01();
    std::vector<double> cubed = conf;
    for (double& c : cubed) c = c * c * c;  // strictly increasing on [0,1]
    CHECK(decide_zone(conf) == decide_zone(cubed));
  }
}

TEST_CASE("concurrent localize calls against one model agree with serial") {
  const ObservationModel model = worked_example_model();
  Rng rng(71);
  std::vector<Observation> observations;
  for (int i = 0; i < 64; ++i) {
    Observation obs;
    obs.readings["A1"] = -50.0 - 6.0 * rng.uniform01();
    obs.readings["A2"] = -60.0 - 6.0 * rng.uniform01();
    observations.push_back(obs);
  }

  std::vector<ConfidenceMap> serial;
  for (const Observation& obs : observations)
    serial.push_back(localize(model, obs));

  std::vector<ConfidenceMap> parallel(observations.size());
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < observations.size(); i += 4)
        parallel[i] = localize(model, observations[i]);
    });
  }
  for (auto& t : workers) t.join();

  for (std::size_t i = 0; i < observations.size(); ++i) {
    CHECK(parallel[i].decided_zone == serial[i].decided_zone);
    CHECK(parallel[i].confidences == serial[i].confidences);
  }
}

TEST_CASE("confidence map JSON uses six decimals") {
  ConfidenceMap map;
  map.confidences = {0.413793, 0.586207};
  map.decided_zone = 1;
  const std::vector<std::string> zones = {"Z1", "Z2"};
  CHECK(confidence_map_to_json(map, zones) ==
        R"({"zones":["Z1","Z2"],"confidences":[0.413793,0.586207],)"
        R"("decided_zone":1})");
}

TEST_SUITE_END();
