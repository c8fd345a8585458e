#include <doctest.h>

#include "support/tmpdir.hpp"
#include "zoneloc/errors.hpp"
#include "zoneloc/fingerprints.hpp"
#include "zoneloc/rng.hpp"

using namespace zoneloc;

TEST_SUITE_BEGIN("fingerprints");

TEST_CASE("load: zones and APs ordered by first appearance") {
  testsupport::TempDir tmp;
  const auto path = tmp.write("fp.csv",
                              "zone_id,ap_id,rss_dbm\n"
                              "Z1,A1,-50\n"
                              "Z2,A1,-70\n");
  const FingerprintDatabase db = load_fingerprint_db(path);
  REQUIRE(db.zones == std::vector<std::string>{"Z1", "Z2"});
  REQUIRE(db.aps == std::vector<std::string>{"A1"});
  CHECK(db.samples[0][0] == std::vector<double>{-50.0});
  CHECK(db.samples[1][0] == std::vector<double>{-70.0});
}

TEST_CASE("load: interleaved rows keep per-cell order") {
  testsupport::TempDir tmp;
  const auto path = tmp.write("fp.csv",
                              "zone_id,ap_id,rss_dbm\n"
                              "Z1,A2,-41\n"
                              "Z2,A1,-55\n"
                              "Z1,A1,-61.5\n"
                              "Z1,A2,-42\n");
  const FingerprintDatabase db = load_fingerprint_db(path);
  REQUIRE(db.zones == std::vector<std::string>{"Z1", "Z2"});
  REQUIRE(db.aps == std::vector<std::string>{"A2", "A1"});
  CHECK(db.samples[0][0] == std::vector<double>{-41.0, -42.0});
  CHECK(db.samples[0][1] == std::vector<double>{-61.5});
  CHECK(db.samples[1][1] == std::vector<double>{-55.0});
  CHECK(db.samples[1][0].empty());
}

TEST_CASE("load: non-numeric RSS is a parse error with the line number") {
  testsupport::TempDir tmp;
  const auto path = tmp.write("fp.csv",
                              "zone_id,ap_id,rss_dbm\n"
                              "Z1,A1,abc\n");
  try {
    load_fingerprint_db(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("load: malformed rows") {
  testsupport::TempDir tmp;
  CHECK_THROWS_AS(
      load_fingerprint_db(tmp.write("a.csv",
                                    "zone_id,ap_id,rss_dbm\n"
                                    "Z1,A1\n")),
      ParseError);
  CHECK_THROWS_AS(
      load_fingerprint_db(tmp.write("b.csv",
                                    "zone_id,ap_id,rss_dbm\n"
                                    "Z1,A1,-50,extra\n")),
      ParseError);
  CHECK_THROWS_AS(
      load_fingerprint_db(tmp.write("c.csv",
                                    "zone_id,ap_id,rss_dbm\n"
                                    ",A1,-50\n")),
      ParseError);
  CHECK_THROWS_AS(
      load_fingerprint_db(tmp.write("d.csv",
                                    "zone_id,ap_id,rss_dbm\n"
                                    "Z1,A1,nan\n")),
      ParseError);
  CHECK_THROWS_AS(load_fingerprint_db(tmp.write("e.csv", "bad_header\n")),
                  ParseError);
}

TEST_CASE("load: fewer than two zones is a validation error") {
  testsupport::TempDir tmp;
  const auto path = tmp.write("fp.csv",
                              "zone_id,ap_id,rss_dbm\n"
                              "Z1,A1,-50\n"
                              "Z1,A2,-60\n");
  CHECK_THROWS_AS(load_fingerprint_db(path), ValidationError);
}

TEST_CASE("load: missing file names the path") {
  try {
    load_fingerprint_db("/nonexistent/fp.csv");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/fp.csv") !=
          std::string::npos);
  }
}

TEST_CASE("pool_samples: singleton, union, empty set") {
  testsupport::TempDir tmp;
  const auto path = tmp.write("fp.csv",
                              "zone_id,ap_id,rss_dbm\n"
                              "Z1,A1,-50\n"
                              "Z1,A1,-52\n"
                              "Z2,A1,-70\n");
  const FingerprintDatabase db = load_fingerprint_db(path);

  CHECK(pool_samples(db, 0, ZoneSet::single(0)) ==
        std::vector<double>{-50.0, -52.0});
  CHECK(pool_samples(db, 0, ZoneSet(0b11)) ==
        std::vector<double>{-50.0, -52.0, -70.0});
  CHECK_THROWS_AS(pool_samples(db, 0, ZoneSet(0)), DomainError);
  CHECK_THROWS_AS(pool_samples(db, 1, ZoneSet(0b1)), DomainError);
}

TEST_CASE("pool_samples: pooled length is the sum over member zones") {
  Rng rng(2024);
  for (int rep = 0; rep < 20; ++rep) {
    FingerprintDatabase db;
    const int nz = 2 + rng.below(3);
    const int na = 1 + rng.below(3);
    for (int z = 0; z < nz; ++z) db.zones.push_back("Z" + std::to_string(z));
    for (int a = 0; a < na; ++a) db.aps.push_back("A" + std::to_string(a));
    db.samples.assign(nz, std::vector<std::vector<double>>(na));
    for (int z = 0; z < nz; ++z)
      for (int a = 0; a < na; ++a)
        for (int i = rng.below(5); i > 0; --i)
          db.samples[z][a].push_back(-90.0 + 60.0 * rng.uniform01());

    for (int a = 0; a < na; ++a) {
      for (zone_bits bits = 1; bits <= num_nonempty_subsets(nz); ++bits) {
        std::size_t expected = 0;
        for (int z = 0; z < nz; ++z)
          if ((bits >> z) & 1u) expected += db.samples[z][a].size();
        CHECK(pool_samples(db, a, ZoneSet(bits)).size() == expected);
      }
    }
  }
}

TEST_CASE("round-trip: load, save, reload is identical") {
  testsupport::TempDir tmp;
  const auto path = tmp.write("fp.csv",
                              "zone_id,ap_id,rss_dbm\n"
                              "Z1,A2,-41.25\n"
                              "Z2,A1,-55\n"
                              "Z1,A1,-61.125\n"
                              "Z3,A3,-77.7\n"
                              "Z1,A2,-42\n");
  const FingerprintDatabase db = load_fingerprint_db(path);
  const auto saved = tmp.path() / "saved.csv";
  save_fingerprint_db(db, saved);
  const FingerprintDatabase reloaded = load_fingerprint_db(saved);

  REQUIRE(reloaded.zones == db.zones);
  REQUIRE(reloaded.aps == db.aps);
  CHECK(reloaded.samples == db.samples);

  // A second save is byte-identical.
  const auto saved2 = tmp.path() / "saved2.csv";
  save_fingerprint_db(reloaded, saved2);
  CHECK(testsupport::read_file(saved) == testsupport::read_file(saved2));
}

TEST_CASE("observation: load and duplicate detection") {
  testsupport::TempDir tmp;
  const Observation obs = load_observation(tmp.write("o.csv",
                                                     "ap_id,rss_dbm\n"
                                                     "A1,-48.5\n"
                                                     "A2,-66\n"));
  REQUIRE(obs.readings.size() == 2);
  CHECK(obs.readings.at("A1") == doctest::Approx(-48.5));

  CHECK_THROWS_AS(load_observation(tmp.write("dup.csv",
                                             "ap_id,rss_dbm\n"
                                             "A1,-48\n"
                                             "A1,-49\n")),
                  ParseError);
  CHECK_THROWS_AS(load_observation("/nonexistent/obs.csv"), ValidationError);
}

TEST_SUITE_END();
