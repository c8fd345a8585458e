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

#include "zoneloc/fingerprints.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "zoneloc/detail/strings.hpp"
#include "zoneloc/errors.hpp"

namespace zoneloc {

namespace {

constexpr std::string_view kDbHeader = "zone_id,ap_id,rss_dbm";
constexpr std::string_view kObsHeader = "ap_id,rss_dbm";

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  return in;
}

}  // namespace

int FingerprintDatabase::zone_index(std::string_view id) const {
  for (std::size_t i = 0; i < zones.size(); ++i)
    if (zones[i] == id) return static_cast<int>(i);
  return -1;
}

int FingerprintDatabase::ap_index(std::string_view id) const {
  for (std::size_t i = 0; i < aps.size(); ++i)
    if (aps[i] == id) return static_cast<int>(i);
  return -1;
}

FingerprintDatabase load_fingerprint_db(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  FingerprintDatabase db;

  std::string raw;
  std::size_t line_no = 0;

  if (!std::getline(in, raw))
    throw ParseError("empty fingerprint file: " + path.string(), 1);
  ++line_no;
  if (detail::strip_cr(raw) != kDbHeader)
    throw ParseError("expected header '" + std::string(kDbHeader) + "'",
                     line_no);

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::strip_cr(raw);
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 3)
      throw ParseError("expected 3 fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    const std::string_view zone_id = fields[0];
    const std::string_view ap_id = fields[1];
    if (zone_id.empty()) throw ParseError("empty zone_id", line_no);
    if (ap_id.empty()) throw ParseError("empty ap_id", line_no);

    double rss = 0.0;
    if (!detail::parse_double(fields[2], rss))
      throw ParseError("non-numeric rss_dbm '" + std::string(fields[2]) + "'",
                       line_no);
    if (!std::isfinite(rss))
      throw ParseError("non-finite rss_dbm", line_no);

    int z = db.zone_index(zone_id);
    if (z < 0) {
      z = db.n_zones();
      db.zones.emplace_back(zone_id);
      db.samples.emplace_back(db.aps.size());
    }
    int a = db.ap_index(ap_id);
    if (a < 0) {
      a = db.n_aps();
      db.aps.emplace_back(ap_id);
      for (auto& row : db.samples) row.emplace_back();
    }
    db.samples[z][a].push_back(rss);
  }

  if (db.n_zones() < 2)
    throw ValidationError(
        "fingerprint database needs at least 2 distinct zones, got " +
        std::to_string(db.n_zones()));
  return db;
}

void save_fingerprint_db(const FingerprintDatabase& db,
                         const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  out << kDbHeader << '\n';
  // Zone-major with APs in database order reproduces both appearance orders
  // on reload.
  for (int z = 0; z < db.n_zones(); ++z) {
    for (int a = 0; a < db.n_aps(); ++a) {
      for (const double rss : db.samples[z][a]) {
        out << db.zones[z] << ',' << db.aps[a] << ','
            << detail::shortest_double(rss) << '\n';
      }
    }
  }
  if (!out) throw ValidationError("write failed: " + path.string());
}

Observation load_observation(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  Observation obs;

  std::string raw;
  std::size_t line_no = 0;

  if (!std::getline(in, raw))
    throw ParseError("empty observation file: " + path.string(), 1);
  ++line_no;
  if (detail::strip_cr(raw) != kObsHeader)
    throw ParseError("expected header '" + std::string(kObsHeader) + "'",
                     line_no);

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::strip_cr(raw);
    if (line.empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 2)
      throw ParseError("expected 2 fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    const std::string_view ap_id = fields[0];
    if (ap_id.empty()) throw ParseError("empty ap_id", line_no);

    double rss = 0.0;
    if (!detail::parse_double(fields[1], rss))
      throw ParseError("non-numeric rss_dbm '" + std::string(fields[1]) + "'",
                       line_no);
    if (!std::isfinite(rss))
      throw ParseError("non-finite rss_dbm", line_no);

    if (obs.readings.contains(ap_id))
      throw ParseError("duplicate ap_id '" + std::string(ap_id) + "'",
                       line_no);
    obs.readings.emplace(std::string(ap_id), rss);
  }
  return obs;
}

std::vector<double> pool_samples(const FingerprintDatabase& db, int ap,
                                 ZoneSet set) {
  if (set.empty()) throw DomainError("pool_samples: empty zone set");
  if (ap < 0 || ap >= db.n_aps())
    throw DomainError("pool_samples: AP index out of range");
  if (set.bits >= (zone_bits{1} << db.n_zones()))
    throw DomainError("pool_samples: zone set outside the frame");

  std::vector<double> pooled;
  for (int z = 0; z < db.n_zones(); ++z) {
    if (!set.contains(z)) continue;
    const auto& cell = db.samples[z][ap];
    pooled.insert(pooled.end(), cell.begin(), cell.end());
  }
  return pooled;
}

}  // namespace zoneloc
