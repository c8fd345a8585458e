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
#include <map>
#include <string>
#include <vector>

#include "zoneloc/zoneset.hpp"

namespace zoneloc {

// Offline RSS samples keyed by (zone, access point). Zone and AP order is
// fixed at first appearance in the source file, which pins the bitmask
// semantics of every derived structure. Immutable once loaded.
struct FingerprintDatabase {
  std::vector<std::string> zones;
  std::vector<std::string> aps;
  // samples[zone][ap] = RSS values in dBm, in ingestion order.
  std::vector<std::vector<std::vector<double>>> samples;

  int n_zones() const { return static_cast<int>(zones.size()); }
  int n_aps() const { return static_cast<int>(aps.size()); }

  // -1 when absent.
  int zone_index(std::string_view id) const;
  int ap_index(std::string_view id) const;
};

// One online RSS reading per detected access point; APs absent from the map
// were not detected.
struct Observation {
  std::map<std::string, double, std::less<>> readings;
};

// CSV with header `zone_id,ap_id,rss_dbm`, one sample per row.
FingerprintDatabase load_fingerprint_db(const std::filesystem::path& path);
void save_fingerprint_db(const FingerprintDatabase& db,
                         const std::filesystem::path& path);

// CSV with header `ap_id,rss_dbm`, one detected AP per row.
Observation load_observation(const std::filesystem::path& path);

// Concatenation of the samples of every zone in `set` for one AP, ascending
// zone index, original order within a zone. `set` must be non-empty.
std::vector<double> pool_samples(const FingerprintDatabase& db, int ap,
                                 ZoneSet set);

}  // namespace zoneloc
