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

#include <bit>
#include <cstdint>

namespace zoneloc {

using zone_bits = std::uint32_t;

// Subset of the zone frame encoded as a bitmask: bit k set <=> zone k is a
// member. Frames are capped at 16 zones, so uint32 always suffices.
struct ZoneSet {
  zone_bits bits = 0;

  constexpr ZoneSet() = default;
  constexpr explicit ZoneSet(zone_bits b) : bits(b) {}

  static constexpr ZoneSet full(int n_zones) {
    return ZoneSet((zone_bits{1} << n_zones) - 1);
  }
  static constexpr ZoneSet single(int zone) {
    return ZoneSet(zone_bits{1} << zone);
  }

  constexpr bool empty() const { return bits == 0; }
  constexpr int count() const { return std::popcount(bits); }
  constexpr bool contains(int zone) const { return (bits >> zone) & 1u; }
  constexpr ZoneSet intersect(ZoneSet other) const {
    return ZoneSet(bits & other.bits);
  }

  constexpr bool operator==(const ZoneSet&) const = default;
};

// Number of non-empty subsets of an n-zone frame.
constexpr zone_bits num_nonempty_subsets(int n_zones) {
  return (zone_bits{1} << n_zones) - 1;
}

}  // namespace zoneloc
