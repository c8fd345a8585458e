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

#include "zoneloc/kernels.hpp"

#include <cstdlib>

namespace zoneloc::kernels {

bool avx2_available() {
#if defined(ZONELOC_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

#if !defined(ZONELOC_HAVE_AVX2)
const Table& avx2_table() { return scalar_table(); }
#endif

namespace {

const Table* pick_initial() {
  if (const char* env = std::getenv("ZONELOC_KERNELS")) {
    const std::string_view want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2" && avx2_available()) return &avx2_table();
  }
  return avx2_available() ? &avx2_table() : &scalar_table();
}

const Table*& active_slot() {
  static const Table* slot = pick_initial();
  return slot;
}

}  // namespace

const Table& active() { return *active_slot(); }

bool set_active(std::string_view name) {
  if (name == "scalar") {
    active_slot() = &scalar_table();
    return true;
  }
  if (name == "avx2" && avx2_available()) {
    active_slot() = &avx2_table();
    return true;
  }
  return false;
}

}  // namespace zoneloc::kernels
