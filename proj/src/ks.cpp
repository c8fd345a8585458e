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

#include "zoneloc/ks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "zoneloc/errors.hpp"
#include "zoneloc/kernels.hpp"

namespace zoneloc {

namespace {

// Exact two-sided critical values of D_n for n = 1..40, from the exact
// null distribution of the statistic, rounded to 6 decimals.
constexpr int kTableMaxN = 40;

constexpr double kCrit10[kTableMaxN] = {
    0.950000, 0.776393, 0.636045, 0.565216, 0.509449, 0.467993, 0.436068,
    0.409622, 0.387463, 0.368662, 0.352419, 0.338149, 0.325487, 0.314168,
    0.303970, 0.294717, 0.286266, 0.278508, 0.271354, 0.264731, 0.258574,
    0.252832, 0.247459, 0.242417, 0.237674, 0.233202, 0.228974, 0.224971,
    0.221172, 0.217560, 0.214122, 0.210842, 0.207710, 0.204714, 0.201846,
    0.199095, 0.196455, 0.193918, 0.191477, 0.189127};

constexpr double kCrit05[kTableMaxN] = {
    0.975000, 0.841886, 0.707598, 0.623939, 0.563275, 0.519262, 0.483424,
    0.454267, 0.430011, 0.409246, 0.391224, 0.375430, 0.361432, 0.348901,
    0.337596, 0.327333, 0.317963, 0.309360, 0.301425, 0.294075, 0.287242,
    0.280869, 0.274904, 0.269307, 0.264041, 0.259075, 0.254380, 0.249934,
    0.245715, 0.241703, 0.237884, 0.234241, 0.230761, 0.227434, 0.224247,
    0.221191, 0.218257, 0.215438, 0.212727, 0.210115};

constexpr double kCrit01[kTableMaxN] = {
    0.995000, 0.929289, 0.829002, 0.734238, 0.668531, 0.616607, 0.575812,
    0.541793, 0.513317, 0.488932, 0.467702, 0.449045, 0.432473, 0.417616,
    0.404199, 0.392007, 0.380862, 0.370622, 0.361170, 0.352411, 0.344263,
    0.336659, 0.329540, 0.322857, 0.316567, 0.310633, 0.305022, 0.299707,
    0.294661, 0.289864, 0.285295, 0.280936, 0.276772, 0.272789, 0.268974,
    0.265315, 0.261803, 0.258427, 0.255179, 0.252051};

bool alpha_is(double alpha, double target) {
  return std::fabs(alpha - target) < 1e-12;
}

}  // namespace

double ks_statistic(std::span<const double> samples, DistributionFamily family,
                    std::span<const double> params) {
  if (samples.empty()) throw DomainError("ks_statistic: no samples");

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> cdf(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    cdf[i] = eval_distribution(family, params, sorted[i]).cdf;

  return kernels::active().ks_max_deviation(cdf.data(), cdf.size());
}

double ks_critical_value(std::size_t n, double alpha) {
  if (n < 1) throw DomainError("ks_critical_value: n must be >= 1");

  const double* table = nullptr;
  double asymptote = 0.0;
  if (alpha_is(alpha, 0.10)) {
    table = kCrit10;
    asymptote = 1.224;
  } else if (alpha_is(alpha, 0.05)) {
    table = kCrit05;
    asymptote = 1.358;
  } else if (alpha_is(alpha, 0.01)) {
    table = kCrit01;
    asymptote = 1.628;
  } else {
    throw DomainError(
        "ks_critical_value: unsupported alpha (use 0.10, 0.05 or 0.01)");
  }

  if (n <= kTableMaxN) return table[n - 1];
  return asymptote / std::sqrt(static_cast<double>(n));
}

}  // namespace zoneloc
