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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace zoneloc {

// Candidate families for RSS sample fits. RSS values live on the negative
// dBm axis, so the one-sided families are fitted on the reflection
// y = anchor - x with anchor = max(sample) + 1, which maps every sample to
// y >= 1. The anchor is stored as the first parameter.
enum class DistributionFamily {
  kNormal,            // params: [mean, stdev]
  kLogistic,          // params: [location, scale]
  kLogNormalShifted,  // params: [anchor, log_mean, log_stdev]
  kWeibullShifted,    // params: [anchor, shape, scale]
};

std::string_view family_name(DistributionFamily family);
std::optional<DistributionFamily> family_from_name(std::string_view name);

struct PdfCdf {
  double pdf = 0.0;
  double cdf = 0.0;
};

// Parameter estimates from samples:
//   Normal    - sample mean, unbiased-variance stdev.
//   Logistic  - moment estimates: mean, s = stdev * sqrt(3) / pi.
//   LogNormalShifted / WeibullShifted - maximum likelihood on the
//   reflected data.
// Returns nullopt when the samples carry no spread (the degenerate-fit
// signal); the caller substitutes its degenerate policy. Requires at least
// two samples.
std::optional<std::vector<double>> estimate_params(
    DistributionFamily family, std::span<const double> samples);

// pdf and cdf at x. Outside a reflected family's support the pdf is 0 and
// the cdf saturates (not an error). Throws DomainError on invalid params.
PdfCdf eval_distribution(DistributionFamily family,
                         std::span<const double> params, double x);

// Throws DomainError unless params match the family's layout with positive
// scale/shape entries.
void validate_params(DistributionFamily family, std::span<const double> params);

}  // namespace zoneloc
