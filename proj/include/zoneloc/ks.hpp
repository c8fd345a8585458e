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

#include <cstddef>
#include <span>

#include "zoneloc/distributions.hpp"

namespace zoneloc {

// Two-sided Kolmogorov-Smirnov statistic of `samples` against the given
// distribution: D = max over sorted samples x_(i), i = 1..n, of
// max(|i/n - F(x_(i))|, |(i-1)/n - F(x_(i))|). The sorted-order formula
// handles ties. Samples must be non-empty.
double ks_statistic(std::span<const double> samples, DistributionFamily family,
                    std::span<const double> params);

// Two-sided critical value: reject when D > value. Exact tabulated values
// for n <= 40, the c(alpha)/sqrt(n) asymptote beyond. Supported alpha:
// 0.10, 0.05, 0.01; anything else is a domain error.
double ks_critical_value(std::size_t n, double alpha);

}  // namespace zoneloc
