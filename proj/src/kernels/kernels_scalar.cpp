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

#include <algorithm>
#include <cmath>

namespace zoneloc::kernels {
namespace detail {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

inline double exp_flushed(double t) {
  return t < kExpMinArg ? 0.0 : std::exp(t);
}

}  // namespace

void normal_pdf_scalar(double x, const double* mean, const double* stdev,
                       double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (x - mean[i]) / stdev[i];
    out[i] = exp_flushed(-0.5 * z * z) * (kInvSqrt2Pi / stdev[i]);
  }
}

void logistic_pdf_scalar(double x, const double* loc, const double* scale,
                         double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (x - loc[i]) / scale[i];
    const double e = exp_flushed(-std::fabs(z));
    const double d = 1.0 + e;
    out[i] = e / (scale[i] * d * d);
  }
}

void lognormal_shifted_pdf_scalar(double x, const double* anchor,
                                  const double* log_mean,
                                  const double* log_stdev, double* out,
                                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double y = anchor[i] - x;
    if (!(y > 0.0)) {
      out[i] = 0.0;
      continue;
    }
    const double t = (std::log(y) - log_mean[i]) / log_stdev[i];
    out[i] = exp_flushed(-0.5 * t * t) * (kInvSqrt2Pi / (y * log_stdev[i]));
  }
}

void weibull_shifted_pdf_scalar(double x, const double* anchor,
                                const double* shape, const double* scale,
                                double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double y = anchor[i] - x;
    if (!(y > 0.0)) {
      out[i] = 0.0;
      continue;
    }
    const double r = y / scale[i];
    const double rk = std::pow(r, shape[i]);
    out[i] = exp_flushed(-rk) * (shape[i] / scale[i]) * (rk / r);
  }
}

double ks_max_deviation_scalar(const double* cdf_at_sorted, std::size_t n) {
  const double dn = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf_at_sorted[i];
    const double upper = std::fabs(static_cast<double>(i + 1) / dn - f);
    const double lower = std::fabs(f - static_cast<double>(i) / dn);
    d = std::max(d, std::max(upper, lower));
  }
  return d;
}

double sum_scalar(const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += v[i];
  return s;
}

void scale_inplace_scalar(double* v, std::size_t n, double factor) {
  for (std::size_t i = 0; i < n; ++i) v[i] *= factor;
}

}  // namespace detail

const Table& scalar_table() {
  static const Table table = {
      "scalar",
      &detail::normal_pdf_scalar,
      &detail::logistic_pdf_scalar,
      &detail::lognormal_shifted_pdf_scalar,
      &detail::weibull_shifted_pdf_scalar,
      &detail::ks_max_deviation_scalar,
      &detail::sum_scalar,
      &detail::scale_inplace_scalar,
  };
  return table;
}

}  // namespace zoneloc::kernels
