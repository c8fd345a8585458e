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
#include <string_view>

// Data-parallel inner loops, provided as scalar reference kernels plus AVX2
// variants selected at runtime. Every kernel has identical semantics across
// backends; ks_max_deviation and scale_inplace are bit-identical, the
// exponential-based kernels agree to a few ulp (the AVX2 path uses a
// Cephes-style vector exp).

namespace zoneloc::kernels {

// exp(t) underflows double below this argument; all backends flush such
// results to exactly zero so scalar and SIMD outputs stay comparable.
inline constexpr double kExpMinArg = -708.39641853226410622;

struct Table {
  const char* name;

  // pdf of one observation x under n parameterizations (structure of arrays).
  void (*normal_pdf)(double x, const double* mean, const double* stdev,
                     double* out, std::size_t n);
  void (*logistic_pdf)(double x, const double* loc, const double* scale,
                       double* out, std::size_t n);
  // Reflected families: y = anchor - x must be positive, pdf is 0 otherwise.
  void (*lognormal_shifted_pdf)(double x, const double* anchor,
                                const double* log_mean, const double* log_stdev,
                                double* out, std::size_t n);
  void (*weibull_shifted_pdf)(double x, const double* anchor,
                              const double* shape, const double* scale,
                              double* out, std::size_t n);

  // Sup distance between the empirical CDF of n sorted samples and a model
  // CDF already evaluated at those samples: max over i of
  // max(|(i+1)/n - F_i|, |i/n - F_i|), i = 0..n-1.
  double (*ks_max_deviation)(const double* cdf_at_sorted, std::size_t n);

  double (*sum)(const double* v, std::size_t n);
  void (*scale_inplace)(double* v, std::size_t n, double factor);
};

// Scalar reference implementations, exposed so other backends can reuse the
// entries they do not accelerate.
namespace detail {
void normal_pdf_scalar(double x, const double* mean, const double* stdev,
                       double* out, std::size_t n);
void logistic_pdf_scalar(double x, const double* loc, const double* scale,
                         double* out, std::size_t n);
void lognormal_shifted_pdf_scalar(double x, const double* anchor,
                                  const double* log_mean,
                                  const double* log_stdev, double* out,
                                  std::size_t n);
void weibull_shifted_pdf_scalar(double x, const double* anchor,
                                const double* shape, const double* scale,
                                double* out, std::size_t n);
double ks_max_deviation_scalar(const double* cdf_at_sorted, std::size_t n);
double sum_scalar(const double* v, std::size_t n);
void scale_inplace_scalar(double* v, std::size_t n, double factor);
}  // namespace detail

const Table& scalar_table();

bool avx2_available();
// Valid only when avx2_available(); otherwise aliases the scalar table.
const Table& avx2_table();

// Active table, picked once: AVX2 when the CPU supports it, scalar
// otherwise. Environment variable ZONELOC_KERNELS=scalar|avx2 overrides.
const Table& active();
// Switch backends explicitly ("scalar" or "avx2"); false when unavailable.
bool set_active(std::string_view name);

}  // namespace zoneloc::kernels
