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

// AVX2/FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after a runtime cpuid check.

#include "zoneloc/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace zoneloc::kernels {
namespace {

const __m256d kSignMask = _mm256_set1_pd(-0.0);

inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(kSignMask, x); }

// Cephes-style exp for 4 doubles: range reduction x = n*ln2 + r with a
// two-part ln2, rational approximation of exp(r) on |r| <= ln2/2, then
// scaling by 2^n through the exponent bits. Finite inputs only; arguments
// below kExpMinArg return exactly 0. Accuracy ~1 ulp.
inline __m256d exp4d(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
  const __m256d max_arg = _mm256_set1_pd(709.43);
  const __m256d min_arg = _mm256_set1_pd(kExpMinArg);

  const __m256d overflow = _mm256_cmp_pd(x, max_arg, _CMP_GT_OQ);
  const __m256d underflow = _mm256_cmp_pd(x, min_arg, _CMP_LT_OQ);
  x = _mm256_min_pd(_mm256_max_pd(x, min_arg), max_arg);

  const __m256d n =
      _mm256_round_pd(_mm256_mul_pd(x, log2e),
                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, c1, x);
  r = _mm256_fnmadd_pd(n, c2, r);
  const __m256d r2 = _mm256_mul_pd(r, r);

  __m256d px = _mm256_fmadd_pd(p0, r2, p1);
  px = _mm256_fmadd_pd(px, r2, p2);
  px = _mm256_mul_pd(px, r);

  __m256d qx = _mm256_fmadd_pd(q0, r2, q1);
  qx = _mm256_fmadd_pd(qx, r2, q2);
  qx = _mm256_fmadd_pd(qx, r2, q3);

  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(e, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

  // 2^n via the exponent field; |n| <= 1024 here, and e in [~0.707, 1.415]
  // keeps every scaled result in the normal range.
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i n64 = _mm256_slli_epi64(_mm256_cvtepi32_epi64(n32), 52);
  e = _mm256_castsi256_pd(
      _mm256_add_epi64(_mm256_castpd_si256(e), n64));

  e = _mm256_andnot_pd(underflow, e);
  e = _mm256_blendv_pd(e, _mm256_set1_pd(HUGE_VAL), overflow);
  return e;
}

void normal_pdf_avx2(double x, const double* mean, const double* stdev,
                     double* out, std::size_t n) {
  const __m256d xv = _mm256_set1_pd(x);
  const __m256d half = _mm256_set1_pd(-0.5);
  const __m256d inv_sqrt_2pi = _mm256_set1_pd(0.39894228040143267794);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d m = _mm256_loadu_pd(mean + i);
    const __m256d s = _mm256_loadu_pd(stdev + i);
    const __m256d z = _mm256_div_pd(_mm256_sub_pd(xv, m), s);
    const __m256d t = _mm256_mul_pd(half, _mm256_mul_pd(z, z));
    const __m256d coef = _mm256_div_pd(inv_sqrt_2pi, s);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(exp4d(t), coef));
  }
  if (i < n) detail::normal_pdf_scalar(x, mean + i, stdev + i, out + i, n - i);
}

void logistic_pdf_avx2(double x, const double* loc, const double* scale,
                       double* out, std::size_t n) {
  const __m256d xv = _mm256_set1_pd(x);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d m = _mm256_loadu_pd(loc + i);
    const __m256d s = _mm256_loadu_pd(scale + i);
    const __m256d z = _mm256_div_pd(_mm256_sub_pd(xv, m), s);
    const __m256d e = exp4d(_mm256_sub_pd(_mm256_setzero_pd(), abs_pd(z)));
    const __m256d d = _mm256_add_pd(one, e);
    const __m256d denom = _mm256_mul_pd(s, _mm256_mul_pd(d, d));
    _mm256_storeu_pd(out + i, _mm256_div_pd(e, denom));
  }
  if (i < n) detail::logistic_pdf_scalar(x, loc + i, scale + i, out + i, n - i);
}

double ks_max_deviation_avx2(const double* cdf_at_sorted, std::size_t n) {
  // Matches the scalar kernel bit for bit: index-to-double conversions are
  // exact and division, fabs and max round identically lane by lane.
  const __m256d dn = _mm256_set1_pd(static_cast<double>(n));
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d best = _mm256_setzero_pd();
  __m256d idx1 = _mm256_set_pd(4.0, 3.0, 2.0, 1.0);  // i+1 for lanes 0..3
  const __m256d four = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d f = _mm256_loadu_pd(cdf_at_sorted + i);
    const __m256d upper = abs_pd(_mm256_sub_pd(_mm256_div_pd(idx1, dn), f));
    const __m256d idx0 = _mm256_sub_pd(idx1, one);
    const __m256d lower = abs_pd(_mm256_sub_pd(f, _mm256_div_pd(idx0, dn)));
    best = _mm256_max_pd(best, _mm256_max_pd(upper, lower));
    idx1 = _mm256_add_pd(idx1, four);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double d = std::max(std::max(lanes[0], lanes[1]),
                      std::max(lanes[2], lanes[3]));
  const double dnn = static_cast<double>(n);
  for (; i < n; ++i) {
    const double f = cdf_at_sorted[i];
    const double upper = std::fabs(static_cast<double>(i + 1) / dnn - f);
    const double lower = std::fabs(f - static_cast<double>(i) / dnn);
    d = std::max(d, std::max(upper, lower));
  }
  return d;
}

double sum_avx2(const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += v[i];
  return s;
}

void scale_inplace_avx2(double* v, std::size_t n, double factor) {
  const __m256d f = _mm256_set1_pd(factor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(v + i, _mm256_mul_pd(_mm256_loadu_pd(v + i), f));
  for (; i < n; ++i) v[i] *= factor;
}

}  // namespace

const Table& avx2_table() {
  // The reflected families are cold paths (opt-in fit candidates); they stay
  // on the scalar reference implementation.
  static const Table table = {
      "avx2",
      &normal_pdf_avx2,
      &logistic_pdf_avx2,
      &detail::lognormal_shifted_pdf_scalar,
      &detail::weibull_shifted_pdf_scalar,
      &ks_max_deviation_avx2,
      &sum_avx2,
      &scale_inplace_avx2,
  };
  return table;
}

}  // namespace zoneloc::kernels

#endif  // __AVX2__
