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

#include "zoneloc/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "zoneloc/errors.hpp"

namespace zoneloc {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSqrt3OverPi = 0.55132889542179204100;

// Neumaier-compensated sum; keeps moment estimates accurate enough for the
// translation-equivariance contract (1e-12) at realistic sample counts.
double stable_sum(std::span<const double> v) {
  double sum = 0.0;
  double comp = 0.0;
  for (const double x : v) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double mean_of(std::span<const double> v) {
  return stable_sum(v) / static_cast<double>(v.size());
}

// Two-pass central second moment with divisor `dof`.
double central_second_moment(std::span<const double> v, double mean,
                             double dof) {
  double sum = 0.0;
  double comp = 0.0;
  for (const double x : v) {
    const double d = x - mean;
    const double sq = d * d;
    const double t = sum + sq;
    if (sum >= sq)
      comp += (sum - t) + sq;
    else
      comp += (sq - t) + sum;
    sum = t;
  }
  return (sum + comp) / dof;
}

// Reflection anchor: y = anchor - x maps every sample to y >= 1.
double reflect_anchor(std::span<const double> samples) {
  return *std::max_element(samples.begin(), samples.end()) + 1.0;
}

std::optional<std::vector<double>> estimate_normal(
    std::span<const double> samples) {
  const double mean = mean_of(samples);
  const double var = central_second_moment(
      samples, mean, static_cast<double>(samples.size()) - 1.0);
  if (!(var > 0.0)) return std::nullopt;
  return std::vector<double>{mean, std::sqrt(var)};
}

std::optional<std::vector<double>> estimate_logistic(
    std::span<const double> samples) {
  const double mean = mean_of(samples);
  const double var = central_second_moment(
      samples, mean, static_cast<double>(samples.size()) - 1.0);
  if (!(var > 0.0)) return std::nullopt;
  return std::vector<double>{mean, std::sqrt(var) * kSqrt3OverPi};
}

std::optional<std::vector<double>> estimate_lognormal_shifted(
    std::span<const double> samples) {
  const double anchor = reflect_anchor(samples);
  std::vector<double> logs(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    logs[i] = std::log(anchor - samples[i]);
  const double mu = mean_of(logs);
  const double var =
      central_second_moment(logs, mu, static_cast<double>(logs.size()));
  if (!(var > 0.0)) return std::nullopt;
  return std::vector<double>{anchor, mu, std::sqrt(var)};
}

// Profile-likelihood equation for the Weibull shape on log data:
//   g(k) = sum(w_i * l_i) / sum(w_i) - 1/k - mean(l),  w_i = y_i^k.
// Evaluated against the largest log to keep the exponentials bounded.
double weibull_shape_eq(std::span<const double> logs, double log_max,
                        double mean_log, double k) {
  double a = 0.0;
  double b = 0.0;
  for (const double l : logs) {
    const double w = std::exp(k * (l - log_max));
    a += w;
    b += w * l;
  }
  return b / a - 1.0 / k - mean_log;
}

std::optional<std::vector<double>> estimate_weibull_shifted(
    std::span<const double> samples) {
  const double anchor = reflect_anchor(samples);
  std::vector<double> logs(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    logs[i] = std::log(anchor - samples[i]);
  const double log_max = *std::max_element(logs.begin(), logs.end());
  const double log_min = *std::min_element(logs.begin(), logs.end());
  if (!(log_max > log_min)) return std::nullopt;
  const double mean_log = mean_of(logs);

  // g is increasing in k, negative near 0; expand the bracket, then bisect.
  double lo = 1e-8;
  double hi = 1.0;
  while (weibull_shape_eq(logs, log_max, mean_log, hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e9) return std::nullopt;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (weibull_shape_eq(logs, log_max, mean_log, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double shape = 0.5 * (lo + hi);

  double a = 0.0;
  for (const double l : logs) a += std::exp(shape * (l - log_max));
  const double log_scale =
      log_max + std::log(a / static_cast<double>(logs.size())) / shape;
  return std::vector<double>{anchor, shape, std::exp(log_scale)};
}

double normal_cdf_unit(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

}  // namespace

std::string_view family_name(DistributionFamily family) {
  switch (family) {
    case DistributionFamily::kNormal:
      return "normal";
    case DistributionFamily::kLogistic:
      return "logistic";
    case DistributionFamily::kLogNormalShifted:
      return "lognormal_shifted";
    case DistributionFamily::kWeibullShifted:
      return "weibull_shifted";
  }
  throw DomainError("unknown distribution family");
}

std::optional<DistributionFamily> family_from_name(std::string_view name) {
  if (name == "normal") return DistributionFamily::kNormal;
  if (name == "logistic") return DistributionFamily::kLogistic;
  if (name == "lognormal_shifted") return DistributionFamily::kLogNormalShifted;
  if (name == "weibull_shifted") return DistributionFamily::kWeibullShifted;
  return std::nullopt;
}

std::optional<std::vector<double>> estimate_params(
    DistributionFamily family, std::span<const double> samples) {
  if (samples.size() < 2)
    throw DomainError("estimate_params: need at least 2 samples");
  for (const double x : samples)
    if (!std::isfinite(x))
      throw DomainError("estimate_params: non-finite sample");

  switch (family) {
    case DistributionFamily::kNormal:
      return estimate_normal(samples);
    case DistributionFamily::kLogistic:
      return estimate_logistic(samples);
    case DistributionFamily::kLogNormalShifted:
      return estimate_lognormal_shifted(samples);
    case DistributionFamily::kWeibullShifted:
      return estimate_weibull_shifted(samples);
  }
  throw DomainError("unknown distribution family");
}

void validate_params(DistributionFamily family,
                     std::span<const double> params) {
  const auto require = [&](bool ok, const char* what) {
    if (!ok)
      throw DomainError(std::string("invalid parameters for ") +
                        std::string(family_name(family)) + ": " + what);
  };
  for (const double p : params) require(std::isfinite(p), "non-finite entry");
  switch (family) {
    case DistributionFamily::kNormal:
      require(params.size() == 2, "expected [mean, stdev]");
      require(params[1] > 0.0, "stdev must be positive");
      return;
    case DistributionFamily::kLogistic:
      require(params.size() == 2, "expected [location, scale]");
      require(params[1] > 0.0, "scale must be positive");
      return;
    case DistributionFamily::kLogNormalShifted:
      require(params.size() == 3, "expected [anchor, log_mean, log_stdev]");
      require(params[2] > 0.0, "log_stdev must be positive");
      return;
    case DistributionFamily::kWeibullShifted:
      require(params.size() == 3, "expected [anchor, shape, scale]");
      require(params[1] > 0.0, "shape must be positive");
      require(params[2] > 0.0, "scale must be positive");
      return;
  }
  throw DomainError("unknown distribution family");
}

PdfCdf eval_distribution(DistributionFamily family,
                         std::span<const double> params, double x) {
  validate_params(family, params);
  switch (family) {
    case DistributionFamily::kNormal: {
      const double z = (x - params[0]) / params[1];
      return {std::exp(-0.5 * z * z) * (kInvSqrt2Pi / params[1]),
              normal_cdf_unit(z)};
    }
    case DistributionFamily::kLogistic: {
      const double z = (x - params[0]) / params[1];
      const double e = std::exp(-std::fabs(z));
      const double d = 1.0 + e;
      const double pdf = e / (params[1] * d * d);
      const double cdf = z >= 0.0 ? 1.0 / d : e / d;
      return {pdf, cdf};
    }
    case DistributionFamily::kLogNormalShifted: {
      const double y = params[0] - x;
      if (!(y > 0.0)) return {0.0, 1.0};
      const double t = (std::log(y) - params[1]) / params[2];
      const double pdf =
          std::exp(-0.5 * t * t) * (kInvSqrt2Pi / (y * params[2]));
      // P(X <= x) = P(Y >= y) for the reflected variable.
      return {pdf, 0.5 * std::erfc(t * kInvSqrt2)};
    }
    case DistributionFamily::kWeibullShifted: {
      const double y = params[0] - x;
      if (!(y > 0.0)) return {0.0, 1.0};
      const double r = y / params[2];
      const double rk = std::pow(r, params[1]);
      const double pdf =
          std::exp(-rk) * (params[1] / params[2]) * (rk / r);
      return {pdf, std::exp(-rk)};
    }
  }
  throw DomainError("unknown distribution family");
}

}  // namespace zoneloc
