// Copyright 2026 The Headway Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "headway/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "headway/error.hpp"

namespace headway::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 100000;

void check_incomplete_gamma_domain(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InvalidArgument("incomplete gamma: shape must be positive and finite, got " +
                          std::to_string(a));
  }
  if (!(x >= 0.0)) {
    throw InvalidArgument("incomplete gamma: x must be nonnegative, got " +
                          std::to_string(x));
  }
}

// log of x^a e^{-x} / Gamma(a), the common prefactor of both expansions.
double log_prefactor(double a, double x) {
  return a * std::log(x) - x - log_gamma(a);
}

// P(a, x) by the power series sum x^n / (a (a+1) ... (a+n)).
double lower_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) {
      return sum * std::exp(log_prefactor(a, x));
    }
  }
  throw NumericalError("incomplete gamma series failed to converge");
}

// Q(a, x) by the modified Lentz continued fraction.
double upper_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) {
      return h * std::exp(log_prefactor(a, x));
    }
  }
  throw NumericalError("incomplete gamma continued fraction failed to converge");
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw InvalidArgument("log_gamma: argument must be positive, got " + std::to_string(x));
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);  // reentrant; std::lgamma writes the global signgam
#else
  return std::lgamma(x);
#endif
}

double regularized_lower_incomplete_gamma(double a, double x) {
  check_incomplete_gamma_domain(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return lower_series(a, x);
  return 1.0 - upper_continued_fraction(a, x);
}

double regularized_upper_incomplete_gamma(double a, double x) {
  check_incomplete_gamma_domain(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - lower_series(a, x);
  return upper_continued_fraction(a, x);
}

double erf(double x) { return std::erf(x); }

double erfc(double x) { return std::erfc(x); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double inverse_normal_cdf(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw InvalidArgument("inverse_normal_cdf: probability outside [0, 1]: " +
                          std::to_string(u));
  }
  if (u == 0.0) return -std::numeric_limits<double>::infinity();
  if (u == 1.0) return std::numeric_limits<double>::infinity();

  // Acklam's rational approximation, relative error about 1.15e-9.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;

  double z;
  if (u < kLow) {
    const double q = std::sqrt(-2.0 * std::log(u));
    z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - kLow) {
    const double q = u - 0.5;
    const double r = q * q;
    z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-u));
    z = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // Halley step. Work in whichever tail keeps the residual well conditioned.
  const double density = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  if (density > 0.0) {
    // Phi(z) - u, written against the upper tail when u > 0.5.
    const double e = u < 0.5 ? normal_cdf(z) - u : (1.0 - u) - normal_cdf(-z);
    const double step = e / density;
    z -= step / (1.0 + 0.5 * z * step);
  }
  return z;
}

double chi_square_survival(double statistic, double dof) {
  if (!(dof > 0.0)) {
    throw InvalidArgument("chi_square_survival: dof must be positive");
  }
  if (statistic <= 0.0) return 1.0;
  return regularized_upper_incomplete_gamma(0.5 * dof, 0.5 * statistic);
}

}  // namespace headway::special
