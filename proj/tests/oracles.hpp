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

// Independent numerical oracles shared by the test binaries. Nothing here
// calls into the library's closed forms.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace headway::testing {

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod on a finite interval.
inline double integrate(const Integrand& f, double lo, double hi) {
  if (hi <= lo) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-14,
                                                                       &err);
}

// Integral over [lo, inf).
inline double integrate_to_infinity(const Integrand& f, double lo) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([&](double t) { return f(lo + t); }, 0.0,
                              std::numeric_limits<double>::infinity());
}

// Handles integrable endpoint singularities, e.g. Weibull with shape < 1 at 0.
inline double integrate_singular(const Integrand& f, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, lo, hi);
}

// Raw kernel b^|t-a|, written out with pow rather than the library's log form.
inline double kernel(double a, double b, double t) { return std::pow(b, std::fabs(t - a)); }

// Z by quadrature, split at the kink.
inline double kernel_mass(double a, double b, double alpha) {
  const auto f = [=](double t) { return kernel(a, b, t); };
  const double split = std::max(a, alpha);
  return integrate(f, alpha, split) + integrate_to_infinity(f, split);
}

// Probability of [t1, t2] by quadrature of the kernel over Z.
inline double kernel_interval(double a, double b, double alpha, double t1, double t2) {
  const auto f = [=](double t) { return kernel(a, b, t); };
  double mass = 0.0;
  if (t1 < a && a < t2) {
    mass = integrate(f, t1, a) + integrate(f, a, t2);
  } else {
    mass = integrate(f, t1, t2);
  }
  return mass / kernel_mass(a, b, alpha);
}

}  // namespace headway::testing
