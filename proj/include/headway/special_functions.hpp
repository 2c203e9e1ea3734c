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

#pragma once

namespace headway::special {

/// Natural log of |Gamma(x)| for x > 0.
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Series expansion below x = a + 1, Lentz continued fraction above.
double regularized_lower_incomplete_gamma(double a, double x);

/// Complement Q(a, x) = 1 - P(a, x), evaluated without cancellation so that
/// tiny upper-tail probabilities keep their relative precision.
double regularized_upper_incomplete_gamma(double a, double x);

double erf(double x);
double erfc(double x);

/// Standard normal CDF.
double normal_cdf(double z);

/// Inverse of the standard normal CDF. Rational approximation followed by
/// one Halley refinement step; |error| is at the level of a few ulp.
/// u = 0 and u = 1 map to -inf and +inf.
double inverse_normal_cdf(double u);

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_survival(double statistic, double dof);

}  // namespace headway::special
