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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace headway {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Parameters of the exponential-base headway distribution
///
///   f(t) = b^|t - a| / Z   for t >= alpha_min, 0 below,
///
/// where Z is the integral of b^|t - a| over [alpha_min, inf). `a` locates the
/// mode (it may sit below alpha_min, in which case the density reduces to a
/// shifted exponential with rate -ln b) and `b` in (0, 1) sets the spread.
class ProposedParams {
 public:
  static constexpr double kDefaultAlphaMin = 0.5;
  static constexpr double kMinBase = 1e-9;
  static constexpr double kMaxBase = 1.0 - 1e-9;

  /// Throws InvalidArgument unless b lies in (kMinBase, kMaxBase), a is finite
  /// and alpha_min is positive and finite.
  ProposedParams(double a, double b, double alpha_min = kDefaultAlphaMin);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double alpha_min() const noexcept { return alpha_min_; }
  /// ln b, strictly negative.
  double log_b() const noexcept { return log_b_; }

  friend bool operator==(const ProposedParams&, const ProposedParams&) = default;

 private:
  double a_;
  double b_;
  double alpha_min_;
  double log_b_;
};

/// Headway interval [t1, t2]; t2 may be kInfinity.
struct Interval {
  double t1;
  double t2;
};

namespace proposed {

/// b^|t - a|. Equals 1 at t = a.
double unnormalized_density(const ProposedParams& p, double t);

/// Z = integral of b^|t - a| over [alpha_min, inf):
///   (b^(a - alpha) - 2) / ln b   when a > alpha,
///   -b^(alpha - a) / ln b        when a <= alpha.
double normalization_constant(const ProposedParams& p);
double log_normalization_constant(const ProposedParams& p);

double pdf(const ProposedParams& p, double t);

/// |t - a| ln b - ln Z on the support, -inf below alpha_min.
double log_pdf(const ProposedParams& p, double t);

/// Closed-form P(t1 <= h <= t2). The branch is picked from the ordering of
/// (alpha_min, t1, a, t2); t1 == a goes to the branch with both ends at or
/// above the mode. Throws InvalidArgument if t1 < alpha_min or t2 < t1.
double interval_prob(const ProposedParams& p, Interval iv);

double cdf(const ProposedParams& p, double t);

/// Analytic inverse of cdf. quantile(0) = alpha_min, quantile(1) = inf.
/// Throws InvalidArgument for u outside [0, 1].
double quantile(const ProposedParams& p, double u);

/// n inverse-transform draws. Deterministic in `seed`.
std::vector<double> sample(const ProposedParams& p, std::size_t n, std::uint64_t seed);

}  // namespace proposed
}  // namespace headway
