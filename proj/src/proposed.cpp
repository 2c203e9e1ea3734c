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

#include "headway/proposed.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "headway/error.hpp"
#include "headway/random.hpp"

namespace headway {

ProposedParams::ProposedParams(double a, double b, double alpha_min)
    : a_(a), b_(b), alpha_min_(alpha_min), log_b_(0.0) {
  if (!std::isfinite(a)) {
    throw InvalidArgument("proposed: a must be finite");
  }
  if (!(b > kMinBase && b < kMaxBase)) {
    throw InvalidArgument("proposed: b must lie strictly inside (0, 1), got " +
                          std::to_string(b));
  }
  if (!(alpha_min > 0.0) || !std::isfinite(alpha_min)) {
    throw InvalidArgument("proposed: alpha_min must be positive and finite");
  }
  log_b_ = std::log(b);
}

namespace proposed {

namespace {

// b^x evaluated as exp(x ln b).
double power(const ProposedParams& p, double x) { return std::exp(x * p.log_b()); }

// b^x - 1 without cancellation for small x.
double power_m1(const ProposedParams& p, double x) { return std::expm1(x * p.log_b()); }

bool mode_inside_support(const ProposedParams& p) { return p.a() > p.alpha_min(); }

// 2 - b^(a - alpha), the Z ln b factor shared by the branches with a > alpha.
double mode_denominator(const ProposedParams& p) {
  return 1.0 - power_m1(p, p.a() - p.alpha_min());
}

}  // namespace

double unnormalized_density(const ProposedParams& p, double t) {
  return power(p, std::fabs(t - p.a()));
}

double normalization_constant(const ProposedParams& p) {
  if (mode_inside_support(p)) {
    return mode_denominator(p) / -p.log_b();
  }
  return power(p, p.alpha_min() - p.a()) / -p.log_b();
}

double log_normalization_constant(const ProposedParams& p) {
  if (mode_inside_support(p)) {
    return std::log(mode_denominator(p)) - std::log(-p.log_b());
  }
  return (p.alpha_min() - p.a()) * p.log_b() - std::log(-p.log_b());
}

double pdf(const ProposedParams& p, double t) {
  if (t < p.alpha_min()) return 0.0;
  return std::exp(log_pdf(p, t));
}

double log_pdf(const ProposedParams& p, double t) {
  if (t < p.alpha_min()) return -kInfinity;
  return std::fabs(t - p.a()) * p.log_b() - log_normalization_constant(p);
}

double interval_prob(const ProposedParams& p, Interval iv) {
  const double t1 = iv.t1;
  const double t2 = iv.t2;
  if (!(t1 >= p.alpha_min())) {
    throw InvalidArgument("interval_prob: t1 = " + std::to_string(t1) +
                          " lies below alpha_min = " + std::to_string(p.alpha_min()));
  }
  if (!(t2 >= t1)) {
    throw InvalidArgument("interval_prob: t2 must not be below t1");
  }
  if (t1 == t2) return 0.0;

  const double a = p.a();
  const bool open_end = std::isinf(t2);
  double prob;
  if (!mode_inside_support(p)) {
    // a <= alpha: (b^(t2-a) - b^(t1-a)) / -b^(alpha-a) = b^(t1-alpha) - b^(t2-alpha)
    const double head = power(p, t1 - p.alpha_min());
    prob = open_end ? head : -head * power_m1(p, t2 - t1);
  } else if (t1 >= a) {
    // alpha <= a <= t1, t2: (b^(t2-a) - b^(t1-a)) / (b^(a-alpha) - 2)
    const double head = power(p, t1 - a);
    prob = (open_end ? head : -head * power_m1(p, t2 - t1)) / mode_denominator(p);
  } else if (t2 <= a) {
    // alpha <= t1, t2 <= a: (b^(a-t1) - b^(a-t2)) / (b^(a-alpha) - 2)
    prob = -power(p, a - t2) * power_m1(p, t2 - t1) / mode_denominator(p);
  } else {
    // alpha <= t1 < a < t2: (b^(a-t1) + b^(t2-a) - 2) / (b^(a-alpha) - 2)
    const double right = open_end ? 1.0 : -power_m1(p, t2 - a);
    prob = (-power_m1(p, a - t1) + right) / mode_denominator(p);
  }
  return std::clamp(prob, 0.0, 1.0);
}

double cdf(const ProposedParams& p, double t) {
  if (t <= p.alpha_min()) return 0.0;
  return interval_prob(p, {p.alpha_min(), t});
}

double quantile(const ProposedParams& p, double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw InvalidArgument("quantile: probability outside [0, 1]: " + std::to_string(u));
  }
  if (u == 0.0) return p.alpha_min();
  if (u == 1.0) return kInfinity;

  const double lb = p.log_b();
  if (!mode_inside_support(p)) {
    // cdf = 1 - b^(t - alpha)
    return p.alpha_min() + std::log1p(-u) / lb;
  }
  const double a = p.a();
  const double denom = mode_denominator(p);
  const double at_mode = -power_m1(p, a - p.alpha_min()) / denom;
  if (u <= at_mode) {
    // cdf = (b^(a-t) - b^(a-alpha)) / denom
    const double t = a - std::log(u * denom + power(p, a - p.alpha_min())) / lb;
    return std::clamp(t, p.alpha_min(), a);
  }
  // cdf = 1 - b^(t-a) / denom
  const double t = a + (std::log1p(-u) + std::log(denom)) / lb;
  return std::max(t, a);
}

std::vector<double> sample(const ProposedParams& p, std::size_t n, std::uint64_t seed) {
  constexpr double kClamp = 1e-15;
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(quantile(p, std::clamp(rng.uniform(), kClamp, 1.0 - kClamp)));
  }
  return out;
}

}  // namespace proposed
}  // namespace headway
