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

#include "headway/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "headway/error.hpp"
#include "headway/gof.hpp"
#include "oracles.hpp"

namespace headway {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reference densities, written out directly.
double sln_pdf(double mu, double sigma, double gamma, double t) {
  if (t <= gamma) return 0.0;
  const double z = (std::log(t - gamma) - mu) / sigma;
  return std::exp(-0.5 * z * z) / ((t - gamma) * sigma * std::sqrt(kTwoPi));
}
double weibull_pdf(double a, double b, double t) {
  return a * std::pow(t, a - 1.0) * std::exp(-std::pow(t / b, a)) / std::pow(b, a);
}
double loglogistic_pdf(double a, double b, double t) {
  const double r = std::pow(t / b, a);
  return (a / b) * std::pow(t / b, a - 1.0) / ((1.0 + r) * (1.0 + r));
}
double gamma_pdf(double a, double b, double t) {
  return std::pow(b, a) / std::tgamma(a) * std::pow(t, a - 1.0) * std::exp(-b * t);
}
double burr_pdf(double a, double b, double l, double t) {
  return a * b / l * std::pow(t / l, a - 1.0) * std::pow(1.0 + std::pow(t / l, a), -b - 1.0);
}
double sexp_pdf(double l, double g, double t) { return t < g ? 0.0 : l * std::exp(-l * (t - g)); }

DistributionModel random_model(Family f, std::mt19937_64& gen) {
  auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
  switch (f) {
    case Family::kProposed: return ProposedParams(u(-2.0, 8.0), u(0.05, 0.95));
    case Family::kShiftedLogNormal: return ShiftedLogNormal{u(-1.0, 2.0), u(0.2, 1.5), u(-2.0, 1.0)};
    case Family::kWeibull: return Weibull{u(0.5, 5.0), u(0.5, 8.0)};
    case Family::kLogLogistic: return LogLogistic{u(1.0, 6.0), u(0.5, 6.0)};
    case Family::kGamma: return GammaDist{u(0.5, 8.0), u(0.2, 3.0)};
    case Family::kBurr: return Burr{u(1.0, 8.0), u(0.5, 3.0), u(0.5, 5.0)};
    case Family::kShiftedExponential: return ShiftedExponential{u(0.1, 3.0), u(-1.0, 1.0)};
  }
  throw std::logic_error("unreachable");
}

// Integral of the pdf over [lo, hi], split at the proposed family's kink.
double mass_between(const DistributionModel& m, double lo, double hi) {
  const auto f = [&](double t) { return pdf(m, t); };
  if (const auto* p = std::get_if<ProposedParams>(&m.params()); p && lo < p->a() && p->a() < hi) {
    return testing::integrate_singular(f, lo, p->a()) + testing::integrate_singular(f, p->a(), hi);
  }
  return testing::integrate_singular(f, lo, hi);
}

double total_mass(const DistributionModel& m) {
  const double lo = m.support_lower_bound();
  double mid = quantile(m, 0.5);
  if (const auto* p = std::get_if<ProposedParams>(&m.params())) mid = std::max(mid, p->a());
  return mass_between(m, lo, mid) +
         testing::integrate_to_infinity([&](double t) { return pdf(m, t); }, mid);
}

TEST(FamilyTest, NamesRoundTrip) {
  for (Family f : kAllFamilies) {
    EXPECT_EQ(family_from_name(family_name(f)), f);
  }
  EXPECT_EQ(family_from_name("Burr"), Family::kBurr);
  EXPECT_FALSE(family_from_name("cauchy").has_value());
  EXPECT_EQ(parameter_count(Family::kBurr), 3u);
  EXPECT_TRUE(has_shift_parameter(Family::kShiftedLogNormal));
  EXPECT_FALSE(has_shift_parameter(Family::kGamma));
}

TEST(ModelTest, VectorRoundTripAndValidation) {
  std::mt19937_64 gen(1);
  for (Family f : kAllFamilies) {
    const auto m = random_model(f, gen);
    EXPECT_EQ(m.family(), f);
    EXPECT_EQ(DistributionModel::from_vector(f, m.to_vector()), m);
  }
  EXPECT_THROW(DistributionModel(Weibull{-1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(DistributionModel(ShiftedLogNormal{0.0, 0.0, 0.0}), InvalidArgument);
  const double two[] = {1.0, 2.0};
  EXPECT_THROW(DistributionModel::from_vector(Family::kBurr, two), InvalidArgument);
}

TEST(BaselinePdfTest, Examples) {
  EXPECT_NEAR(pdf(GammaDist{1.0, 1.0}, 1e-12), 1.0, 1e-11);
  EXPECT_NEAR(pdf(ShiftedExponential{0.584, 0.500}, 0.5), 0.584, 1e-15);
  EXPECT_NEAR(pdf(Weibull{1.0, 2.0}, 2.0), 0.5 * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(pdf(Weibull{1.0, 2.0}, 2.0), 0.1839, 1e-4);
  EXPECT_NEAR(log_pdf(Burr{1.0, 1.0, 1.0}, 1.0), std::log(0.25), 1e-15);
  EXPECT_EQ(log_pdf(ShiftedExponential{0.584, 0.5}, 0.4), -kInfinity);
  EXPECT_EQ(pdf(ShiftedLogNormal{0.2, 0.9, 0.4}, 0.4), 0.0);
  EXPECT_EQ(pdf(GammaDist{2.0, 1.0}, -1.0), 0.0);
}

TEST(BaselinePdfTest, MatchesTableFormulas) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 50; ++i) {
    const auto sln = std::get<ShiftedLogNormal>(random_model(Family::kShiftedLogNormal, gen).params());
    const auto wb = std::get<Weibull>(random_model(Family::kWeibull, gen).params());
    const auto ll = std::get<LogLogistic>(random_model(Family::kLogLogistic, gen).params());
    const auto gm = std::get<GammaDist>(random_model(Family::kGamma, gen).params());
    const auto br = std::get<Burr>(random_model(Family::kBurr, gen).params());
    const auto se = std::get<ShiftedExponential>(random_model(Family::kShiftedExponential, gen).params());
    for (double t = 0.05; t < 30.0; t *= 1.3) {
      auto close = [](double got, double want) {
        EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, want));
      };
      close(pdf(sln, t), sln_pdf(sln.mu, sln.sigma, sln.gamma_shift, t));
      close(pdf(wb, t), weibull_pdf(wb.shape_alpha, wb.scale_beta, t));
      close(pdf(ll, t), loglogistic_pdf(ll.shape_alpha, ll.scale_beta, t));
      close(pdf(gm, t), gamma_pdf(gm.shape_alpha, gm.rate_beta, t));
      close(pdf(br, t), burr_pdf(br.shape_alpha, br.shape_beta, br.scale_lambda, t));
      close(pdf(se, t), sexp_pdf(se.rate_lambda, se.gamma_shift, t));
    }
  }
}

TEST(BaselinePdfTest, LogPdfAgreesWithPdf) {
  std::mt19937_64 gen(3);
  for (Family f : kAllFamilies) {
    for (int i = 0; i < 20; ++i) {
      const auto m = random_model(f, gen);
      for (double u = 0.01; u < 1.0; u += 0.01) {
        const double t = quantile(m, u);
        const double p = pdf(m, t);
        EXPECT_NEAR(std::exp(log_pdf(m, t)), p, 1e-12 * p) << family_name(f);
      }
    }
  }
}

TEST(BaselinePdfTest, ShiftedLogNormalWithZeroShiftIsLogNormal) {
  for (double t = 0.01; t < 20.0; t *= 1.2) {
    const double plain = std::exp(-std::pow(std::log(t) - 0.3, 2) / (2 * 0.8 * 0.8)) /
                         (t * 0.8 * std::sqrt(kTwoPi));
    EXPECT_NEAR(pdf(ShiftedLogNormal{0.3, 0.8, 0.0}, t), plain, 1e-14);
  }
}

TEST(BaselineIntegrityTest, DensitiesIntegrateToOne) {
  std::mt19937_64 gen(4);
  for (Family f : kAllFamilies) {
    for (int i = 0; i < 50; ++i) {
      const auto m = random_model(f, gen);
      EXPECT_NEAR(total_mass(m), 1.0, 1e-8) << family_name(f) << " draw " << i;
    }
  }
}

TEST(BaselineCdfTest, Examples) {
  EXPECT_NEAR(cdf(LogLogistic{2.574, 1.719}, 1.719), 0.5, 1e-15);
  EXPECT_NEAR(cdf(ShiftedExponential{0.584, 0.5}, 1.5), 1.0 - std::exp(-0.584), 1e-15);
  EXPECT_NEAR(cdf(ShiftedExponential{0.584, 0.5}, 1.5), 0.4423, 1e-4);
  EXPECT_EQ(cdf(ShiftedExponential{0.584, 0.5}, 0.5), 0.0);
  EXPECT_EQ(cdf(Weibull{1.5, 2.0}, 0.0), 0.0);
}

TEST(BaselineCdfTest, GammaMatchesQuadrature) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> ut(0.01, 1.0);
  for (int i = 0; i < 100; ++i) {
    const auto m = random_model(Family::kGamma, gen);
    const auto g = std::get<GammaDist>(m.params());
    const double t = quantile(m, ut(gen));
    const double want = testing::integrate_singular(
        [&](double s) { return gamma_pdf(g.shape_alpha, g.rate_beta, s); }, 0.0, t);
    EXPECT_NEAR(cdf(m, t), want, 1e-8);
    EXPECT_NEAR(cdf(m, t), boost::math::gamma_p(g.shape_alpha, g.rate_beta * t), 1e-12);
  }
}

TEST(BaselineCdfTest, EveryFamilyMatchesQuadrature) {
  std::mt19937_64 gen(6);
  for (Family f : kAllFamilies) {
    for (int i = 0; i < 10; ++i) {
      const auto m = random_model(f, gen);
      const double lo = m.support_lower_bound();
      for (double u : {0.1, 0.5, 0.9}) {
        const double t = quantile(m, u);
        const double want = mass_between(m, lo, t);
        EXPECT_NEAR(cdf(m, t), want, 1e-8) << family_name(f);
      }
    }
  }
}

TEST(BaselineCdfTest, BurrCdfDerivativeIsPdf) {
  const Burr burr{10.609, 0.203, 3.387};
  for (double t = 0.5; t < 25.0; t += 0.25) {
    const double closed = 1.0 - std::pow(1.0 + std::pow(t / 3.387, 10.609), -0.203);
    EXPECT_NEAR(cdf(burr, t), closed, 1e-12);
    const double h = 1e-3;
    const double d = (-cdf(burr, t + 2 * h) + 8 * cdf(burr, t + h) - 8 * cdf(burr, t - h) +
                      cdf(burr, t - 2 * h)) /
                     (12 * h);
    EXPECT_NEAR(d, pdf(burr, t), 1e-9 * std::max(1.0, pdf(burr, t)) + 1e-9);
  }
}

TEST(BaselineQuantileTest, Examples) {
  EXPECT_NEAR(quantile(LogLogistic{2.574, 1.719}, 0.5), 1.719, 1e-15);
  EXPECT_NEAR(quantile(Weibull{2.0, 1.0}, 1.0 - std::exp(-1.0)), 1.0, 1e-15);
  EXPECT_THROW(quantile(Weibull{2.0, 1.0}, 1.5), InvalidArgument);
  EXPECT_THROW(quantile(GammaDist{2.0, 1.0}, -0.5), InvalidArgument);
}

TEST(BaselineQuantileTest, RoundTrip) {
  std::mt19937_64 gen(7);
  for (Family f : kAllFamilies) {
    for (int i = 0; i < 20; ++i) {
      const auto m = random_model(f, gen);
      for (int k = 1; k < 1000; ++k) {
        const double u = k / 1000.0;
        EXPECT_NEAR(cdf(m, quantile(m, u)), u, 1e-9) << family_name(f);
      }
    }
  }
}

TEST(BaselineSampleTest, DeterministicAndInSupport) {
  std::mt19937_64 gen(8);
  for (Family f : kAllFamilies) {
    const auto m = random_model(f, gen);
    const auto x = sample(m, 1000, 17);
    EXPECT_EQ(x, sample(m, 1000, 17));
    for (double v : x) EXPECT_GE(v, m.support_lower_bound());
    EXPECT_TRUE(sample(m, 0, 17).empty());
  }
}

TEST(BaselineSampleTest, SelfKolmogorovSmirnov) {
  const DistributionModel models[] = {
      ProposedParams(0.936, 0.540),          ShiftedLogNormal{0.233, 0.899, 0.377},
      Weibull{1.481, 2.473},                 LogLogistic{2.574, 1.719},
      GammaDist{2.335, 1.055},               Burr{10.609, 0.203, 3.387},
      ShiftedExponential{0.584, 0.500}};
  for (const auto& m : models) {
    const auto x = sample(m, 100000, 2024);
    const auto ks = gof::ks_test_model(x, m);
    EXPECT_GT(ks.p_value, 0.01) << family_name(m.family()) << " D=" << ks.d_statistic;
  }
}

}  // namespace
}  // namespace headway
