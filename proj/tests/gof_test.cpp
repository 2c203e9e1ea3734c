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

#include "headway/gof.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "headway/distributions.hpp"
#include "headway/error.hpp"
#include "json.hpp"

namespace headway::gof {
namespace {

double uniform01(double t) { return std::clamp(t, 0.0, 1.0); }

BinnedHistogram histogram(std::vector<double> edges, std::vector<std::uint64_t> counts) {
  BinnedHistogram h{std::move(edges), std::move(counts), 0};
  for (auto c : h.counts) h.n += c;
  return h;
}

// Alternating series, summed to convergence, valid away from 0.
double kolmogorov_series(double lambda) {
  double s = 0.0;
  for (int k = 1; k < 200; ++k) {
    s += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return s;
}

TEST(KolmogorovTest, SurvivalFunction) {
  EXPECT_EQ(kolmogorov_survival(0.0), 1.0);
  EXPECT_NEAR(kolmogorov_survival(1.3581), 0.05, 1e-4);
  EXPECT_NEAR(kolmogorov_survival(1.6276), 0.01, 1e-4);
  for (double l = 0.3; l < 4.0; l += 0.01) {
    EXPECT_NEAR(kolmogorov_survival(l), kolmogorov_series(l), 1e-12) << l;
  }
  double prev = 1.0;
  for (double l = 0.01; l < 3.0; l += 0.01) {
    const double q = kolmogorov_survival(l);
    EXPECT_LE(q, prev + 1e-15);
    EXPECT_GE(q, 0.0);
    prev = q;
  }
}

TEST(KsTest, PlottingPositionData) {
  const DistributionModel m(ProposedParams(0.936, 0.540));
  for (int n : {1, 10, 250}) {
    std::vector<double> x;
    for (int i = 1; i <= n; ++i) x.push_back(quantile(m, (i - 0.5) / n));
    EXPECT_NEAR(ks_test_model(x, m).d_statistic, 0.5 / n, 1e-12);
  }
}

TEST(KsTest, HandEnumeration) {
  const double x[] = {2.0, 1.0};
  const auto r = ks_test(x, [](double t) { return std::clamp(t / 4.0, 0.0, 1.0); });
  EXPECT_DOUBLE_EQ(r.d_statistic, 0.5);
  EXPECT_EQ(r.n, 2u);
  EXPECT_THROW(ks_test(std::span<const double>(), uniform01), InvalidArgument);
}

TEST(KsTest, InvariantUnderMonotoneTransform) {
  const DistributionModel m(Weibull{1.481, 2.473});
  const auto x = sample(m, 2000, 3);
  std::vector<double> y;
  for (double v : x) y.push_back(std::log(v));
  const double d1 = ks_test_model(x, m).d_statistic;
  const double d2 = ks_test(y, [&](double t) { return cdf(m, std::exp(t)); }).d_statistic;
  EXPECT_NEAR(d1, d2, 1e-14);
}

TEST(KsTest, SelfConsistencyAcrossSeeds) {
  const DistributionModel m(ProposedParams(0.936, 0.540));
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    if (ks_test_model(sample(m, 100000, seed), m).p_value > 0.01) ++passed;
  }
  EXPECT_GE(passed, 98);
}

TEST(KsTwoSampleTest, Examples) {
  const double a[] = {1.0, 3.0}, b[] = {2.0, 4.0}, one[] = {1.0}, two[] = {2.0};
  EXPECT_EQ(ks_test_two_sample(a, a).d_statistic, 0.0);
  EXPECT_EQ(ks_test_two_sample(one, two).d_statistic, 1.0);
  EXPECT_EQ(ks_test_two_sample(a, b).d_statistic, 0.5);
  EXPECT_THROW(ks_test_two_sample(a, std::span<const double>()), InvalidArgument);
}

TEST(KsTwoSampleTest, SymmetricWithEffectiveSize) {
  std::mt19937_64 gen(9);
  std::normal_distribution<double> nd;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> x(30 + rep), y(70 - rep);
    for (auto& v : x) v = nd(gen);
    for (auto& v : y) v = nd(gen) + 0.3;
    const auto xy = ks_test_two_sample(x, y);
    const auto yx = ks_test_two_sample(y, x);
    EXPECT_EQ(xy.d_statistic, yx.d_statistic);
    EXPECT_EQ(xy.p_value, yx.p_value);
    const double ne = double(x.size()) * y.size() / (x.size() + y.size());
    EXPECT_NEAR(xy.p_value, kolmogorov_survival(std::sqrt(ne) * xy.d_statistic), 1e-15);
  }
}

TEST(MergeTest, Rules) {
  const std::uint64_t a[] = {3, 4, 10};
  EXPECT_EQ(merge_groups(a), (std::vector<std::size_t>{0, 2}));
  const std::uint64_t b[] = {10, 10, 3};
  EXPECT_EQ(merge_groups(b), (std::vector<std::size_t>{0, 1}));
  const std::uint64_t c[] = {5, 0, 0, 6, 1, 1, 1, 1, 1, 2};
  EXPECT_EQ(merge_groups(c), (std::vector<std::size_t>{0, 1, 4}));
}

TEST(ChiSquareTest, HandCases) {
  const std::vector<double> edges = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto even = chi_square_test(histogram(edges, {10, 10, 10, 10}), uniform01, 0);
  EXPECT_EQ(even.statistic, 0.0);
  EXPECT_EQ(even.p_value, 1.0);
  const auto skew = chi_square_test(histogram(edges, {16, 8, 8, 8}), uniform01, 0);
  EXPECT_DOUBLE_EQ(skew.statistic, 4.8);
  EXPECT_EQ(skew.dof, 3);
  EXPECT_NEAR(skew.p_value, 0.18710, 1e-4);
  EXPECT_EQ(skew.merged_observed, (std::vector<std::uint64_t>{16, 8, 8, 8}));
  const auto fitted = chi_square_test(histogram(edges, {16, 8, 8, 8}), uniform01, 1);
  EXPECT_EQ(fitted.dof, 2);
  EXPECT_DOUBLE_EQ(fitted.statistic, 4.8);
}

TEST(ChiSquareTest, MergedBinsAndExpectedMass) {
  const DistributionModel m(GammaDist{2.335, 1.055});
  auto x = sample(m, 3000, 4);
  std::erase_if(x, [](double v) { return v < 0.5 || v > 25.0; });
  BinnedHistogram h{default_edges(), std::vector<std::uint64_t>(49, 0), 0};
  for (double v : x) {
    const auto k = std::min<std::size_t>(48, static_cast<std::size_t>((v - 0.5) / 0.5));
    ++h.counts[k];
    ++h.n;
  }
  const auto r = chi_square_test(h, m, 2);
  double e = 0.0;
  for (std::size_t i = 0; i < r.merged_observed.size(); ++i) {
    EXPECT_GE(r.merged_observed[i], 5u);
    e += r.merged_expected[i];
  }
  EXPECT_NEAR(e, double(h.n), 1e-9 * h.n);
  EXPECT_EQ(r.dof, int(r.merged_observed.size()) - 1 - 2);
  EXPECT_EQ(r.merged_edges.size(), r.merged_observed.size() + 1);
}

TEST(ChiSquareTest, InsufficientBins) {
  const std::vector<double> edges = {0.0, 0.5, 1.0};
  EXPECT_THROW(chi_square_test(histogram(edges, {20, 20}), uniform01, 1), DataError);
  EXPECT_THROW(chi_square_test(histogram(edges, {2, 2}), uniform01, 0), DataError);
}

TEST(ChiSquareTest, DeterministicOverRandomHistograms) {
  std::mt19937_64 gen(10);
  std::uniform_int_distribution<int> count(0, 12);
  const auto run = [&](std::mt19937_64 g) {
    std::size_t hash = 0;
    for (int rep = 0; rep < 1000; ++rep) {
      std::vector<std::uint64_t> c(12);
      for (auto& v : c) v = count(g);
      std::vector<double> edges;
      for (int i = 0; i <= 12; ++i) edges.push_back(i / 12.0);
      try {
        const auto r = chi_square_test(histogram(edges, c), uniform01, 0);
        hash = hash * 31 + std::hash<double>{}(r.statistic) + r.merged_edges.size();
      } catch (const DataError&) {
        hash = hash * 31 + 7;
      }
    }
    return hash;
  };
  EXPECT_EQ(run(gen), run(gen));
}

TEST(KlTest, HandCases) {
  const double p[] = {0.5, 0.5}, q[] = {0.25, 0.75};
  EXPECT_NEAR(kl_divergence(p, q), 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0), 1e-15);
  EXPECT_NEAR(kl_divergence(p, q), 0.1438, 1e-4);
  EXPECT_NE(kl_divergence(p, q), kl_divergence(q, p));
  EXPECT_EQ(kl_divergence(p, p), 0.0);
  const double point[] = {1.0, 0.0};
  EXPECT_NEAR(kl_divergence(point, q), -std::log(0.25), 1e-15);
  const double hole[] = {1.0, 0.0};
  EXPECT_THROW(kl_divergence(p, hole), DataError);
}

TEST(KlTest, NonNegativeOnRandomPairs) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> p(8), q(8);
    double sp = 0, sq = 0;
    for (int i = 0; i < 8; ++i) sp += p[i] = u(gen), sq += q[i] = u(gen);
    for (int i = 0; i < 8; ++i) p[i] /= sp, q[i] /= sq;
    EXPECT_GE(kl_divergence(p, q), 0.0);
  }
}

TEST(KlTest, BinnedAgainstModel) {
  const std::vector<double> edges = {0.0, 0.25, 0.5, 0.75, 1.0};
  EXPECT_NEAR(kl_divergence_binned(histogram(edges, {10, 10, 10, 10}), uniform01), 0.0, 1e-12);
  // Renormalized over the binned range: only half the uniform mass lies in [0, 0.5].
  const std::vector<double> half = {0.0, 0.25, 0.5};
  EXPECT_NEAR(kl_divergence_binned(histogram(half, {5, 5}), uniform01), 0.0, 1e-12);
  EXPECT_NEAR(kl_divergence_binned(histogram(edges, {40, 0, 0, 0}), uniform01), std::log(4.0),
              1e-12);
  const DistributionModel sexp(ShiftedExponential{1.0, 2.0});
  EXPECT_THROW(kl_divergence_binned(histogram({0.5, 1.0, 2.5}, {3, 3}), sexp), DataError);
}

TEST(WassersteinTest, HandCases) {
  const double x[] = {1.0, 2.0}, y[] = {4.0, 2.0}, zero[] = {0.0};
  EXPECT_EQ(wasserstein_samples(x, y), 1.5);
  EXPECT_NEAR(wasserstein_samples(x, y, 2.0), std::sqrt(2.5), 1e-15);
  EXPECT_EQ(wasserstein_distance(zero, [](double) { return 3.0; }), 3.0);
  EXPECT_THROW(wasserstein_samples(x, zero), InvalidArgument);
  EXPECT_THROW(wasserstein_samples(x, y, 0.5), InvalidArgument);
}

TEST(WassersteinTest, ZeroAtPlottingPositions) {
  const DistributionModel m(Burr{10.609, 0.203, 3.387});
  std::vector<double> x;
  for (int i = 1; i <= 500; ++i) x.push_back(quantile(m, (i - 0.5) / 500));
  std::shuffle(x.begin(), x.end(), std::mt19937_64(1));
  EXPECT_EQ(wasserstein_distance(x, m), 0.0);
}

TEST(WassersteinTest, TriangleInequality) {
  std::mt19937_64 gen(12);
  std::exponential_distribution<double> e(0.7);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> a(40), b(40), c(40);
    for (auto* v : {&a, &b, &c}) {
      for (auto& t : *v) t = e(gen) + rep * 0.01;
    }
    EXPECT_LE(wasserstein_samples(a, c),
              wasserstein_samples(a, b) + wasserstein_samples(b, c) + 1e-12);
  }
}

std::vector<double> filtered_sample(const DistributionModel& m, std::size_t n, std::uint64_t seed) {
  auto x = sample(m, n, seed);
  std::erase_if(x, [](double v) { return v < 0.5 || v > 25.0; });
  return x;
}

BinnedHistogram bin_default(std::span<const double> x) {
  BinnedHistogram h{default_edges(), std::vector<std::uint64_t>(49, 0), 0};
  for (double v : x) {
    ++h.counts[std::min<std::size_t>(48, static_cast<std::size_t>((v - 0.5) / 0.5))];
    ++h.n;
  }
  return h;
}

TEST(EvaluateAllTest, TruthScoresWell) {
  const DistributionModel m(ProposedParams(0.936, 0.540));
  const auto x = filtered_sample(m, 100000, 13);
  const auto row = evaluate_all("fixture", x, bin_default(x), m, 2);
  ASSERT_TRUE(row.ks && row.chi2 && row.kl_nats && row.wasserstein);
  EXPECT_GT(row.ks->p_value, 0.05);
  EXPECT_LT(*row.kl_nats, 0.01);
  EXPECT_LT(*row.wasserstein, 0.05);
  EXPECT_TRUE(row.errors.empty());
  const auto again = evaluate_all("fixture", x, bin_default(x), m, 2);
  EXPECT_EQ(to_json(std::span(&row, 1)), to_json(std::span(&again, 1)));
}

TEST(EvaluateAllTest, HeavyTailPrefersBurrOverGamma) {
  const DistributionModel burr(Burr{10.609, 0.203, 3.387});
  const DistributionModel gamma(GammaDist{4.654, 0.794});
  const auto x = filtered_sample(burr, 20000, 14);
  const auto h = bin_default(x);
  EXPECT_GT(*evaluate_all("lyft", x, h, gamma, 2).kl_nats,
            *evaluate_all("lyft", x, h, burr, 3).kl_nats);
}

TEST(EvaluateAllTest, MarksFailedMetricWithoutAborting) {
  const DistributionModel m(ShiftedExponential{0.584, 0.5});
  const double x[] = {0.7, 0.9, 1.2};
  const auto h = bin_default(x);
  const auto row = evaluate_all("tiny", x, h, m, 2);
  EXPECT_FALSE(row.chi2.has_value());
  EXPECT_TRUE(row.errors.count("chi2"));
  EXPECT_TRUE(row.ks.has_value());
  EXPECT_TRUE(row.kl_nats.has_value());
  const auto skipped = evaluate_all("tiny", x, h, m, 2, {1.0, true});
  EXPECT_EQ(skipped.errors.at("chi2"), "skipped");
}

TEST(SerializationTest, CsvAndJsonLayout) {
  const DistributionModel m(ProposedParams(0.936, 0.540));
  const auto x = filtered_sample(m, 2000, 15);
  const GofRow rows[] = {evaluate_all("highD-like", x, bin_default(x), m, 2)};
  const auto csv = to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "dataset,distribution,ks_d,ks_p,chi2,chi2_dof,chi2_p,kl_nats,wasserstein_s");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  const auto j = nlohmann::json::parse(to_json(rows));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["distribution"], "proposed");
  EXPECT_DOUBLE_EQ(j[0]["ks_d"].get<double>(), rows[0].ks->d_statistic);
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace headway::gof
