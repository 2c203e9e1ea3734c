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
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "headway/distributions.hpp"

namespace headway::gof {

using CdfFunction = std::function<double(double)>;
using QuantileFunction = std::function<double(double)>;

/// Bin edges 0.5, 1.0, ..., 25.0 (49 bins of 0.5 s).
std::vector<double> default_edges();

struct BinnedHistogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t n = 0;

  std::size_t bin_count() const noexcept { return counts.size(); }
};

/// Throws InvalidArgument unless edges ascend strictly, counts has one entry
/// per bin and the counts sum to n.
void validate(const BinnedHistogram& hist);

struct KsResult {
  double d_statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  std::vector<double> merged_edges;
  std::vector<std::uint64_t> merged_observed;
  std::vector<double> merged_expected;
};

struct DivergencePair {
  double kl_nats = 0.0;
  double wasserstein = 0.0;
};

/// Asymptotic Kolmogorov upper tail P(K > lambda) with lambda = sqrt(n) D.
double kolmogorov_survival(double lambda);

/// One-sample KS test of `data` against a continuous CDF.
/// D = max_i max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|) over the sorted sample.
KsResult ks_test(std::span<const double> data, const CdfFunction& cdf);
KsResult ks_test_model(std::span<const double> data, const DistributionModel& model);

/// Two-sample KS test; the p-value uses n_eff = nx ny / (nx + ny).
KsResult ks_test_two_sample(std::span<const double> x, std::span<const double> y);

/// Groups adjacent bins left to right until every group holds at least
/// `min_count` observations; a deficient trailing group joins its left
/// neighbour. Returns the first bin index of each group.
std::vector<std::size_t> merge_groups(std::span<const std::uint64_t> counts,
                                      std::uint64_t min_count = 5);

/// Pearson chi-square with merged bins. Expected counts come from the CDF
/// with the first bin opened to -inf and the last to +inf, so they sum to n.
/// dof = groups - 1 - n_params. Throws DataError ("insufficient bins") when
/// fewer than n_params + 2 groups remain.
ChiSquareResult chi_square_test(const BinnedHistogram& hist, const CdfFunction& cdf,
                                std::size_t n_params);
ChiSquareResult chi_square_test(const BinnedHistogram& hist, const DistributionModel& model,
                                std::size_t n_params);

/// sum P ln(P / Q) over entries with P > 0, in nats. Throws DataError when
/// some P > 0 meets Q = 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// KL of observed bin frequencies (P) from the model's bin probabilities (Q),
/// the latter renormalized over the histogram range.
double kl_divergence_binned(const BinnedHistogram& observed, const CdfFunction& cdf);
double kl_divergence_binned(const BinnedHistogram& observed, const DistributionModel& model);

/// ((1/n) sum |x_(i) - y_(i)|^p)^(1/p) over sorted equal-size samples.
double wasserstein_samples(std::span<const double> x, std::span<const double> y,
                           double order = 1.0);

/// Wasserstein distance between data and a model represented by its
/// quantiles at plotting positions (i - 0.5) / n. No randomness involved.
double wasserstein_distance(std::span<const double> data, const QuantileFunction& quantile,
                            double order = 1.0);
double wasserstein_distance(std::span<const double> data, const DistributionModel& model,
                            double order = 1.0);

struct EvaluateOptions {
  double wasserstein_order = 1.0;
  bool skip_chi2 = false;
};

/// One report row: the four metrics for a (dataset, model) pair. A metric that
/// fails is left empty and its message stored in `errors` under the metric key
/// ("ks", "chi2", "kl", "wasserstein").
struct GofRow {
  std::string dataset;
  Family family = Family::kProposed;
  std::optional<KsResult> ks;
  std::optional<ChiSquareResult> chi2;
  std::optional<double> kl_nats;
  std::optional<double> wasserstein;
  std::map<std::string, std::string> errors;
};

GofRow evaluate_all(std::string dataset, std::span<const double> data,
                    const BinnedHistogram& hist, const DistributionModel& model,
                    std::size_t n_params, const EvaluateOptions& options = {});

/// Column order of the flattened report.
inline constexpr const char* kCsvColumns[] = {"ks_d",   "ks_p",   "chi2",         "chi2_dof",
                                              "chi2_p", "kl_nats", "wasserstein_s"};

/// Metric cells in kCsvColumns order; missing metrics are empty strings.
std::vector<std::string> metric_cells(const GofRow& row);

/// "dataset,distribution,ks_d,...,wasserstein_s" followed by one line per row.
std::string to_csv(std::span<const GofRow> rows);
/// JSON array of row objects with the same field names plus "errors".
std::string to_json(std::span<const GofRow> rows);

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

}  // namespace headway::gof
