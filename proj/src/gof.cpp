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
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "headway/error.hpp"
#include "headway/special_functions.hpp"

namespace headway::gof {

namespace {

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Model probability of each bin over [edges.front(), edges.back()].
std::vector<double> bin_probabilities(const std::vector<double>& edges, const CdfFunction& cdf) {
  std::vector<double> levels;
  levels.reserve(edges.size());
  for (double e : edges) levels.push_back(cdf(e));
  std::vector<double> probs;
  probs.reserve(edges.size() - 1);
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    probs.push_back(std::max(0.0, levels[k + 1] - levels[k]));
  }
  return probs;
}

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

}  // namespace

std::vector<double> default_edges() {
  std::vector<double> edges;
  edges.reserve(50);
  for (int k = 0; k <= 49; ++k) edges.push_back(0.5 + 0.5 * k);
  return edges;
}

void validate(const BinnedHistogram& hist) {
  if (hist.edges.size() < 2) throw InvalidArgument("histogram: need at least two edges");
  for (std::size_t k = 0; k + 1 < hist.edges.size(); ++k) {
    if (!(hist.edges[k] < hist.edges[k + 1])) {
      throw InvalidArgument("histogram: edges must ascend strictly");
    }
  }
  if (hist.counts.size() + 1 != hist.edges.size()) {
    throw InvalidArgument("histogram: counts must have one entry per bin");
  }
  std::uint64_t total = 0;
  for (auto c : hist.counts) total += c;
  if (total != hist.n) throw InvalidArgument("histogram: counts do not sum to n");
}

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // Jacobi theta form of the CDF, fast for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
      sum += term;
      if (term < 1e-16) break;
    }
    const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k < 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-12) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> data, const CdfFunction& cdf) {
  if (data.empty()) throw InvalidArgument("ks_test: data must not be empty");
  const auto x = sorted_copy(data);
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    const double upper = static_cast<double>(i + 1) / n;
    const double lower = static_cast<double>(i) / n;
    d = std::max({d, std::fabs(upper - f), std::fabs(lower - f)});
  }
  return {d, kolmogorov_survival(std::sqrt(n) * d), x.size()};
}

KsResult ks_test_model(std::span<const double> data, const DistributionModel& model) {
  return ks_test(data, [&model](double t) { return cdf(model, t); });
}

KsResult ks_test_two_sample(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw InvalidArgument("ks_test_two_sample: samples must not be empty");
  const auto a = sorted_copy(x);
  const auto b = sorted_copy(y);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double n_eff = na * nb / (na + nb);
  return {d, kolmogorov_survival(std::sqrt(n_eff) * d),
          static_cast<std::size_t>(std::llround(n_eff))};
}

std::vector<std::size_t> merge_groups(std::span<const std::uint64_t> counts,
                                      std::uint64_t min_count) {
  std::vector<std::size_t> starts;
  std::uint64_t running = 0;
  std::size_t open = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    running += counts[k];
    if (running >= min_count) {
      starts.push_back(open);
      open = k + 1;
      running = 0;
    }
  }
  if (open < counts.size()) {
    // Deficient tail joins the previous group (or stands alone if none).
    if (starts.empty()) starts.push_back(open);
  }
  return starts;
}

ChiSquareResult chi_square_test(const BinnedHistogram& hist, const CdfFunction& cdf,
                                std::size_t n_params) {
  validate(hist);
  if (hist.n == 0) throw InvalidArgument("chi_square_test: empty histogram");

  const std::size_t bins = hist.bin_count();
  std::vector<double> level(bins + 1);
  level.front() = 0.0;
  level.back() = 1.0;
  for (std::size_t k = 1; k < bins; ++k) level[k] = cdf(hist.edges[k]);

  const auto starts = merge_groups(hist.counts);
  const std::size_t groups = starts.size();
  if (groups < n_params + 2) {
    throw DataError("chi_square_test: insufficient bins (" + std::to_string(groups) +
                    " after merging, need " + std::to_string(n_params + 2) + ")");
  }

  ChiSquareResult result;
  const double n = static_cast<double>(hist.n);
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t begin = starts[g];
    const std::size_t end = g + 1 < groups ? starts[g + 1] : bins;
    std::uint64_t observed = 0;
    for (std::size_t k = begin; k < end; ++k) observed += hist.counts[k];
    const double expected = n * std::max(0.0, level[end] - level[begin]);
    result.merged_edges.push_back(hist.edges[begin]);
    result.merged_observed.push_back(observed);
    result.merged_expected.push_back(expected);
    const double diff = static_cast<double>(observed) - expected;
    if (expected > 0.0) {
      result.statistic += diff * diff / expected;
    } else if (observed > 0) {
      result.statistic = std::numeric_limits<double>::infinity();
    }
  }
  result.merged_edges.push_back(hist.edges.back());
  result.dof = static_cast<int>(groups - 1 - n_params);
  result.p_value = std::isinf(result.statistic)
                       ? 0.0
                       : special::chi_square_survival(result.statistic, result.dof);
  return result;
}

ChiSquareResult chi_square_test(const BinnedHistogram& hist, const DistributionModel& model,
                                std::size_t n_params) {
  return chi_square_test(hist, [&model](double t) { return cdf(model, t); }, n_params);
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw InvalidArgument("kl_divergence: size mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] <= 0.0) continue;
    if (!(q[k] > 0.0)) {
      throw DataError("kl_divergence: observed mass in bin " + std::to_string(k) +
                      " where the model has none; divergence undefined");
    }
    acc += p[k] * std::log(p[k] / q[k]);
  }
  return std::max(0.0, acc);
}

double kl_divergence_binned(const BinnedHistogram& observed, const CdfFunction& cdf) {
  validate(observed);
  if (observed.n == 0) throw InvalidArgument("kl_divergence_binned: empty histogram");
  auto q = bin_probabilities(observed.edges, cdf);
  double total = 0.0;
  for (double v : q) total += v;
  if (total > 0.0) {
    for (double& v : q) v /= total;
  }
  std::vector<double> p;
  p.reserve(observed.counts.size());
  for (auto c : observed.counts) {
    p.push_back(static_cast<double>(c) / static_cast<double>(observed.n));
  }
  return kl_divergence(p, q);
}

double kl_divergence_binned(const BinnedHistogram& observed, const DistributionModel& model) {
  return kl_divergence_binned(observed, [&model](double t) { return cdf(model, t); });
}

double wasserstein_samples(std::span<const double> x, std::span<const double> y, double order) {
  if (x.size() != y.size()) throw InvalidArgument("wasserstein: samples must have equal size");
  if (x.empty()) throw InvalidArgument("wasserstein: samples must not be empty");
  if (!(order >= 1.0)) throw InvalidArgument("wasserstein: order must be at least 1");
  const auto a = sorted_copy(x);
  const auto b = sorted_copy(y);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double gap = std::fabs(a[i] - b[i]);
    acc += order == 1.0 ? gap : std::pow(gap, order);
  }
  acc /= static_cast<double>(a.size());
  return order == 1.0 ? acc : std::pow(acc, 1.0 / order);
}

double wasserstein_distance(std::span<const double> data, const QuantileFunction& quantile,
                            double order) {
  if (data.empty()) throw InvalidArgument("wasserstein: data must not be empty");
  const double n = static_cast<double>(data.size());
  std::vector<double> reference;
  reference.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    reference.push_back(quantile((static_cast<double>(i) + 0.5) / n));
  }
  return wasserstein_samples(data, reference, order);
}

double wasserstein_distance(std::span<const double> data, const DistributionModel& model,
                            double order) {
  return wasserstein_distance(data, [&model](double u) { return quantile(model, u); }, order);
}

GofRow evaluate_all(std::string dataset, std::span<const double> data,
                    const BinnedHistogram& hist, const DistributionModel& model,
                    std::size_t n_params, const EvaluateOptions& options) {
  GofRow row;
  row.dataset = std::move(dataset);
  row.family = model.family();
  auto guarded = [&row](const char* key, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      row.errors[key] = e.what();
    }
  };
  guarded("ks", [&] { row.ks = ks_test_model(data, model); });
  if (options.skip_chi2) {
    row.errors["chi2"] = "skipped";
  } else {
    guarded("chi2", [&] { row.chi2 = chi_square_test(hist, model, n_params); });
  }
  guarded("kl", [&] { row.kl_nats = kl_divergence_binned(hist, model); });
  guarded("wasserstein", [&] {
    row.wasserstein = wasserstein_distance(data, model, options.wasserstein_order);
  });
  return row;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> metric_cells(const GofRow& row) {
  std::vector<std::string> cells;
  if (row.ks) {
    cells.push_back(format_number(row.ks->d_statistic));
    cells.push_back(format_number(row.ks->p_value));
  } else {
    cells.insert(cells.end(), 2, "");
  }
  if (row.chi2) {
    cells.push_back(format_number(row.chi2->statistic));
    cells.push_back(std::to_string(row.chi2->dof));
    cells.push_back(format_number(row.chi2->p_value));
  } else {
    cells.insert(cells.end(), 3, "");
  }
  cells.push_back(row.kl_nats ? format_number(*row.kl_nats) : "");
  cells.push_back(row.wasserstein ? format_number(*row.wasserstein) : "");
  return cells;
}

std::string to_csv(std::span<const GofRow> rows) {
  std::ostringstream out;
  out << "dataset,distribution";
  for (const char* c : kCsvColumns) out << ',' << c;
  out << '\n';
  for (const auto& row : rows) {
    out << row.dataset << ',' << family_name(row.family);
    for (const auto& cell : metric_cells(row)) out << ',' << cell;
    out << '\n';
  }
  return out.str();
}

std::string to_json(std::span<const GofRow> rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json j;
    j["dataset"] = row.dataset;
    j["distribution"] = family_name(row.family);
    j["ks_d"] = row.ks ? optional_number(row.ks->d_statistic) : nullptr;
    j["ks_p"] = row.ks ? optional_number(row.ks->p_value) : nullptr;
    j["chi2"] = row.chi2 ? optional_number(row.chi2->statistic) : nullptr;
    j["chi2_dof"] = row.chi2 ? nlohmann::ordered_json(row.chi2->dof) : nullptr;
    j["chi2_p"] = row.chi2 ? optional_number(row.chi2->p_value) : nullptr;
    j["kl_nats"] = optional_number(row.kl_nats);
    j["wasserstein_s"] = optional_number(row.wasserstein);
    j["errors"] = row.errors;
    out.push_back(std::move(j));
  }
  return out.dump(2);
}

}  // namespace headway::gof
