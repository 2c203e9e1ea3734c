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

#include "headway/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

#include "headway/error.hpp"
#include "headway/special_functions.hpp"

namespace headway::mcmc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kAdaptWindow = 50;
constexpr std::size_t kCovarianceStart = 200;
constexpr double kTargetAcceptance = 0.3;
constexpr double kAdaptGain = 2.0;
constexpr int kInitRetries = 100;
constexpr double kShiftInitOffset = 0.1;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// ln(1 + e^x)
double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// In-place lower Cholesky factor of a dim x dim row-major matrix.
bool cholesky(std::vector<double>& m, std::size_t dim) {
  for (std::size_t j = 0; j < dim; ++j) {
    double diag = m[j * dim + j];
    for (std::size_t k = 0; k < j; ++k) diag -= m[j * dim + k] * m[j * dim + k];
    if (!(diag > 0.0) || !std::isfinite(diag)) return false;
    const double root = std::sqrt(diag);
    m[j * dim + j] = root;
    for (std::size_t i = j + 1; i < dim; ++i) {
      double v = m[i * dim + j];
      for (std::size_t k = 0; k < j; ++k) v -= m[i * dim + k] * m[j * dim + k];
      m[i * dim + j] = v / root;
    }
    for (std::size_t k = j + 1; k < dim; ++k) m[j * dim + k] = 0.0;
  }
  return true;
}

// Scaled Cholesky factor of the sample covariance of rows [begin, end).
bool covariance_factor(const std::vector<double>& states, std::size_t dim, std::size_t begin,
                       std::size_t end, std::vector<double>& factor) {
  const std::size_t count = end - begin;
  if (count < 2) return false;
  std::vector<double> mean(dim, 0.0);
  for (std::size_t r = begin; r < end; ++r) {
    for (std::size_t j = 0; j < dim; ++j) mean[j] += states[r * dim + j];
  }
  for (double& m : mean) m /= static_cast<double>(count);
  std::vector<double> cov(dim * dim, 0.0);
  for (std::size_t r = begin; r < end; ++r) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double di = states[r * dim + i] - mean[i];
      for (std::size_t j = 0; j <= i; ++j) {
        cov[i * dim + j] += di * (states[r * dim + j] - mean[j]);
      }
    }
  }
  // Optimal random-walk scaling for Gaussian targets: 2.38^2 / d.
  const double scale = 2.38 * 2.38 / static_cast<double>(dim) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      cov[i * dim + j] *= scale;
      cov[j * dim + i] = cov[i * dim + j];
    }
    if (!(cov[i * dim + i] > 1e-300)) return false;
    cov[i * dim + i] *= 1.0 + 1e-10;
  }
  if (!cholesky(cov, dim)) return false;
  factor = std::move(cov);
  return true;
}

}  // namespace

// --- priors ---------------------------------------------------------------

void validate(const Prior& prior) {
  std::visit(Overloaded{
                 [](const NormalPrior& p) {
                   if (!(p.sd > 0.0)) throw InvalidArgument("normal prior: sd must be positive");
                 },
                 [](const UniformPrior& p) {
                   if (!(p.low < p.high)) throw InvalidArgument("uniform prior: low must be below high");
                 },
                 [](const GammaPrior& p) {
                   if (!(p.shape > 0.0 && p.rate > 0.0)) {
                     throw InvalidArgument("gamma prior: shape and rate must be positive");
                   }
                 },
             },
             prior);
}

double log_density(const Prior& prior, double x) {
  return std::visit(
      Overloaded{
          [x](const NormalPrior& p) {
            const double z = (x - p.mean) / p.sd;
            return -0.5 * z * z - std::log(p.sd) - 0.5 * std::log(2.0 * std::numbers::pi);
          },
          [x](const UniformPrior& p) {
            return (x > p.low && x < p.high) ? -std::log(p.high - p.low) : kNegInf;
          },
          [x](const GammaPrior& p) {
            if (!(x > 0.0) || !std::isfinite(x)) return kNegInf;
            return p.shape * std::log(p.rate) - special::log_gamma(p.shape) +
                   (p.shape - 1.0) * std::log(x) - p.rate * x;
          },
      },
      prior);
}

double draw(const Prior& prior, Rng& rng) {
  return std::visit(Overloaded{
                        [&rng](const NormalPrior& p) { return p.mean + p.sd * rng.normal(); },
                        [&rng](const UniformPrior& p) {
                          return p.low + (p.high - p.low) * rng.uniform();
                        },
                        [&rng](const GammaPrior& p) {
                          const DistributionModel g(BaselineParams(GammaDist{p.shape, p.rate}));
                          return quantile(g, rng.uniform());
                        },
                    },
                    prior);
}

std::vector<Prior> default_priors(Family family, double data_min) {
  const Prior location = NormalPrior{0.0, 10.0};
  const Prior positive = GammaPrior{0.5, 0.5};
  const Prior shift = UniformPrior{-10.0, data_min};
  switch (family) {
    case Family::kProposed: return {location, UniformPrior{0.0, 1.0}};
    case Family::kShiftedLogNormal: return {location, positive, shift};
    case Family::kWeibull:
    case Family::kLogLogistic:
    case Family::kGamma: return {positive, positive};
    case Family::kBurr: return {positive, positive, positive};
    case Family::kShiftedExponential: return {positive, shift};
  }
  throw InvalidArgument("unknown family");
}

void validate(const McmcConfig& config) {
  if (config.chains < 1) throw InvalidArgument("mcmc: at least one chain is required");
  if (!(config.warmup < config.iterations)) {
    throw InvalidArgument("mcmc: warmup must be smaller than iterations");
  }
  for (double s : config.proposal_scales) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw InvalidArgument("mcmc: proposal scales must be positive");
    }
  }
}

// --- trace ------------------------------------------------------------------

std::span<const double> McmcTrace::retained(std::size_t chain) const {
  const auto& s = chains.at(chain).states;
  return std::span<const double>(s).subspan(warmup * dim());
}

std::vector<double> McmcTrace::retained_column(std::size_t chain, std::size_t param) const {
  const auto rows = retained(chain);
  std::vector<double> out;
  out.reserve(retained_per_chain());
  for (std::size_t r = 0; r < retained_per_chain(); ++r) out.push_back(rows[r * dim() + param]);
  return out;
}

std::vector<double> McmcTrace::acceptance_rates() const {
  std::vector<double> out;
  for (const auto& c : chains) {
    out.push_back(static_cast<double>(c.accepted_sampling) /
                  static_cast<double>(retained_per_chain()));
  }
  return out;
}

// --- sampler ------------------------------------------------------------------

ChainTrace run_random_walk(const LogTarget& target, std::span<const double> initial,
                           const McmcConfig& config, Rng& rng) {
  const std::size_t dim = initial.size();
  if (dim == 0) throw InvalidArgument("mcmc: empty parameter vector");
  if (!config.proposal_scales.empty() && config.proposal_scales.size() != dim) {
    throw InvalidArgument("mcmc: proposal_scales size does not match parameter count");
  }

  std::vector<double> x(initial.begin(), initial.end());
  double lp = target(x);
  if (!std::isfinite(lp)) throw NumericalError("mcmc: initial state has non-finite log target");

  std::vector<double> factor(dim * dim, 0.0);
  for (std::size_t j = 0; j < dim; ++j) {
    factor[j * dim + j] = config.proposal_scales.empty() ? 0.1 : config.proposal_scales[j];
  }
  double log_scale = 0.0;
  bool covariance_adapted = false;

  ChainTrace trace;
  trace.states.resize(config.iterations * dim);
  std::vector<double> z(dim);
  std::vector<double> proposal(dim);
  std::size_t window_accepted = 0;

  for (std::size_t it = 0; it < config.iterations; ++it) {
    const bool warmup = it < config.warmup;
    for (double& v : z) v = rng.normal();
    const double step = std::exp(log_scale);
    for (std::size_t i = 0; i < dim; ++i) {
      double delta = 0.0;
      for (std::size_t k = 0; k <= i; ++k) delta += factor[i * dim + k] * z[k];
      proposal[i] = x[i] + step * delta;
    }
    const double lp_new = target(proposal);
    const double log_u = std::log(rng.uniform());
    if (std::isfinite(lp_new) && log_u < lp_new - lp) {
      x.swap(proposal);
      lp = lp_new;
      if (warmup) {
        ++trace.accepted_warmup;
        ++window_accepted;
      } else {
        ++trace.accepted_sampling;
      }
    }
    std::copy(x.begin(), x.end(), trace.states.begin() + static_cast<std::ptrdiff_t>(it * dim));

    if (config.adapt && warmup && (it + 1) % kAdaptWindow == 0) {
      const double rate = static_cast<double>(window_accepted) / kAdaptWindow;
      window_accepted = 0;
      log_scale += kAdaptGain * (rate - kTargetAcceptance);
      if (it + 1 >= kCovarianceStart &&
          covariance_factor(trace.states, dim, (it + 1) / 2, it + 1, factor)) {
        if (!covariance_adapted) log_scale = 0.0;
        covariance_adapted = true;
      }
    }
  }
  trace.final_scale = std::exp(log_scale);
  return trace;
}

// --- posterior -------------------------------------------------------------

Posterior::Posterior(Family family, std::span<const double> data, double alpha_min)
    : Posterior(family, data,
                default_priors(family, data.empty() ? 0.0 : *std::min_element(data.begin(), data.end())),
                alpha_min) {}

Posterior::Posterior(Family family, std::span<const double> data, std::vector<Prior> priors,
                     double alpha_min)
    : family_(family), alpha_min_(alpha_min), priors_(std::move(priors)) {
  if (data.empty()) throw InvalidArgument("posterior: data must not be empty");
  if (priors_.size() != parameter_count(family)) {
    throw InvalidArgument("posterior: prior count does not match parameter count");
  }
  for (const auto& p : priors_) validate(p);
  for (double v : data) {
    if (!std::isfinite(v)) throw DataError("posterior: data contain a non-finite value");
  }
  sorted_.assign(data.begin(), data.end());
  std::sort(sorted_.begin(), sorted_.end());
  if (family == Family::kProposed && sorted_.front() < alpha_min) {
    throw DataError("posterior: datum " + std::to_string(sorted_.front()) +
                    " lies below alpha_min " + std::to_string(alpha_min));
  }
  prefix_sum_.resize(sorted_.size() + 1, 0.0);
  for (std::size_t i = 0; i < sorted_.size(); ++i) prefix_sum_[i + 1] = prefix_sum_[i] + sorted_[i];
  sum_ = prefix_sum_.back();
  if (sorted_.front() > 0.0) {
    log_values_.reserve(sorted_.size());
    for (double v : sorted_) log_values_.push_back(std::log(v));
    sum_log_ = std::accumulate(log_values_.begin(), log_values_.end(), 0.0);
  }
  for (const auto& p : priors_) {
    scales_.push_back(std::visit(Overloaded{
                                     [](const NormalPrior&) { return Scale::kIdentity; },
                                     [](const UniformPrior&) { return Scale::kLogit; },
                                     [](const GammaPrior&) { return Scale::kLog; },
                                 },
                                 p));
  }
}

double Posterior::log_likelihood(std::span<const double> params) const {
  if (params.size() != parameter_count(family_)) {
    throw InvalidArgument("posterior: wrong parameter count");
  }
  for (double v : params) {
    if (!std::isfinite(v)) return kNegInf;
  }
  const double n = static_cast<double>(sorted_.size());
  const bool positive_data = !log_values_.empty();

  switch (family_) {
    case Family::kProposed: {
      const double a = params[0];
      const double b = params[1];
      if (!(b > ProposedParams::kMinBase && b < ProposedParams::kMaxBase)) return kNegInf;
      const ProposedParams p(a, b, alpha_min_);
      const auto below = static_cast<std::size_t>(
          std::lower_bound(sorted_.begin(), sorted_.end(), a) - sorted_.begin());
      const double nb = static_cast<double>(below);
      const double abs_dev = (nb * a - prefix_sum_[below]) +
                             (sum_ - prefix_sum_[below] - (n - nb) * a);
      return p.log_b() * abs_dev - n * proposed::log_normalization_constant(p);
    }
    case Family::kGamma: {
      const double k = params[0];
      const double rate = params[1];
      if (!(k > 0.0 && rate > 0.0) || !positive_data) break;
      return n * (k * std::log(rate) - special::log_gamma(k)) + (k - 1.0) * sum_log_ - rate * sum_;
    }
    case Family::kShiftedExponential: {
      const double rate = params[0];
      const double shift = params[1];
      if (!(rate > 0.0) || shift > sorted_.front()) return kNegInf;
      return n * std::log(rate) - rate * (sum_ - n * shift);
    }
    case Family::kWeibull: {
      const double k = params[0];
      const double scale = params[1];
      if (!(k > 0.0 && scale > 0.0) || !positive_data) break;
      const double ls = std::log(scale);
      double tail = 0.0;
      for (double lt : log_values_) tail += std::exp(k * (lt - ls));
      return n * (std::log(k) - ls) + (k - 1.0) * (sum_log_ - n * ls) - tail;
    }
    case Family::kLogLogistic: {
      const double k = params[0];
      const double scale = params[1];
      if (!(k > 0.0 && scale > 0.0) || !positive_data) break;
      const double ls = std::log(scale);
      double acc = 0.0;
      for (double lt : log_values_) acc += softplus(k * (lt - ls));
      return n * (std::log(k) - ls) + (k - 1.0) * (sum_log_ - n * ls) - 2.0 * acc;
    }
    case Family::kBurr: {
      const double c = params[0];
      const double k = params[1];
      const double scale = params[2];
      if (!(c > 0.0 && k > 0.0 && scale > 0.0) || !positive_data) break;
      const double ls = std::log(scale);
      double acc = 0.0;
      for (double lt : log_values_) acc += softplus(c * (lt - ls));
      return n * std::log(c * k / scale) + (c - 1.0) * (sum_log_ - n * ls) - (k + 1.0) * acc;
    }
    case Family::kShiftedLogNormal: {
      const double mu = params[0];
      const double sigma = params[1];
      const double shift = params[2];
      if (!(sigma > 0.0) || !(shift < sorted_.front())) return kNegInf;
      double acc = 0.0;
      for (double t : sorted_) {
        const double x = std::log(t - shift);
        const double z = (x - mu) / sigma;
        acc += x + 0.5 * z * z;
      }
      return -acc - n * (std::log(sigma) + 0.5 * std::log(2.0 * std::numbers::pi));
    }
  }

  // Generic path: invalid parameters or data touching zero.
  try {
    const auto model = DistributionModel::from_vector(family_, params, alpha_min_);
    double acc = 0.0;
    for (double t : sorted_) acc += log_pdf(model, t);
    return std::isnan(acc) ? kNegInf : acc;
  } catch (const InvalidArgument&) {
    return kNegInf;
  }
}

double Posterior::log_prior(std::span<const double> params) const {
  if (params.size() != priors_.size()) throw InvalidArgument("posterior: wrong parameter count");
  double acc = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) acc += log_density(priors_[i], params[i]);
  return acc;
}

double Posterior::log_posterior(std::span<const double> params) const {
  const double prior = log_prior(params);
  if (!std::isfinite(prior)) return kNegInf;
  const double ll = log_likelihood(params);
  if (!std::isfinite(ll)) return kNegInf;
  return prior + ll;
}

std::vector<double> Posterior::to_unconstrained(std::span<const double> params) const {
  std::vector<double> x(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    switch (scales_[i]) {
      case Scale::kIdentity: x[i] = params[i]; break;
      case Scale::kLog: x[i] = std::log(params[i]); break;
      case Scale::kLogit: {
        const auto& u = std::get<UniformPrior>(priors_[i]);
        const double f = (params[i] - u.low) / (u.high - u.low);
        x[i] = std::log(f) - std::log1p(-f);
        break;
      }
    }
  }
  return x;
}

std::vector<double> Posterior::from_unconstrained(std::span<const double> x) const {
  std::vector<double> params(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    switch (scales_[i]) {
      case Scale::kIdentity: params[i] = x[i]; break;
      case Scale::kLog: params[i] = std::exp(x[i]); break;
      case Scale::kLogit: {
        const auto& u = std::get<UniformPrior>(priors_[i]);
        params[i] = u.low + (u.high - u.low) / (1.0 + std::exp(-x[i]));
        break;
      }
    }
  }
  return params;
}

double Posterior::log_target(std::span<const double> x) const {
  const auto params = from_unconstrained(x);
  double jacobian = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    switch (scales_[i]) {
      case Scale::kIdentity: break;
      case Scale::kLog: jacobian += x[i]; break;
      case Scale::kLogit: {
        const auto& u = std::get<UniformPrior>(priors_[i]);
        jacobian += std::log(u.high - u.low) - softplus(-x[i]) - softplus(x[i]);
        break;
      }
    }
  }
  const double lp = log_posterior(params);
  return std::isfinite(lp) ? lp + jacobian : kNegInf;
}

std::vector<double> Posterior::initial_state(Rng& rng) const {
  for (int attempt = 0; attempt < kInitRetries; ++attempt) {
    std::vector<double> params(priors_.size());
    for (std::size_t i = 0; i < priors_.size(); ++i) params[i] = draw(priors_[i], rng);
    if (has_shift_parameter(family_)) {
      params.back() = data_min() - kShiftInitOffset;
    }
    const auto x = to_unconstrained(params);
    if (std::isfinite(log_target(x))) return x;
  }
  throw NumericalError("mcmc: no finite log posterior after " + std::to_string(kInitRetries) +
                       " prior draws for " + std::string(family_name(family_)));
}

double log_posterior(Family family, std::span<const double> params, std::span<const double> data,
                     double alpha_min) {
  return Posterior(family, data, alpha_min).log_posterior(params);
}

// --- chains -----------------------------------------------------------------

McmcTrace run_chains(const Posterior& posterior, const McmcConfig& config) {
  validate(config);
  McmcTrace trace;
  for (auto name : parameter_names(posterior.family())) trace.parameter_names.emplace_back(name);
  trace.iterations = config.iterations;
  trace.warmup = config.warmup;
  trace.chains.resize(config.chains);

  const LogTarget target = [&posterior](std::span<const double> x) {
    return posterior.log_target(x);
  };
  auto run_one = [&](std::size_t c) {
    Rng rng(derive_seed(config.seed, c));
    const auto start = posterior.initial_state(rng);
    ChainTrace chain = run_random_walk(target, start, config, rng);
    const std::size_t dim = trace.dim();
    for (std::size_t r = 0; r < config.iterations; ++r) {
      const auto row = std::span<double>(chain.states).subspan(r * dim, dim);
      const auto natural = posterior.from_unconstrained(row);
      std::copy(natural.begin(), natural.end(), row.begin());
    }
    trace.chains[c] = std::move(chain);
  };

  const std::size_t threads =
      config.max_threads == 0 ? config.chains : std::min(config.max_threads, config.chains);
  if (threads <= 1) {
    for (std::size_t c = 0; c < config.chains; ++c) run_one(c);
    return trace;
  }
  std::vector<std::exception_ptr> errors(config.chains);
  for (std::size_t first = 0; first < config.chains; first += threads) {
    std::vector<std::thread> pool;
    for (std::size_t c = first; c < std::min(first + threads, config.chains); ++c) {
      pool.emplace_back([&, c] {
        try {
          run_one(c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return trace;
}

McmcTrace run_chains(Family family, std::span<const double> data, const McmcConfig& config) {
  return run_chains(Posterior(family, data, config.alpha_min), config);
}

std::vector<double> point_estimate(const McmcTrace& trace) {
  const std::size_t dim = trace.dim();
  const std::size_t rows = trace.retained_per_chain();
  if (trace.chains.empty() || rows == 0) throw InvalidArgument("point_estimate: empty trace");
  std::vector<double> mean(dim, 0.0);
  for (std::size_t c = 0; c < trace.chains.size(); ++c) {
    const auto draws = trace.retained(c);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t j = 0; j < dim; ++j) mean[j] += draws[r * dim + j];
    }
  }
  for (double& m : mean) m /= static_cast<double>(rows * trace.chains.size());
  return mean;
}

std::optional<std::vector<double>> rhat(const McmcTrace& trace) {
  const std::size_t rows = trace.retained_per_chain();
  if (trace.chains.size() < 2 || rows < 10) return std::nullopt;
  const std::size_t half = rows / 2;
  const std::size_t dim = trace.dim();
  const double n = static_cast<double>(half);
  std::vector<double> out(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> means;
    std::vector<double> variances;
    for (std::size_t c = 0; c < trace.chains.size(); ++c) {
      const auto draws = trace.retained(c);
      for (std::size_t start : {std::size_t{0}, rows - half}) {
        double mean = 0.0;
        for (std::size_t r = start; r < start + half; ++r) mean += draws[r * dim + j];
        mean /= n;
        double ss = 0.0;
        for (std::size_t r = start; r < start + half; ++r) {
          const double d = draws[r * dim + j] - mean;
          ss += d * d;
        }
        means.push_back(mean);
        variances.push_back(ss / (n - 1.0));
      }
    }
    const double m = static_cast<double>(means.size());
    const double grand = std::accumulate(means.begin(), means.end(), 0.0) / m;
    double between = 0.0;
    for (double mu : means) between += (mu - grand) * (mu - grand);
    between *= n / (m - 1.0);
    const double within = std::accumulate(variances.begin(), variances.end(), 0.0) / m;
    if (within > 0.0) {
      out[j] = std::sqrt(1.0 + between / (n * within));
    } else {
      out[j] = between > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    }
  }
  return out;
}

FitResult fit(Family family, std::span<const double> data, const McmcConfig& config) {
  const Posterior posterior(family, data, config.alpha_min);
  McmcTrace trace = run_chains(posterior, config);
  const auto estimate = point_estimate(trace);
  auto diag = rhat(trace);
  auto acceptance = trace.acceptance_rates();
  FitResult result{DistributionModel::from_vector(family, estimate, config.alpha_min),
                   std::move(trace),
                   std::move(diag),
                   std::move(acceptance),
                   {posterior.size(), posterior.data_min(), posterior.data_max()},
                   config,
                   {}};
  if (result.rhat) {
    for (std::size_t j = 0; j < result.rhat->size(); ++j) {
      if (!((*result.rhat)[j] < kRhatThreshold)) {
        result.warnings.push_back(std::string(family_name(family)) + ": rhat for " +
                                  result.trace.parameter_names[j] + " is " +
                                  std::to_string((*result.rhat)[j]) + ", chains may not have converged");
      }
    }
  }
  return result;
}

void write_trace_csv(const McmcTrace& trace, std::ostream& out) {
  out << "chain,iteration,is_warmup";
  for (const auto& name : trace.parameter_names) out << ',' << name;
  out << '\n';
  char buf[32];
  const std::size_t dim = trace.dim();
  for (std::size_t c = 0; c < trace.chains.size(); ++c) {
    const auto& states = trace.chains[c].states;
    for (std::size_t it = 0; it < trace.iterations; ++it) {
      out << c << ',' << it << ',' << (it < trace.warmup ? 1 : 0);
      for (std::size_t j = 0; j < dim; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", states[it * dim + j]);
        out << ',' << buf;
      }
      out << '\n';
    }
  }
}

}  // namespace headway::mcmc
