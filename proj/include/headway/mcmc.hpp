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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "headway/distributions.hpp"
#include "headway/random.hpp"

namespace headway::mcmc {

struct NormalPrior {
  double mean;
  double sd;
};

struct UniformPrior {
  double low;
  double high;
};

/// Shape-rate parameterization.
struct GammaPrior {
  double shape;
  double rate;
};

using Prior = std::variant<NormalPrior, UniformPrior, GammaPrior>;

/// Throws InvalidArgument if sd <= 0, low >= high, or shape/rate <= 0.
void validate(const Prior& prior);
/// Log density, -inf outside the support.
double log_density(const Prior& prior, double x);
double draw(const Prior& prior, Rng& rng);

/// Default priors per family:
///   proposed           a ~ N(0, 10), b ~ U(0, 1)
///   shifted log-normal mu ~ N(0, 10), sigma ~ Gamma(0.5, 0.5), gamma ~ U(-10, data_min)
///   weibull, log-logistic, gamma, burr: every parameter ~ Gamma(0.5, 0.5)
///   shifted exponential lambda ~ Gamma(0.5, 0.5), gamma ~ U(-10, data_min)
/// The normal priors use 10 as the standard deviation.
std::vector<Prior> default_priors(Family family, double data_min);

struct McmcConfig {
  std::size_t iterations = 10000;
  std::size_t warmup = 5000;
  std::size_t chains = 2;
  std::uint64_t seed = 0;
  /// Initial random-walk scales on the sampler's unconstrained scale (log for
  /// positive parameters, logit for b). Empty means 0.1 for every parameter.
  std::vector<double> proposal_scales;
  bool adapt = true;
  /// Lower support bound of the proposed family; held fixed, never estimated.
  double alpha_min = ProposedParams::kDefaultAlphaMin;
  /// Maximum number of chains run concurrently; 0 means one thread per chain.
  /// Results do not depend on this value.
  std::size_t max_threads = 0;
};

/// Throws InvalidArgument unless warmup < iterations and chains >= 1.
void validate(const McmcConfig& config);

struct ChainTrace {
  /// Row-major iterations x dim matrix of every state, warmup included.
  std::vector<double> states;
  std::size_t accepted_warmup = 0;
  std::size_t accepted_sampling = 0;
  /// Proposal scale multiplier in force after warmup.
  double final_scale = 1.0;
};

struct McmcTrace {
  std::vector<std::string> parameter_names;
  std::size_t iterations = 0;
  std::size_t warmup = 0;
  std::vector<ChainTrace> chains;

  std::size_t dim() const noexcept { return parameter_names.size(); }
  std::size_t retained_per_chain() const noexcept { return iterations - warmup; }
  /// Post-warmup draws of one chain, row-major retained_per_chain() x dim().
  std::span<const double> retained(std::size_t chain) const;
  /// Post-warmup draws of one parameter in one chain.
  std::vector<double> retained_column(std::size_t chain, std::size_t param) const;
  /// Post-warmup acceptance fraction per chain.
  std::vector<double> acceptance_rates() const;
};

/// Log target on the unconstrained sampling scale.
using LogTarget = std::function<double(std::span<const double>)>;

/// Random-walk Metropolis over an unconstrained vector. During warmup (when
/// config.adapt) the proposal is tuned in windows of 50 iterations toward an
/// acceptance rate inside [0.2, 0.5] and reshaped to the empirical covariance
/// of the warmup states; it is frozen afterwards. Throws NumericalError if the
/// initial state has a non-finite log target.
ChainTrace run_random_walk(const LogTarget& target, std::span<const double> initial,
                           const McmcConfig& config, Rng& rng);

/// Posterior of a family given data. Precomputes data summaries so the
/// log-likelihood of the proposed, gamma and shifted-exponential families
/// costs O(log n) or O(1) per evaluation.
class Posterior {
 public:
  /// Throws InvalidArgument on empty data, DataError when a datum is
  /// non-finite or falls below alpha_min for the proposed family.
  Posterior(Family family, std::span<const double> data,
            double alpha_min = ProposedParams::kDefaultAlphaMin);
  Posterior(Family family, std::span<const double> data, std::vector<Prior> priors,
            double alpha_min = ProposedParams::kDefaultAlphaMin);

  Family family() const noexcept { return family_; }
  const std::vector<Prior>& priors() const noexcept { return priors_; }
  double alpha_min() const noexcept { return alpha_min_; }
  double data_min() const noexcept { return sorted_.front(); }
  double data_max() const noexcept { return sorted_.back(); }
  std::size_t size() const noexcept { return sorted_.size(); }

  /// Sum of log densities; -inf when params are invalid or data fall outside
  /// the support.
  double log_likelihood(std::span<const double> params) const;
  double log_prior(std::span<const double> params) const;
  double log_posterior(std::span<const double> params) const;

  /// Maps between natural parameters and the unconstrained sampling scale.
  std::vector<double> to_unconstrained(std::span<const double> params) const;
  std::vector<double> from_unconstrained(std::span<const double> x) const;
  /// log_posterior plus the log Jacobian of from_unconstrained.
  double log_target(std::span<const double> x) const;

  /// Initial state: a prior draw with shifts set to data_min - 0.1. Throws
  /// NumericalError when 100 draws all have non-finite log posterior.
  std::vector<double> initial_state(Rng& rng) const;

 private:
  enum class Scale { kIdentity, kLog, kLogit };

  Family family_;
  double alpha_min_;
  std::vector<Prior> priors_;
  std::vector<Scale> scales_;
  std::vector<double> sorted_;
  std::vector<double> log_values_;
  std::vector<double> prefix_sum_;
  double sum_ = 0.0;
  double sum_log_ = 0.0;
};

/// Convenience wrapper with default priors.
double log_posterior(Family family, std::span<const double> params,
                     std::span<const double> data,
                     double alpha_min = ProposedParams::kDefaultAlphaMin);

/// Runs config.chains chains. Chains may execute concurrently; the result is
/// identical to a serial run.
McmcTrace run_chains(const Posterior& posterior, const McmcConfig& config);
McmcTrace run_chains(Family family, std::span<const double> data, const McmcConfig& config);

/// Mean of the pooled post-warmup draws, per parameter.
std::vector<double> point_estimate(const McmcTrace& trace);

/// Split-chain potential scale reduction per parameter, computed as
/// sqrt(1 + B / (n W)) over the half-chains so that it never drops below 1.
/// Empty when fewer than 2 chains or fewer than 10 retained draws per chain.
std::optional<std::vector<double>> rhat(const McmcTrace& trace);

struct DataSummary {
  std::size_t n = 0;
  double min = 0.0;
  double max = 0.0;
};

struct FitResult {
  DistributionModel model;
  McmcTrace trace;
  std::optional<std::vector<double>> rhat;
  std::vector<double> acceptance;
  DataSummary data_summary;
  McmcConfig config;
  std::vector<std::string> warnings;
};

inline constexpr double kRhatThreshold = 1.05;

/// run_chains + point_estimate + rhat. A warning is recorded (not thrown)
/// when any rhat reaches kRhatThreshold.
FitResult fit(Family family, std::span<const double> data, const McmcConfig& config);

/// CSV with columns chain, iteration, is_warmup, <parameter names...>.
void write_trace_csv(const McmcTrace& trace, std::ostream& out);

}  // namespace headway::mcmc
