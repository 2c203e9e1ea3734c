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
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "headway/error.hpp"
#include "headway/random.hpp"
#include "headway/special_functions.hpp"

namespace headway {

namespace {

constexpr std::string_view kProposedNames[] = {"a", "b"};
constexpr std::string_view kShiftedLogNormalNames[] = {"mu", "sigma", "gamma"};
constexpr std::string_view kShapeScaleNames[] = {"alpha", "beta"};
constexpr std::string_view kBurrNames[] = {"alpha", "beta", "lambda"};
constexpr std::string_view kShiftedExponentialNames[] = {"lambda", "gamma"};

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + " must be positive and finite, got " +
                          std::to_string(v));
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

void validate(const BaselineParams& p) {
  std::visit(Overloaded{
                 [](const ShiftedLogNormal& d) {
                   require_finite(d.mu, "shifted log-normal mu");
                   require_positive(d.sigma, "shifted log-normal sigma");
                   require_finite(d.gamma_shift, "shifted log-normal gamma");
                 },
                 [](const Weibull& d) {
                   require_positive(d.shape_alpha, "weibull alpha");
                   require_positive(d.scale_beta, "weibull beta");
                 },
                 [](const LogLogistic& d) {
                   require_positive(d.shape_alpha, "log-logistic alpha");
                   require_positive(d.scale_beta, "log-logistic beta");
                 },
                 [](const GammaDist& d) {
                   require_positive(d.shape_alpha, "gamma alpha");
                   require_positive(d.rate_beta, "gamma beta");
                 },
                 [](const Burr& d) {
                   require_positive(d.shape_alpha, "burr alpha");
                   require_positive(d.shape_beta, "burr beta");
                   require_positive(d.scale_lambda, "burr lambda");
                 },
                 [](const ShiftedExponential& d) {
                   require_positive(d.rate_lambda, "shifted exponential lambda");
                   require_finite(d.gamma_shift, "shifted exponential gamma");
                 },
             },
             p);
}

DistributionModel::Params widen(const BaselineParams& p) {
  return std::visit([](const auto& d) { return DistributionModel::Params(d); }, p);
}

// --- log densities -------------------------------------------------------

double log_pdf_of(const ShiftedLogNormal& d, double t) {
  if (!(t > d.gamma_shift)) return -kInfinity;
  const double x = std::log(t - d.gamma_shift);
  const double z = (x - d.mu) / d.sigma;
  return -x - std::log(d.sigma) - kLogSqrt2Pi - 0.5 * z * z;
}

double log_pdf_of(const Weibull& d, double t) {
  if (t < 0.0) return -kInfinity;
  const double k = d.shape_alpha;
  if (t == 0.0) {
    if (k == 1.0) return -std::log(d.scale_beta);
    return k < 1.0 ? kInfinity : -kInfinity;
  }
  const double x = std::log(t / d.scale_beta);
  return std::log(k) - std::log(d.scale_beta) + (k - 1.0) * x - std::exp(k * x);
}

double log_pdf_of(const LogLogistic& d, double t) {
  if (!(t > 0.0)) return -kInfinity;
  const double k = d.shape_alpha;
  const double x = std::log(t / d.scale_beta);
  // ln(1 + e^(kx)) computed without overflow.
  const double kx = k * x;
  const double softplus = kx > 0.0 ? kx + std::log1p(std::exp(-kx)) : std::log1p(std::exp(kx));
  return std::log(k) - std::log(d.scale_beta) + (k - 1.0) * x - 2.0 * softplus;
}

double log_pdf_of(const GammaDist& d, double t) {
  if (!(t > 0.0)) return -kInfinity;
  const double k = d.shape_alpha;
  return k * std::log(d.rate_beta) - special::log_gamma(k) + (k - 1.0) * std::log(t) -
         d.rate_beta * t;
}

double log_pdf_of(const Burr& d, double t) {
  if (!(t > 0.0)) return -kInfinity;
  const double c = d.shape_alpha;
  const double k = d.shape_beta;
  const double x = std::log(t / d.scale_lambda);
  const double cx = c * x;
  const double softplus = cx > 0.0 ? cx + std::log1p(std::exp(-cx)) : std::log1p(std::exp(cx));
  return std::log(c * k / d.scale_lambda) + (c - 1.0) * x - (k + 1.0) * softplus;
}

double log_pdf_of(const ShiftedExponential& d, double t) {
  if (t < d.gamma_shift) return -kInfinity;
  return std::log(d.rate_lambda) - d.rate_lambda * (t - d.gamma_shift);
}

double log_pdf_of(const ProposedParams& p, double t) { return proposed::log_pdf(p, t); }

// --- distribution functions ----------------------------------------------

double cdf_of(const ProposedParams& p, double t) { return proposed::cdf(p, t); }

double cdf_of(const ShiftedLogNormal& d, double t) {
  if (!(t > d.gamma_shift)) return 0.0;
  return special::normal_cdf((std::log(t - d.gamma_shift) - d.mu) / d.sigma);
}

double cdf_of(const Weibull& d, double t) {
  if (!(t > 0.0)) return 0.0;
  return -std::expm1(-std::pow(t / d.scale_beta, d.shape_alpha));
}

double cdf_of(const LogLogistic& d, double t) {
  if (!(t > 0.0)) return 0.0;
  return 1.0 / (1.0 + std::pow(t / d.scale_beta, -d.shape_alpha));
}

double cdf_of(const GammaDist& d, double t) {
  if (!(t > 0.0)) return 0.0;
  return special::regularized_lower_incomplete_gamma(d.shape_alpha, d.rate_beta * t);
}

double cdf_of(const Burr& d, double t) {
  if (!(t > 0.0)) return 0.0;
  const double cx = d.shape_alpha * std::log(t / d.scale_lambda);
  const double softplus = cx > 0.0 ? cx + std::log1p(std::exp(-cx)) : std::log1p(std::exp(cx));
  return -std::expm1(-d.shape_beta * softplus);
}

double cdf_of(const ShiftedExponential& d, double t) {
  if (!(t > d.gamma_shift)) return 0.0;
  return -std::expm1(-d.rate_lambda * (t - d.gamma_shift));
}

// --- quantiles (0 < u < 1) -------------------------------------------------

double quantile_of(const ProposedParams& p, double u) { return proposed::quantile(p, u); }

double quantile_of(const ShiftedLogNormal& d, double u) {
  return d.gamma_shift + std::exp(d.mu + d.sigma * special::inverse_normal_cdf(u));
}

double quantile_of(const Weibull& d, double u) {
  return d.scale_beta * std::pow(-std::log1p(-u), 1.0 / d.shape_alpha);
}

double quantile_of(const LogLogistic& d, double u) {
  return d.scale_beta * std::exp((std::log(u) - std::log1p(-u)) / d.shape_alpha);
}

double quantile_of(const Burr& d, double u) {
  return d.scale_lambda * std::pow(std::expm1(-std::log1p(-u) / d.shape_beta), 1.0 / d.shape_alpha);
}

double quantile_of(const ShiftedExponential& d, double u) {
  return d.gamma_shift - std::log1p(-u) / d.rate_lambda;
}

// Bisection to a tight bracket, then safeguarded Newton on the CDF.
double quantile_of(const GammaDist& d, double u) {
  const double mean = d.shape_alpha / d.rate_beta;
  const double sd = std::sqrt(d.shape_alpha) / d.rate_beta;
  double lo = 0.0;
  double hi = mean + 20.0 * sd;
  while (cdf_of(d, hi) < u) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 400 && hi - lo > 1e-8 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf_of(d, mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 50; ++i) {
    const double err = cdf_of(d, t) - u;
    if (err == 0.0) break;
    if (err < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double density = std::exp(log_pdf_of(d, t));
    double next = density > 0.0 ? t - err / density : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * t) {
      t = next;
      break;
    }
    t = next;
  }
  return t;
}

std::string lowercase_key(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '-' || c == ' ') {
      out.push_back('_');
    } else {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::kProposed: return "proposed";
    case Family::kShiftedLogNormal: return "shifted_lognormal";
    case Family::kWeibull: return "weibull";
    case Family::kLogLogistic: return "loglogistic";
    case Family::kGamma: return "gamma";
    case Family::kBurr: return "burr";
    case Family::kShiftedExponential: return "shifted_exponential";
  }
  return "unknown";
}

std::string_view family_label(Family f) {
  switch (f) {
    case Family::kProposed: return "Proposed";
    case Family::kShiftedLogNormal: return "Shifted Log-normal";
    case Family::kWeibull: return "Weibull";
    case Family::kLogLogistic: return "Log-logistic";
    case Family::kGamma: return "Gamma";
    case Family::kBurr: return "Burr";
    case Family::kShiftedExponential: return "Shifted Exponential";
  }
  return "Unknown";
}

std::optional<Family> family_from_name(std::string_view name) {
  const std::string key = lowercase_key(name);
  for (Family f : kAllFamilies) {
    if (key == family_name(f)) return f;
  }
  if (key == "shifted_log_normal" || key == "lognormal") return Family::kShiftedLogNormal;
  if (key == "log_logistic") return Family::kLogLogistic;
  if (key == "shifted_exp" || key == "exponential") return Family::kShiftedExponential;
  return std::nullopt;
}

std::span<const std::string_view> parameter_names(Family f) {
  switch (f) {
    case Family::kProposed: return kProposedNames;
    case Family::kShiftedLogNormal: return kShiftedLogNormalNames;
    case Family::kWeibull:
    case Family::kLogLogistic:
    case Family::kGamma: return kShapeScaleNames;
    case Family::kBurr: return kBurrNames;
    case Family::kShiftedExponential: return kShiftedExponentialNames;
  }
  return {};
}

bool has_shift_parameter(Family f) {
  return f == Family::kShiftedLogNormal || f == Family::kShiftedExponential;
}

DistributionModel::DistributionModel(ProposedParams p) : params_(p) {}

DistributionModel::DistributionModel(BaselineParams p) : params_(widen(p)) { validate(p); }

DistributionModel DistributionModel::from_vector(Family f, std::span<const double> v,
                                                 double alpha_min) {
  if (v.size() != parameter_count(f)) {
    throw InvalidArgument(std::string(family_name(f)) + " expects " +
                          std::to_string(parameter_count(f)) + " parameters, got " +
                          std::to_string(v.size()));
  }
  switch (f) {
    case Family::kProposed: return ProposedParams(v[0], v[1], alpha_min);
    case Family::kShiftedLogNormal: return BaselineParams(ShiftedLogNormal{v[0], v[1], v[2]});
    case Family::kWeibull: return BaselineParams(Weibull{v[0], v[1]});
    case Family::kLogLogistic: return BaselineParams(LogLogistic{v[0], v[1]});
    case Family::kGamma: return BaselineParams(GammaDist{v[0], v[1]});
    case Family::kBurr: return BaselineParams(Burr{v[0], v[1], v[2]});
    case Family::kShiftedExponential: return BaselineParams(ShiftedExponential{v[0], v[1]});
  }
  throw InvalidArgument("unknown family");
}

std::vector<double> DistributionModel::to_vector() const {
  return std::visit(
      Overloaded{
          [](const ProposedParams& p) { return std::vector<double>{p.a(), p.b()}; },
          [](const ShiftedLogNormal& d) {
            return std::vector<double>{d.mu, d.sigma, d.gamma_shift};
          },
          [](const Weibull& d) { return std::vector<double>{d.shape_alpha, d.scale_beta}; },
          [](const LogLogistic& d) { return std::vector<double>{d.shape_alpha, d.scale_beta}; },
          [](const GammaDist& d) { return std::vector<double>{d.shape_alpha, d.rate_beta}; },
          [](const Burr& d) {
            return std::vector<double>{d.shape_alpha, d.shape_beta, d.scale_lambda};
          },
          [](const ShiftedExponential& d) {
            return std::vector<double>{d.rate_lambda, d.gamma_shift};
          },
      },
      params_);
}

double DistributionModel::support_lower_bound() const {
  return std::visit(Overloaded{
                        [](const ProposedParams& p) { return p.alpha_min(); },
                        [](const ShiftedLogNormal& d) { return d.gamma_shift; },
                        [](const ShiftedExponential& d) { return d.gamma_shift; },
                        [](const auto&) { return 0.0; },
                    },
                    params_);
}

double pdf(const DistributionModel& m, double t) {
  if (const auto* p = std::get_if<ProposedParams>(&m.params())) return proposed::pdf(*p, t);
  return std::exp(log_pdf(m, t));
}

double log_pdf(const DistributionModel& m, double t) {
  return std::visit([t](const auto& d) { return log_pdf_of(d, t); }, m.params());
}

double cdf(const DistributionModel& m, double t) {
  return std::visit([t](const auto& d) { return cdf_of(d, t); }, m.params());
}

double quantile(const DistributionModel& m, double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw InvalidArgument("quantile: probability outside [0, 1]: " + std::to_string(u));
  }
  if (u == 0.0) return m.support_lower_bound();
  if (u == 1.0) return kInfinity;
  return std::visit([u](const auto& d) { return quantile_of(d, u); }, m.params());
}

std::vector<double> sample(const DistributionModel& m, std::size_t n, std::uint64_t seed) {
  constexpr double kClamp = 1e-15;
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(quantile(m, std::clamp(rng.uniform(), kClamp, 1.0 - kClamp)));
  }
  return out;
}

}  // namespace headway
