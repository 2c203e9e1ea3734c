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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "headway/proposed.hpp"

namespace headway {

/// The seven headway families. Declaration order is the canonical report and
/// palette order.
enum class Family {
  kProposed,
  kShiftedLogNormal,
  kWeibull,
  kLogLogistic,
  kGamma,
  kBurr,
  kShiftedExponential,
};

inline constexpr std::array<Family, 7> kAllFamilies = {
    Family::kProposed, Family::kShiftedLogNormal, Family::kWeibull,
    Family::kLogLogistic, Family::kGamma, Family::kBurr,
    Family::kShiftedExponential};

/// Stable lowercase identifier ("proposed", "shifted_lognormal", ...).
std::string_view family_name(Family f);
/// Human-readable label used in reports ("Shifted Log-normal", ...).
std::string_view family_label(Family f);
/// Accepts family_name() spellings, case-insensitively, with '-' or '_'.
std::optional<Family> family_from_name(std::string_view name);

/// Free parameters estimated during fitting, in canonical order.
std::span<const std::string_view> parameter_names(Family f);
inline std::size_t parameter_count(Family f) { return parameter_names(f).size(); }

/// Whether the family carries a location shift bounded above by min(data).
bool has_shift_parameter(Family f);

struct ShiftedLogNormal {
  double mu;
  double sigma;
  double gamma_shift;

  friend bool operator==(const ShiftedLogNormal&, const ShiftedLogNormal&) = default;
};

struct Weibull {
  double shape_alpha;
  double scale_beta;

  friend bool operator==(const Weibull&, const Weibull&) = default;
};

struct LogLogistic {
  double shape_alpha;
  double scale_beta;

  friend bool operator==(const LogLogistic&, const LogLogistic&) = default;
};

/// Shape-rate: density beta^alpha / Gamma(alpha) t^(alpha-1) e^(-beta t).
struct GammaDist {
  double shape_alpha;
  double rate_beta;

  friend bool operator==(const GammaDist&, const GammaDist&) = default;
};

struct Burr {
  double shape_alpha;
  double shape_beta;
  double scale_lambda;

  friend bool operator==(const Burr&, const Burr&) = default;
};

struct ShiftedExponential {
  double rate_lambda;
  double gamma_shift;

  friend bool operator==(const ShiftedExponential&, const ShiftedExponential&) = default;
};

using BaselineParams =
    std::variant<ShiftedLogNormal, Weibull, LogLogistic, GammaDist, Burr, ShiftedExponential>;

/// A fully parameterized member of one of the seven families.
class DistributionModel {
 public:
  using Params = std::variant<ProposedParams, ShiftedLogNormal, Weibull, LogLogistic,
                              GammaDist, Burr, ShiftedExponential>;

  DistributionModel(ProposedParams p);  // NOLINT(google-explicit-constructor)
  /// Throws InvalidArgument if any shape, scale or rate is not strictly positive
  /// or any value is non-finite.
  DistributionModel(BaselineParams p);  // NOLINT(google-explicit-constructor)
  template <class T>
    requires std::is_constructible_v<BaselineParams, T> &&
             (!std::is_same_v<std::remove_cvref_t<T>, BaselineParams>)
  DistributionModel(T p)  // NOLINT(google-explicit-constructor)
      : DistributionModel(BaselineParams(std::move(p))) {}

  /// Builds a model from a canonical parameter vector (see parameter_names).
  /// `alpha_min` is only used by the proposed family.
  static DistributionModel from_vector(Family f, std::span<const double> values,
                                       double alpha_min = ProposedParams::kDefaultAlphaMin);

  Family family() const noexcept { return static_cast<Family>(params_.index()); }
  const Params& params() const noexcept { return params_; }

  /// Canonical parameter vector; inverse of from_vector.
  std::vector<double> to_vector() const;

  /// Lower end of the support (alpha_min, gamma or 0).
  double support_lower_bound() const;

  friend bool operator==(const DistributionModel&, const DistributionModel&) = default;

 private:
  Params params_;
};

double pdf(const DistributionModel& m, double t);
/// -inf outside the support.
double log_pdf(const DistributionModel& m, double t);
double cdf(const DistributionModel& m, double t);
/// Throws InvalidArgument for u outside [0, 1]. quantile(1) is +inf.
double quantile(const DistributionModel& m, double u);
/// Inverse-transform draws with u clamped to [1e-15, 1 - 1e-15].
std::vector<double> sample(const DistributionModel& m, std::size_t n, std::uint64_t seed);

}  // namespace headway
