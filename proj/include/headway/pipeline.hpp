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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "headway/distributions.hpp"
#include "headway/gof.hpp"
#include "headway/mcmc.hpp"

namespace headway {

/// Headways outside [kMinHeadway, kMaxHeadway] are not car following.
inline constexpr double kMinHeadway = 0.5;
inline constexpr double kMaxHeadway = 25.0;

/// Cleaned headway values in seconds. Every value lies in
/// [kMinHeadway, kMaxHeadway] and n_kept == values.size() <= n_raw.
struct HeadwaySample {
  std::vector<double> values;
  std::string source_label;
  std::size_t n_raw = 0;
  std::size_t n_kept = 0;
};

struct RawEventRecord {
  std::string event_id;
  double time_s = 0.0;
  double headway_s = 0.0;
};

enum class CsvFormat {
  kHeadwayList,   // header "headway_s"
  kEventRecords,  // header "event_id,time_s,headway_s"
};

std::optional<CsvFormat> csv_format_from_name(std::string_view name);

namespace pipeline {

/// Drops values outside the closed interval [0.5, 25]. Throws DataError when
/// nothing survives.
HeadwaySample filter_headways(std::span<const double> values, std::string label,
                              std::size_t n_raw);

/// Keeps the first record of each (event_id, floor(time_s)) bucket, in input
/// order.
std::vector<RawEventRecord> resample_1hz(std::span<const RawEventRecord> records);

/// Parses CSV text. Errors name the offending row and column.
HeadwaySample parse_csv(std::istream& in, CsvFormat format, std::string label);
/// Throws IoError if the file cannot be opened.
HeadwaySample ingest_csv(const std::filesystem::path& path, CsvFormat format);

/// Writes a single-column headway_s CSV.
void write_headway_csv(std::span<const double> values, std::ostream& out);

/// Half-open bins [e_k, e_k+1) with the last bin closed. Default edges are
/// 0.5, 1.0, ..., 25.0. Throws DataError for values outside the edge range.
gof::BinnedHistogram bin_sample(std::span<const double> values,
                                std::optional<std::vector<double>> edges = std::nullopt);

/// Synthetic stand-ins for the five field datasets, parameterized by the
/// published per-dataset MCMC estimates.
enum class Scenario { kHighD, kExiD, kNgsim, kWaymo, kLyft };

inline constexpr Scenario kAllScenarios[] = {Scenario::kHighD, Scenario::kExiD, Scenario::kNgsim,
                                             Scenario::kWaymo, Scenario::kLyft};

std::string_view scenario_name(Scenario s);
/// Accepts "highD", "highD-like", case-insensitively. Throws InvalidArgument
/// for unknown names.
Scenario scenario_from_name(std::string_view name);

/// Published parameters of `family` for `scenario` (alpha_min = 0.5).
DistributionModel fixture_model(Scenario scenario, Family family);

/// Draws n values from fixture_model and applies filter_headways.
HeadwaySample generate_fixture(Scenario scenario, Family family, std::size_t n,
                               std::uint64_t seed);

struct CompareConfig {
  mcmc::McmcConfig mcmc;
  gof::EvaluateOptions gof;
  /// Families fitted concurrently; 0 reads HEADWAY_FIT_THREADS (0 or unset
  /// means one thread per hardware core).
  std::size_t fit_threads = 0;
};

struct FamilyOutcome {
  Family family = Family::kProposed;
  std::optional<mcmc::FitResult> fit;
  std::optional<gof::GofRow> gof;
  std::string error;
};

struct CompareReport {
  std::string dataset;
  std::size_t n = 0;
  std::size_t n_raw = 0;
  CompareConfig config;
  std::vector<FamilyOutcome> outcomes;
  /// Metric key -> families best first ("kl_nats", "wasserstein_s", "ks_d"
  /// ascending; "ks_p", "chi2_p" descending). Families without the metric are
  /// left out of that ranking.
  std::map<std::string, std::vector<Family>> rankings;

  const FamilyOutcome* find(Family f) const;
};

/// Seed used for one family's fit inside compare.
std::uint64_t family_seed(std::uint64_t master, Family family);

/// Fits and evaluates each family. A family whose fit fails carries an error
/// message instead of results; the others are unaffected. Throws
/// InvalidArgument on an empty family set.
CompareReport compare(const HeadwaySample& sample, std::span<const Family> families,
                      const CompareConfig& config);

/// Pairwise two-sample KS D statistics; symmetric with zero diagonal.
std::vector<std::vector<double>> ks_matrix(std::span<const HeadwaySample> samples);

enum class PlotFormat { kCsv, kSvg };

std::string render_plot_csv(const gof::BinnedHistogram& hist,
                            std::span<const DistributionModel> fitted);
std::string render_plot_svg(const gof::BinnedHistogram& hist,
                            std::span<const DistributionModel> fitted);
/// Throws IoError when the path cannot be written.
void emit_plot_data(const gof::BinnedHistogram& hist, std::span<const DistributionModel> fitted,
                    const std::filesystem::path& out_path, PlotFormat format);

// --- serialization ---------------------------------------------------------

std::string fit_to_json(const mcmc::FitResult& fit);
/// Reads family, params and alpha_min back from fit_to_json output.
DistributionModel model_from_fit_json(std::string_view json);

std::string compare_to_json(const CompareReport& report);
/// dataset, distribution, parameter columns (a, b, mu, sigma, gamma, alpha,
/// beta, lambda), then the gof metric columns.
std::string compare_to_csv(const CompareReport& report);

}  // namespace pipeline
}  // namespace headway
