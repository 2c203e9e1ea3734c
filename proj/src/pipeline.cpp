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

#include "headway/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "json.hpp"

#include "headway/error.hpp"

namespace headway {

using nlohmann::ordered_json;

std::optional<CsvFormat> csv_format_from_name(std::string_view name) {
  if (name == "headway_list" || name == "headway-list") return CsvFormat::kHeadwayList;
  if (name == "event_records" || name == "event-records") return CsvFormat::kEventRecords;
  return std::nullopt;
}

namespace pipeline {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

std::optional<double> parse_double(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

ordered_json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

ordered_json params_json(const DistributionModel& m) {
  ordered_json out = ordered_json::object();
  const auto names = parameter_names(m.family());
  const auto values = m.to_vector();
  for (std::size_t i = 0; i < names.size(); ++i) out[std::string(names[i])] = values[i];
  return out;
}

double alpha_min_of(const DistributionModel& m, double fallback) {
  if (const auto* p = std::get_if<ProposedParams>(&m.params())) return p->alpha_min();
  return fallback;
}

ordered_json config_json(const mcmc::McmcConfig& c) {
  ordered_json out;
  out["iters"] = c.iterations;
  out["warmup"] = c.warmup;
  out["chains"] = c.chains;
  out["seed"] = c.seed;
  return out;
}

ordered_json diagnostics_json(const mcmc::FitResult& fit) {
  ordered_json diag;
  if (fit.rhat) {
    ordered_json r = ordered_json::object();
    for (std::size_t j = 0; j < fit.rhat->size(); ++j) {
      r[fit.trace.parameter_names[j]] = number_or_null((*fit.rhat)[j]);
    }
    diag["rhat"] = r;
  } else {
    diag["rhat"] = nullptr;
  }
  diag["acceptance"] = fit.acceptance;
  return diag;
}

ordered_json fit_object(const mcmc::FitResult& fit) {
  ordered_json out;
  out["family"] = family_name(fit.model.family());
  out["params"] = params_json(fit.model);
  out["alpha_min"] = alpha_min_of(fit.model, fit.config.alpha_min);
  out["diagnostics"] = diagnostics_json(fit);
  out["data_summary"] = {{"n", fit.data_summary.n},
                         {"min", fit.data_summary.min},
                         {"max", fit.data_summary.max}};
  out["config"] = config_json(fit.config);
  out["warnings"] = fit.warnings;
  return out;
}

std::size_t fit_thread_cap(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HEADWAY_FIT_THREADS")) {
    const auto v = parse_double(trim(env));
    if (v && *v >= 1.0) return static_cast<std::size_t>(*v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Palette indexed by family declaration order.
constexpr std::array<const char*, 12> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};

constexpr std::array<const char*, 8> kReportParamColumns = {"a",     "b",     "mu",   "sigma",
                                                            "gamma", "alpha", "beta", "lambda"};

}  // namespace

HeadwaySample filter_headways(std::span<const double> values, std::string label,
                              std::size_t n_raw) {
  HeadwaySample s;
  s.source_label = std::move(label);
  s.n_raw = n_raw;
  for (double v : values) {
    if (v >= kMinHeadway && v <= kMaxHeadway) s.values.push_back(v);
  }
  s.n_kept = s.values.size();
  if (s.values.empty()) {
    throw DataError("no headway values in [0.5, 25] s remain after filtering" +
                    (s.source_label.empty() ? std::string() : " (" + s.source_label + ")"));
  }
  return s;
}

std::vector<RawEventRecord> resample_1hz(std::span<const RawEventRecord> records) {
  std::set<std::pair<std::string, long long>> seen;
  std::vector<RawEventRecord> out;
  for (const auto& r : records) {
    const auto bucket = static_cast<long long>(std::floor(r.time_s));
    if (seen.emplace(r.event_id, bucket).second) out.push_back(r);
  }
  return out;
}

HeadwaySample parse_csv(std::istream& in, CsvFormat format, std::string label) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> header;
  std::string header_line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!trim(line).empty()) {
      header_line = line;
      break;
    }
  }
  if (header_line.empty()) throw DataError("csv: missing header row");
  if (!header_line.empty() && header_line.back() == '\r') header_line.pop_back();
  header = split(header_line);

  auto column = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (lower(header[i]) == name) return i;
    }
    throw DataError("csv: missing column '" + std::string(name) + "'");
  };
  const std::size_t headway_col = column("headway_s");
  std::size_t event_col = 0;
  std::size_t time_col = 0;
  if (format == CsvFormat::kEventRecords) {
    event_col = column("event_id");
    time_col = column("time_s");
  }

  auto numeric = [&](const std::vector<std::string_view>& cells, std::size_t col) {
    if (col >= cells.size()) {
      throw DataError("csv: row " + std::to_string(line_no) + " has no column '" +
                      std::string(header[col]) + "'");
    }
    const auto v = parse_double(cells[col]);
    if (!v) {
      throw DataError("csv: row " + std::to_string(line_no) + ", column '" +
                      std::string(header[col]) + "': not a number: '" + std::string(cells[col]) +
                      "'");
    }
    return *v;
  };

  std::vector<double> headways;
  std::vector<RawEventRecord> records;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    ++rows;
    const double h = numeric(cells, headway_col);
    if (format == CsvFormat::kHeadwayList) {
      headways.push_back(h);
    } else {
      const double t = numeric(cells, time_col);
      if (event_col >= cells.size()) {
        throw DataError("csv: row " + std::to_string(line_no) + " has no column 'event_id'");
      }
      if (t < 0.0) {
        throw DataError("csv: row " + std::to_string(line_no) + ", column 'time_s': negative time");
      }
      records.push_back({std::string(cells[event_col]), t, h});
    }
  }
  if (format == CsvFormat::kEventRecords) {
    for (const auto& r : resample_1hz(records)) headways.push_back(r.headway_s);
  }
  return filter_headways(headways, std::move(label), rows);
}

HeadwaySample ingest_csv(const std::filesystem::path& path, CsvFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_csv(in, format, path.filename().string());
}

void write_headway_csv(std::span<const double> values, std::ostream& out) {
  out << "headway_s\n";
  for (double v : values) out << gof::format_number(v) << '\n';
}

gof::BinnedHistogram bin_sample(std::span<const double> values,
                                std::optional<std::vector<double>> edges) {
  if (values.empty()) throw InvalidArgument("bin_sample: sample must not be empty");
  gof::BinnedHistogram hist;
  hist.edges = edges ? std::move(*edges) : gof::default_edges();
  hist.counts.assign(hist.edges.size() - 1, 0);
  gof::validate(hist);
  for (double v : values) {
    if (!(v >= hist.edges.front() && v <= hist.edges.back())) {
      throw DataError("bin_sample: value " + std::to_string(v) + " outside the bin range");
    }
    auto it = std::upper_bound(hist.edges.begin(), hist.edges.end(), v);
    std::size_t bin = static_cast<std::size_t>(it - hist.edges.begin()) - 1;
    bin = std::min(bin, hist.counts.size() - 1);
    ++hist.counts[bin];
  }
  hist.n = values.size();
  return hist;
}

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kHighD: return "highD";
    case Scenario::kExiD: return "exiD";
    case Scenario::kNgsim: return "NGSIM";
    case Scenario::kWaymo: return "Waymo";
    case Scenario::kLyft: return "Lyft";
  }
  return "unknown";
}

Scenario scenario_from_name(std::string_view name) {
  std::string key = lower(name);
  if (key.size() > 5 && key.ends_with("-like")) key.resize(key.size() - 5);
  for (Scenario s : kAllScenarios) {
    if (key == lower(scenario_name(s))) return s;
  }
  throw InvalidArgument("unknown scenario '" + std::string(name) +
                        "' (expected highD, exiD, NGSIM, Waymo or Lyft)");
}

DistributionModel fixture_model(Scenario scenario, Family family) {
  // Columns: highD, exiD, NGSIM, Waymo, Lyft.
  struct Row {
    Family family;
    std::array<std::array<double, 5>, 3> values;
  };
  static const Row kTable[] = {
      {Family::kProposed,
       {{{0.936, 0.879, 2.277, 2.339, 4.598}, {0.540, 0.583, 0.481, 0.721, 0.676}, {}}}},
      {Family::kShiftedLogNormal,
       {{{0.233, 0.306, 0.683, 1.012, 1.448},
         {0.899, 0.942, 0.594, 0.794, 0.525},
         {0.377, 0.374, 0.528, 0.483, 0.892}}}},
      {Family::kWeibull,
       {{{1.481, 1.408, 1.744, 1.348, 1.926}, {2.473, 2.677, 3.305, 4.780, 6.649}, {}}}},
      {Family::kLogLogistic,
       {{{2.574, 2.419, 3.910, 2.686, 4.082}, {1.719, 1.826, 2.515, 3.215, 5.019}, {}}}},
      {Family::kGamma,
       {{{2.335, 2.098, 4.175, 2.137, 4.654}, {1.055, 0.868, 1.428, 0.494, 0.794}, {}}}},
      {Family::kBurr,
       {{{3.199, 2.796, 5.237, 4.018, 10.609},
         {0.602, 0.709, 0.524, 0.439, 0.203},
         {1.296, 1.480, 2.021, 2.185, 3.387}}}},
      {Family::kShiftedExponential,
       {{{0.584, 0.522, 0.423, 0.261, 0.201}, {0.500, 0.499, 0.558, 0.506, 0.894}, {}}}},
  };
  const auto column = static_cast<std::size_t>(scenario);
  for (const auto& row : kTable) {
    if (row.family != family) continue;
    std::vector<double> params;
    for (std::size_t i = 0; i < parameter_count(family); ++i) {
      params.push_back(row.values[i][column]);
    }
    return DistributionModel::from_vector(family, params, ProposedParams::kDefaultAlphaMin);
  }
  throw InvalidArgument("no fixture parameters for family");
}

HeadwaySample generate_fixture(Scenario scenario, Family family, std::size_t n,
                               std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("generate_fixture: n must be at least 1");
  const auto model = fixture_model(scenario, family);
  const auto draws = sample(model, n, seed);
  return filter_headways(draws,
                         std::string(scenario_name(scenario)) + "-like/" +
                             std::string(family_name(family)),
                         n);
}

const FamilyOutcome* CompareReport::find(Family f) const {
  for (const auto& o : outcomes) {
    if (o.family == f) return &o;
  }
  return nullptr;
}

std::uint64_t family_seed(std::uint64_t master, Family family) {
  return derive_seed(master, 0x100 + static_cast<std::uint64_t>(family));
}

CompareReport compare(const HeadwaySample& sample, std::span<const Family> families,
                      const CompareConfig& config) {
  if (families.empty()) throw InvalidArgument("compare: no families requested");
  mcmc::validate(config.mcmc);

  std::vector<Family> unique;
  for (Family f : families) {
    if (std::find(unique.begin(), unique.end(), f) == unique.end()) unique.push_back(f);
  }

  CompareReport report;
  report.dataset = sample.source_label;
  report.n = sample.values.size();
  report.n_raw = sample.n_raw;
  report.config = config;
  report.outcomes.resize(unique.size());

  const auto hist = bin_sample(sample.values);
  auto run_one = [&](std::size_t i) {
    FamilyOutcome& out = report.outcomes[i];
    out.family = unique[i];
    try {
      mcmc::McmcConfig cfg = config.mcmc;
      cfg.seed = family_seed(config.mcmc.seed, out.family);
      out.fit = mcmc::fit(out.family, sample.values, cfg);
      out.gof = gof::evaluate_all(sample.source_label, sample.values, hist, out.fit->model,
                                  parameter_count(out.family), config.gof);
    } catch (const std::exception& e) {
      out.fit.reset();
      out.gof.reset();
      out.error = e.what();
    }
  };

  const std::size_t cap = std::min(fit_thread_cap(config.fit_threads), unique.size());
  if (cap <= 1) {
    for (std::size_t i = 0; i < unique.size(); ++i) run_one(i);
  } else {
    for (std::size_t first = 0; first < unique.size(); first += cap) {
      std::vector<std::thread> pool;
      for (std::size_t i = first; i < std::min(first + cap, unique.size()); ++i) {
        pool.emplace_back(run_one, i);
      }
      for (auto& t : pool) t.join();
    }
  }

  auto rank = [&](const std::string& key, auto metric, bool ascending) {
    std::vector<std::pair<double, Family>> scored;
    for (const auto& o : report.outcomes) {
      if (!o.gof) continue;
      if (const auto v = metric(*o.gof)) scored.emplace_back(*v, o.family);
    }
    std::stable_sort(scored.begin(), scored.end(), [ascending](const auto& a, const auto& b) {
      return ascending ? a.first < b.first : a.first > b.first;
    });
    auto& list = report.rankings[key];
    for (const auto& s : scored) list.push_back(s.second);
  };
  using Opt = std::optional<double>;
  rank("kl_nats", [](const gof::GofRow& r) { return r.kl_nats; }, true);
  rank("wasserstein_s", [](const gof::GofRow& r) { return r.wasserstein; }, true);
  rank("ks_d", [](const gof::GofRow& r) { return r.ks ? Opt(r.ks->d_statistic) : Opt(); }, true);
  rank("ks_p", [](const gof::GofRow& r) { return r.ks ? Opt(r.ks->p_value) : Opt(); }, false);
  rank("chi2_p", [](const gof::GofRow& r) { return r.chi2 ? Opt(r.chi2->p_value) : Opt(); },
       false);
  return report;
}

std::vector<std::vector<double>> ks_matrix(std::span<const HeadwaySample> samples) {
  if (samples.size() < 2) throw InvalidArgument("ks_matrix: need at least two samples");
  const std::size_t k = samples.size();
  std::vector<std::vector<double>> m(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = gof::ks_test_two_sample(samples[i].values, samples[j].values).d_statistic;
      m[i][j] = d;
      m[j][i] = d;
    }
  }
  return m;
}

std::string render_plot_csv(const gof::BinnedHistogram& hist,
                            std::span<const DistributionModel> fitted) {
  gof::validate(hist);
  if (hist.n == 0) throw InvalidArgument("plot: empty histogram");
  std::ostringstream out;
  out << "midpoint,observed";
  std::map<Family, int> seen;
  for (const auto& m : fitted) {
    const int count = ++seen[m.family()];
    out << ',' << family_name(m.family());
    if (count > 1) out << '_' << count;
  }
  out << '\n';
  std::vector<std::vector<double>> levels;
  for (const auto& m : fitted) {
    std::vector<double> l;
    for (double e : hist.edges) l.push_back(cdf(m, e));
    levels.push_back(std::move(l));
  }
  for (std::size_t k = 0; k < hist.bin_count(); ++k) {
    out << gof::format_number(0.5 * (hist.edges[k] + hist.edges[k + 1])) << ','
        << gof::format_number(static_cast<double>(hist.counts[k]) / static_cast<double>(hist.n));
    for (const auto& l : levels) out << ',' << gof::format_number(l[k + 1] - l[k]);
    out << '\n';
  }
  return out.str();
}

std::string render_plot_svg(const gof::BinnedHistogram& hist,
                            std::span<const DistributionModel> fitted) {
  gof::validate(hist);
  if (hist.n == 0) throw InvalidArgument("plot: empty histogram");
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 500.0;
  constexpr double kLeft = 60.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 20.0;
  constexpr double kBottom = 50.0;
  constexpr int kCurvePoints = 500;

  const double x0 = hist.edges.front();
  const double x1 = hist.edges.back();
  const double bin_width = (x1 - x0) / static_cast<double>(hist.bin_count());
  const double n = static_cast<double>(hist.n);

  std::vector<std::vector<std::pair<double, double>>> curves;
  double y_max = 0.0;
  for (auto c : hist.counts) y_max = std::max(y_max, static_cast<double>(c) / n);
  for (const auto& m : fitted) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < kCurvePoints; ++i) {
      const double t = x0 + (x1 - x0) * i / (kCurvePoints - 1);
      const double y = pdf(m, t) * bin_width;
      pts.emplace_back(t, std::isfinite(y) ? y : 0.0);
      y_max = std::max(y_max, pts.back().second);
    }
    curves.push_back(std::move(pts));
  }
  if (!(y_max > 0.0)) y_max = 1.0;
  y_max *= 1.1;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * plot_w; };
  auto sy = [&](double y) { return kTop + plot_h - std::min(y, y_max) / y_max * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
         "viewBox=\"0 0 800 500\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n";
  out << "<g fill=\"#c6dbef\" stroke=\"#6baed6\" stroke-width=\"0.5\">\n";
  for (std::size_t k = 0; k < hist.bin_count(); ++k) {
    const double freq = static_cast<double>(hist.counts[k]) / n;
    const double left = sx(hist.edges[k]);
    const double right = sx(hist.edges[k + 1]);
    const double top = sy(freq);
    out << "<rect x=\"" << fixed(left, 2) << "\" y=\"" << fixed(top, 2) << "\" width=\""
        << fixed(right - left, 2) << "\" height=\"" << fixed(kTop + plot_h - top, 2) << "\"/>\n";
  }
  out << "</g>\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* color = kPalette[static_cast<std::size_t>(fitted[i].family()) % kPalette.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t p = 0; p < curves[i].size(); ++p) {
      if (p) out << ' ';
      out << fixed(sx(curves[i][p].first), 2) << ',' << fixed(sy(curves[i][p].second), 2);
    }
    out << "\"/>\n";
    out << "<text x=\"" << fixed(kWidth - kRight - 160.0, 2) << "\" y=\""
        << fixed(kTop + 16.0 * static_cast<double>(i + 1), 2) << "\" font-size=\"12\" fill=\""
        << color << "\">" << family_label(fitted[i].family()) << "</text>\n";
  }
  // Axes with ticks every 5 s.
  out << "<g stroke=\"#000000\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << fixed(kLeft, 2) << "\" y1=\"" << fixed(kTop + plot_h, 2) << "\" x2=\""
      << fixed(kLeft + plot_w, 2) << "\" y2=\"" << fixed(kTop + plot_h, 2) << "\"/>\n";
  out << "<line x1=\"" << fixed(kLeft, 2) << "\" y1=\"" << fixed(kTop, 2) << "\" x2=\""
      << fixed(kLeft, 2) << "\" y2=\"" << fixed(kTop + plot_h, 2) << "\"/>\n";
  out << "</g>\n";
  for (double t = std::ceil(x0 / 5.0) * 5.0; t <= x1 + 1e-9; t += 5.0) {
    out << "<text x=\"" << fixed(sx(t), 2) << "\" y=\"" << fixed(kTop + plot_h + 18.0, 2)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fixed(t, 0) << "</text>\n";
  }
  out << "<text x=\"" << fixed(kLeft + plot_w / 2.0, 2) << "\" y=\"" << fixed(kHeight - 8.0, 2)
      << "\" font-size=\"12\" text-anchor=\"middle\">Headway (s)</text>\n";
  out << "<text x=\"14\" y=\"" << fixed(kTop + plot_h / 2.0, 2)
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << fixed(kTop + plot_h / 2.0, 2) << ")\">Frequency</text>\n";
  out << "</svg>\n";
  return out.str();
}

void emit_plot_data(const gof::BinnedHistogram& hist, std::span<const DistributionModel> fitted,
                    const std::filesystem::path& out_path, PlotFormat format) {
  const std::string body = format == PlotFormat::kCsv ? render_plot_csv(hist, fitted)
                                                      : render_plot_svg(hist, fitted);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + out_path.string() + "'");
  out << body;
  if (!out) throw IoError("write failed for '" + out_path.string() + "'");
}

std::string fit_to_json(const mcmc::FitResult& fit) { return fit_object(fit).dump(2); }

DistributionModel model_from_fit_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw DataError(std::string("fit json: ") + e.what());
  }
  try {
    const auto family = family_from_name(j.at("family").get<std::string>());
    if (!family) throw DataError("fit json: unknown family");
    const auto& params = j.at("params");
    std::vector<double> values;
    for (auto name : parameter_names(*family)) {
      values.push_back(params.at(std::string(name)).get<double>());
    }
    const double alpha_min = j.value("alpha_min", ProposedParams::kDefaultAlphaMin);
    return DistributionModel::from_vector(*family, values, alpha_min);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("fit json: ") + e.what());
  }
}

std::string compare_to_json(const CompareReport& report) {
  ordered_json out;
  out["dataset"] = report.dataset;
  out["n"] = report.n;
  out["n_raw"] = report.n_raw;
  out["config"] = config_json(report.config.mcmc);
  out["config"]["alpha_min"] = report.config.mcmc.alpha_min;
  out["config"]["wasserstein_p"] = report.config.gof.wasserstein_order;
  out["config"]["skip_chi2"] = report.config.gof.skip_chi2;
  ordered_json results = ordered_json::array();
  for (const auto& o : report.outcomes) {
    ordered_json r;
    r["distribution"] = family_name(o.family);
    if (o.fit) {
      r["params"] = params_json(o.fit->model);
      r["diagnostics"] = diagnostics_json(*o.fit);
      r["warnings"] = o.fit->warnings;
    }
    if (o.gof) {
      const gof::GofRow rows[] = {*o.gof};
      auto metrics = ordered_json::parse(gof::to_json(rows))[0];
      metrics.erase("dataset");
      metrics.erase("distribution");
      r["metrics"] = metrics;
    }
    r["error"] = o.error.empty() ? ordered_json(nullptr) : ordered_json(o.error);
    results.push_back(std::move(r));
  }
  out["results"] = results;
  ordered_json rankings = ordered_json::object();
  for (const auto& [key, list] : report.rankings) {
    ordered_json names = ordered_json::array();
    for (Family f : list) names.push_back(family_name(f));
    rankings[key] = names;
  }
  out["rankings"] = rankings;
  return out.dump(2);
}

std::string compare_to_csv(const CompareReport& report) {
  std::ostringstream out;
  out << "dataset,distribution";
  for (const char* c : kReportParamColumns) out << ',' << c;
  for (const char* c : gof::kCsvColumns) out << ',' << c;
  out << ",error\n";
  for (const auto& o : report.outcomes) {
    out << report.dataset << ',' << family_name(o.family);
    std::map<std::string, double> params;
    if (o.fit) {
      const auto names = parameter_names(o.family);
      const auto values = o.fit->model.to_vector();
      for (std::size_t i = 0; i < names.size(); ++i) params[std::string(names[i])] = values[i];
    }
    for (const char* c : kReportParamColumns) {
      out << ',';
      if (auto it = params.find(c); it != params.end()) out << gof::format_number(it->second);
    }
    if (o.gof) {
      for (const auto& cell : gof::metric_cells(*o.gof)) out << ',' << cell;
    } else {
      for (std::size_t i = 0; i < std::size(gof::kCsvColumns); ++i) out << ',';
    }
    std::string error = o.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << ',' << error << '\n';
  }
  return out.str();
}

}  // namespace pipeline
}  // namespace headway
