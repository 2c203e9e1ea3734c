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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "headway/headway.h"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

// Carries a library status out of a subcommand.
struct Failure {
  hw_status status;
  std::string message;
};

void check(hw_status s) {
  if (s != HW_OK) throw Failure{s, hw_last_error()};
}

int exit_code(hw_status s) {
  switch (s) {
    case HW_OK: return kOk;
    case HW_ERR_INVALID_ARGUMENT: return kUsage;
    case HW_ERR_DATA:
    case HW_ERR_IO: return kData;
    default: return kNumerical;
  }
}

struct SampleDeleter {
  void operator()(hw_sample* p) const { hw_sample_free(p); }
};
struct ModelDeleter {
  void operator()(hw_model* p) const { hw_model_free(p); }
};
struct FitDeleter {
  void operator()(hw_fit* p) const { hw_fit_free(p); }
};
struct ReportDeleter {
  void operator()(hw_report* p) const { hw_report_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { hw_string_free(p); }
};
using SamplePtr = std::unique_ptr<hw_sample, SampleDeleter>;
using ModelPtr = std::unique_ptr<hw_model, ModelDeleter>;
using FitPtr = std::unique_ptr<hw_fit, FitDeleter>;
using ReportPtr = std::unique_ptr<hw_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

void usage_error(const std::string& msg) {
  throw Failure{HW_ERR_INVALID_ARGUMENT, msg};
}

int family_id(const std::string& name) {
  int id = -1;
  check(hw_family_from_name(name.c_str(), &id));
  return id;
}

std::vector<int> family_list(const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& raw : names) {
    if (raw == "all") {
      for (int f = 0; f < HW_FAMILY_COUNT; ++f) out.push_back(f);
    } else {
      out.push_back(family_id(raw));
    }
  }
  return out;
}

hw_csv_format csv_format(const std::string& name) {
  if (name == "headway_list" || name == "list") return HW_CSV_HEADWAY_LIST;
  if (name == "event_records" || name == "events") return HW_CSV_EVENT_RECORDS;
  usage_error("unknown --format '" + name + "' (expected headway_list or event_records)");
  return HW_CSV_HEADWAY_LIST;
}

SamplePtr read_sample(const std::string& path, const std::string& format) {
  hw_sample* s = nullptr;
  check(hw_sample_read_csv(path.c_str(), csv_format(format), &s));
  return SamplePtr(s);
}

// Parses "a=0.936,b=0.540" into the family's canonical parameter order.
std::vector<double> parse_params(int family, const std::string& text) {
  const size_t count = hw_family_param_count(family);
  std::vector<std::optional<double>> slots(count);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) usage_error("--params entry '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    size_t idx = count;
    for (size_t i = 0; i < count; ++i) {
      if (key == hw_family_param_name(family, i)) idx = i;
    }
    if (idx == count) {
      usage_error("unknown parameter '" + key + "' for " + hw_family_name(family));
    }
    try {
      size_t used = 0;
      slots[idx] = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      usage_error("parameter '" + key + "' is not a number");
    }
  }
  std::vector<double> out;
  for (size_t i = 0; i < count; ++i) {
    if (!slots[i]) {
      usage_error(std::string("missing parameter '") + hw_family_param_name(family, i) + "'");
    }
    out.push_back(*slots[i]);
  }
  return out;
}

ModelPtr make_model(int family, const std::string& params, double alpha) {
  const auto values = parse_params(family, params);
  hw_model* m = nullptr;
  check(hw_model_create(family, values.data(), values.size(), alpha, &m));
  return ModelPtr(m);
}

ModelPtr model_from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{HW_ERR_IO, "cannot open '" + path + "'"};
  std::stringstream buf;
  buf << in.rdbuf();
  hw_model* m = nullptr;
  check(hw_model_from_fit_json(buf.str().c_str(), &m));
  return ModelPtr(m);
}

void emit(const std::string& out_path, const std::string& body) {
  if (out_path.empty() || out_path == "-") {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Failure{HW_ERR_IO, "cannot write '" + out_path + "'"};
  out << body;
  if (!body.empty() && body.back() != '\n') out << '\n';
  if (!out) throw Failure{HW_ERR_IO, "write failed for '" + out_path + "'"};
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct SeedOption {
  uint64_t value = 0;
  std::vector<CLI::Option*> opts;

  void add(CLI::App* app) { opts.push_back(app->add_option("--seed", value, "Master RNG seed")); }
  uint64_t resolve() const {
    size_t given = 0;
    for (const auto* o : opts) given += o->count();
    if (given == 0) std::cerr << "headway: no --seed given, using seed 0\n";
    return value;
  }
};

struct McmcOptions {
  double alpha = 0.5;
  size_t iters = 10000;
  size_t warmup = 5000;
  size_t chains = 2;
  size_t threads = 0;

  void add(CLI::App* app) {
    app->add_option("--alpha", alpha, "Lower support bound for the proposed family")
        ->capture_default_str();
    app->add_option("--iters", iters, "MCMC iterations per chain")->capture_default_str();
    app->add_option("--warmup", warmup, "Warmup iterations per chain")->capture_default_str();
    app->add_option("--chains", chains, "Number of chains")->capture_default_str();
    app->add_option("--threads", threads, "Chain threads per fit (0 = one per chain)");
  }
  hw_mcmc_config config(uint64_t seed) const {
    hw_mcmc_config c;
    hw_mcmc_config_default(&c);
    c.iterations = iters;
    c.warmup = warmup;
    c.chains = chains;
    c.seed = seed;
    c.alpha_min = alpha;
    c.max_threads = threads;
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Headway distribution fitting and evaluation"};
  app.require_subcommand(1);

  std::string input, format = "headway_list", out, trace, dist, params, scenario,
                     plot_format;
  std::vector<std::string> dists, inputs, fit_files, scenarios;
  double wasserstein_p = 1.0;
  bool skip_chi2 = false;
  size_t n = 1000;
  SeedOption seed;
  McmcOptions mcmc;

  auto* fit = app.add_subcommand("fit", "Fit one family to a headway CSV");
  fit->add_option("--input", input, "Headway CSV")->required();
  fit->add_option("--format", format, "headway_list or event_records");
  fit->add_option("--dist", dist, "Family name")->required();
  fit->add_option("--out", out, "Fit JSON output (default stdout)");
  fit->add_option("--trace", trace, "Write the full chain trace as CSV");
  mcmc.add(fit);
  seed.add(fit);

  auto* compare = app.add_subcommand("compare", "Fit and rank several families");
  compare->add_option("--input", input, "Headway CSV")->required();
  compare->add_option("--format", format, "headway_list or event_records");
  compare->add_option("--dists", dists, "Families, comma separated, or 'all'")
      ->delimiter(',')
      ->required();
  compare->add_option("--out", out, "Report path; .json selects JSON, otherwise CSV");
  compare->add_option("--p", wasserstein_p, "Wasserstein order")->capture_default_str();
  compare->add_flag("--skip-chi2", skip_chi2, "Do not run the chi-square test");
  mcmc.add(compare);
  seed.add(compare);

  auto* gof = app.add_subcommand("gof", "Evaluate a fixed model against data");
  gof->add_option("--input", input, "Headway CSV")->required();
  gof->add_option("--format", format, "headway_list or event_records");
  auto* gof_fit = gof->add_option("--fit", fit_files, "Fit JSON holding the model");
  auto* gof_dist = gof->add_option("--dist", dist, "Family name");
  gof->add_option("--params", params, "Parameters as key=value,...");
  gof->add_option("--alpha", mcmc.alpha, "Lower support bound for the proposed family");
  gof->add_option("--out", out, "Output path; .json selects JSON, otherwise CSV");
  gof->add_option("--p", wasserstein_p, "Wasserstein order");
  gof->add_flag("--skip-chi2", skip_chi2, "Do not run the chi-square test");
  gof_fit->excludes(gof_dist);

  auto* ksm = app.add_subcommand("ks-matrix", "Pairwise two-sample KS statistics");
  ksm->add_option("--input", inputs, "Headway CSVs")->delimiter(',');
  ksm->add_option("--format", format, "headway_list or event_records");
  ksm->add_option("--scenario", scenarios, "Fixture scenarios instead of files")->delimiter(',');
  ksm->add_option("--dist", dist, "Fixture family")->default_str("proposed");
  ksm->add_option("-n", n, "Fixture size");
  ksm->add_option("--out", out, "Matrix CSV output (default stdout)");
  seed.add(ksm);

  auto* smp = app.add_subcommand("sample", "Draw from a parameterized family");
  smp->add_option("--dist", dist, "Family name")->required();
  smp->add_option("--params", params, "Parameters as key=value,...")->required();
  smp->add_option("--alpha", mcmc.alpha, "Lower support bound for the proposed family");
  smp->add_option("-n", n, "Number of draws")->capture_default_str();
  smp->add_option("--out", out, "CSV output (default stdout)");
  seed.add(smp);

  auto* fix = app.add_subcommand("fixture", "Generate a filtered fixture sample");
  fix->add_option("--scenario", scenario, "highD, exiD, NGSIM, Waymo or Lyft")->required();
  fix->add_option("--dist", dist, "Family name")->required();
  fix->add_option("-n", n, "Draws before filtering")->capture_default_str();
  fix->add_option("--out", out, "CSV output (default stdout)");
  seed.add(fix);

  auto* plot = app.add_subcommand("plot", "Histogram with fitted curves");
  plot->add_option("--input", input, "Headway CSV")->required();
  plot->add_option("--format", format, "headway_list or event_records");
  plot->add_option("--fit", fit_files, "Fit JSON files to overlay")->delimiter(',');
  plot->add_option("--out", out, "Output path")->required();
  plot->add_option("--plot-format", plot_format, "csv or svg (default from extension)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "headway: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*fit) {
      const int family = family_id(dist);
      const auto sample = read_sample(input, format);
      const auto config = mcmc.config(seed.resolve());
      hw_fit* f = nullptr;
      check(hw_fit_run(sample.get(), family, &config, &f));
      FitPtr result(f);
      for (size_t i = 0; i < hw_fit_warning_count(f); ++i) {
        std::cerr << "headway: warning: " << hw_fit_warning(f, i) << '\n';
      }
      if (!trace.empty()) check(hw_fit_write_trace_csv(f, trace.c_str()));
      char* json = nullptr;
      check(hw_fit_to_json(f, &json));
      StringPtr owned(json);
      emit(out, json);
    } else if (*compare) {
      const auto sample = read_sample(input, format);
      const auto families = family_list(dists);
      auto config = mcmc.config(seed.resolve());
      hw_gof_options opts;
      hw_gof_options_default(&opts);
      opts.wasserstein_order = wasserstein_p;
      opts.skip_chi2 = skip_chi2 ? 1 : 0;
      hw_report* r = nullptr;
      check(hw_compare_run(sample.get(), families.data(), families.size(), &config, &opts, &r));
      ReportPtr report(r);
      for (size_t i = 0; i < hw_report_message_count(r); ++i) {
        std::cerr << "headway: " << hw_report_message(r, i) << '\n';
      }
      char* body = nullptr;
      check(ends_with(out, ".json") ? hw_report_to_json(r, &body) : hw_report_to_csv(r, &body));
      StringPtr owned(body);
      emit(out, body);
    } else if (*gof) {
      const auto sample = read_sample(input, format);
      ModelPtr model;
      if (!fit_files.empty()) {
        if (fit_files.size() != 1) usage_error("gof takes a single --fit");
        model = model_from_file(fit_files.front());
      } else if (!dist.empty()) {
        model = make_model(family_id(dist), params, mcmc.alpha);
      } else {
        usage_error("gof needs --fit or --dist with --params");
      }
      const int family = hw_model_family(model.get());
      hw_gof_options opts;
      hw_gof_options_default(&opts);
      opts.wasserstein_order = wasserstein_p;
      opts.skip_chi2 = skip_chi2 ? 1 : 0;
      char* json = nullptr;
      char* csv = nullptr;
      check(hw_gof_evaluate(sample.get(), model.get(), hw_family_param_count(family), &opts,
                            &json, &csv));
      StringPtr j(json), c(csv);
      emit(out, ends_with(out, ".json") ? json : csv);
    } else if (*ksm) {
      std::vector<SamplePtr> owned;
      for (const auto& path : inputs) owned.push_back(read_sample(path, format));
      if (!scenarios.empty()) {
        const int family = family_id(dist.empty() ? "proposed" : dist);
        const uint64_t master = seed.resolve();
        for (size_t i = 0; i < scenarios.size(); ++i) {
          hw_sample* s = nullptr;
          check(hw_sample_fixture(scenarios[i].c_str(), family, n, master + i, &s));
          owned.emplace_back(s);
        }
      }
      if (owned.size() < 2) usage_error("ks-matrix needs at least two samples");
      std::vector<const hw_sample*> handles;
      for (const auto& s : owned) handles.push_back(s.get());
      std::vector<double> matrix(handles.size() * handles.size());
      check(hw_ks_matrix(handles.data(), handles.size(), matrix.data()));
      std::ostringstream body;
      body << "sample";
      for (const auto* s : handles) body << ',' << hw_sample_label(s);
      body << '\n';
      char cell[32];
      for (size_t i = 0; i < handles.size(); ++i) {
        body << hw_sample_label(handles[i]);
        for (size_t j = 0; j < handles.size(); ++j) {
          std::snprintf(cell, sizeof cell, "%.6f", matrix[i * handles.size() + j]);
          body << ',' << cell;
        }
        body << '\n';
      }
      emit(out, body.str());
    } else if (*smp) {
      const int family = family_id(dist);
      const auto model = make_model(family, params, mcmc.alpha);
      const uint64_t s = seed.resolve();
      std::vector<double> draws(n);
      check(hw_model_sample(model.get(), n, s, draws.data()));
      std::ostringstream body;
      body << "headway_s\n";
      char cell[32];
      for (double v : draws) {
        std::snprintf(cell, sizeof cell, "%.17g", v);
        body << cell << '\n';
      }
      emit(out, body.str());
    } else if (*fix) {
      hw_sample* s = nullptr;
      check(hw_sample_fixture(scenario.c_str(), family_id(dist), n, seed.resolve(), &s));
      SamplePtr sample(s);
      std::cerr << "headway: kept " << hw_sample_size(s) << " of " << hw_sample_raw_size(s)
                << " draws\n";
      if (out.empty() || out == "-") {
        std::cout << "headway_s\n";
        const double* v = hw_sample_values(s);
        char cell[32];
        for (size_t i = 0; i < hw_sample_size(s); ++i) {
          std::snprintf(cell, sizeof cell, "%.17g", v[i]);
          std::cout << cell << '\n';
        }
      } else {
        check(hw_sample_write_csv(s, out.c_str()));
      }
    } else if (*plot) {
      const auto sample = read_sample(input, format);
      std::vector<ModelPtr> models;
      for (const auto& path : fit_files) models.push_back(model_from_file(path));
      std::vector<const hw_model*> handles;
      for (const auto& m : models) handles.push_back(m.get());
      hw_plot_format pf = ends_with(out, ".svg") ? HW_PLOT_SVG : HW_PLOT_CSV;
      if (plot_format == "svg") {
        pf = HW_PLOT_SVG;
      } else if (plot_format == "csv") {
        pf = HW_PLOT_CSV;
      } else if (!plot_format.empty()) {
        usage_error("unknown --plot-format '" + plot_format + "'");
      }
      check(hw_plot_write(sample.get(), handles.data(), handles.size(), out.c_str(), pf));
    }
  } catch (const Failure& f) {
    std::cerr << "headway: " << f.message << '\n';
    if (f.status == HW_ERR_INVALID_ARGUMENT) std::cerr << '\n' << app.help();
    return exit_code(f.status);
  }
  return kOk;
}
