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

#include "headway/headway.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "headway/error.hpp"
#include "headway/pipeline.hpp"

using namespace headway;

struct hw_sample {
  HeadwaySample value;
};

struct hw_model {
  DistributionModel value;
};

struct hw_fit {
  mcmc::FitResult value;
};

struct hw_report {
  pipeline::CompareReport value;
  std::vector<std::string> messages;
};

namespace {

thread_local std::string g_last_error;

hw_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return HW_ERR_INVALID_ARGUMENT;
    case ErrorKind::kData: return HW_ERR_DATA;
    case ErrorKind::kNumerical: return HW_ERR_NUMERICAL;
    case ErrorKind::kIo: return HW_ERR_IO;
  }
  return HW_ERR_INTERNAL;
}

template <class Fn>
hw_status guard(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return HW_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return HW_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

Family to_family(int family) {
  require(family >= 0 && family < HW_FAMILY_COUNT, "family id out of range");
  return static_cast<Family>(family);
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

mcmc::McmcConfig to_config(const hw_mcmc_config* c) {
  mcmc::McmcConfig out;
  if (!c) return out;
  out.iterations = c->iterations;
  out.warmup = c->warmup;
  out.chains = c->chains;
  out.seed = c->seed;
  out.alpha_min = c->alpha_min;
  out.adapt = c->adapt != 0;
  out.max_threads = c->max_threads;
  return out;
}

gof::EvaluateOptions to_options(const hw_gof_options* o) {
  gof::EvaluateOptions out;
  if (!o) return out;
  out.wasserstein_order = o->wasserstein_order;
  out.skip_chi2 = o->skip_chi2 != 0;
  return out;
}


}  // namespace

extern "C" {

const char* hw_version(void) { return "1.0.0"; }

const char* hw_last_error(void) { return g_last_error.c_str(); }

void hw_string_free(char* s) { std::free(s); }

void hw_mcmc_config_default(hw_mcmc_config* config) {
  if (!config) return;
  const mcmc::McmcConfig d;
  config->iterations = d.iterations;
  config->warmup = d.warmup;
  config->chains = d.chains;
  config->seed = d.seed;
  config->alpha_min = d.alpha_min;
  config->adapt = d.adapt ? 1 : 0;
  config->max_threads = d.max_threads;
  config->fit_threads = 0;
}

void hw_gof_options_default(hw_gof_options* options) {
  if (!options) return;
  options->wasserstein_order = 1.0;
  options->skip_chi2 = 0;
}

hw_status hw_family_from_name(const char* name, int* family) {
  return guard([&] {
    require(name && family, "null argument");
    const auto f = family_from_name(name);
    if (!f) throw InvalidArgument(std::string("unknown distribution '") + name + "'");
    *family = static_cast<int>(*f);
  });
}

const char* hw_family_name(int family) {
  if (family < 0 || family >= HW_FAMILY_COUNT) return nullptr;
  return family_name(static_cast<Family>(family)).data();
}

size_t hw_family_param_count(int family) {
  if (family < 0 || family >= HW_FAMILY_COUNT) return 0;
  return parameter_count(static_cast<Family>(family));
}

const char* hw_family_param_name(int family, size_t index) {
  if (family < 0 || family >= HW_FAMILY_COUNT) return nullptr;
  const auto names = parameter_names(static_cast<Family>(family));
  return index < names.size() ? names[index].data() : nullptr;
}

hw_status hw_sample_read_csv(const char* path, hw_csv_format format, hw_sample** out) {
  return guard([&] {
    require(path && out, "null argument");
    const auto fmt =
        format == HW_CSV_EVENT_RECORDS ? CsvFormat::kEventRecords : CsvFormat::kHeadwayList;
    *out = new hw_sample{pipeline::ingest_csv(path, fmt)};
  });
}

hw_status hw_sample_from_values(const double* values, size_t n, const char* label,
                                hw_sample** out) {
  return guard([&] {
    require(out && (values || n == 0), "null argument");
    *out = new hw_sample{pipeline::filter_headways(std::span<const double>(values, n),
                                                   label ? label : "", n)};
  });
}

hw_status hw_sample_fixture(const char* scenario, int family, size_t n, uint64_t seed,
                            hw_sample** out) {
  return guard([&] {
    require(scenario && out, "null argument");
    *out = new hw_sample{pipeline::generate_fixture(pipeline::scenario_from_name(scenario),
                                                    to_family(family), n, seed)};
  });
}

size_t hw_sample_size(const hw_sample* sample) { return sample ? sample->value.values.size() : 0; }

size_t hw_sample_raw_size(const hw_sample* sample) { return sample ? sample->value.n_raw : 0; }

const double* hw_sample_values(const hw_sample* sample) {
  return sample ? sample->value.values.data() : nullptr;
}

const char* hw_sample_label(const hw_sample* sample) {
  return sample ? sample->value.source_label.c_str() : nullptr;
}

hw_status hw_sample_write_csv(const hw_sample* sample, const char* path) {
  return guard([&] {
    require(sample && path, "null argument");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(std::string("cannot write '") + path + "'");
    pipeline::write_headway_csv(sample->value.values, out);
    if (!out) throw IoError(std::string("write failed for '") + path + "'");
  });
}

void hw_sample_free(hw_sample* sample) { delete sample; }

hw_status hw_model_create(int family, const double* params, size_t n_params, double alpha_min,
                          hw_model** out) {
  return guard([&] {
    require(out && (params || n_params == 0), "null argument");
    *out = new hw_model{DistributionModel::from_vector(
        to_family(family), std::span<const double>(params, n_params), alpha_min)};
  });
}

hw_status hw_model_from_fit_json(const char* json, hw_model** out) {
  return guard([&] {
    require(json && out, "null argument");
    *out = new hw_model{pipeline::model_from_fit_json(json)};
  });
}

int hw_model_family(const hw_model* model) {
  return model ? static_cast<int>(model->value.family()) : -1;
}

size_t hw_model_params(const hw_model* model, double* out, size_t capacity) {
  if (!model) return 0;
  const auto v = model->value.to_vector();
  for (size_t i = 0; i < v.size() && i < capacity && out; ++i) out[i] = v[i];
  return v.size();
}

hw_status hw_model_pdf(const hw_model* model, double t, double* out) {
  return guard([&] {
    require(model && out, "null argument");
    *out = pdf(model->value, t);
  });
}

hw_status hw_model_cdf(const hw_model* model, double t, double* out) {
  return guard([&] {
    require(model && out, "null argument");
    *out = cdf(model->value, t);
  });
}

hw_status hw_model_quantile(const hw_model* model, double u, double* out) {
  return guard([&] {
    require(model && out, "null argument");
    *out = quantile(model->value, u);
  });
}

hw_status hw_model_sample(const hw_model* model, size_t n, uint64_t seed, double* out) {
  return guard([&] {
    require(model && (out || n == 0), "null argument");
    const auto draws = sample(model->value, n, seed);
    std::copy(draws.begin(), draws.end(), out);
  });
}

void hw_model_free(hw_model* model) { delete model; }

hw_status hw_fit_run(const hw_sample* sample, int family, const hw_mcmc_config* config,
                     hw_fit** out) {
  return guard([&] {
    require(sample && out, "null argument");
    *out = new hw_fit{mcmc::fit(to_family(family), sample->value.values, to_config(config))};
  });
}

hw_status hw_fit_to_json(const hw_fit* fit, char** json) {
  return guard([&] {
    require(fit && json, "null argument");
    *json = duplicate(pipeline::fit_to_json(fit->value));
  });
}

hw_status hw_fit_write_trace_csv(const hw_fit* fit, const char* path) {
  return guard([&] {
    require(fit && path, "null argument");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(std::string("cannot write '") + path + "'");
    mcmc::write_trace_csv(fit->value.trace, out);
    if (!out) throw IoError(std::string("write failed for '") + path + "'");
  });
}

hw_status hw_fit_model(const hw_fit* fit, hw_model** out) {
  return guard([&] {
    require(fit && out, "null argument");
    *out = new hw_model{fit->value.model};
  });
}

size_t hw_fit_warning_count(const hw_fit* fit) { return fit ? fit->value.warnings.size() : 0; }

const char* hw_fit_warning(const hw_fit* fit, size_t index) {
  if (!fit || index >= fit->value.warnings.size()) return nullptr;
  return fit->value.warnings[index].c_str();
}

void hw_fit_free(hw_fit* fit) { delete fit; }

hw_status hw_gof_evaluate(const hw_sample* sample, const hw_model* model, size_t n_params,
                          const hw_gof_options* options, char** json, char** csv) {
  return guard([&] {
    require(sample && model, "null argument");
    const auto hist = pipeline::bin_sample(sample->value.values);
    const gof::GofRow rows[] = {gof::evaluate_all(sample->value.source_label, sample->value.values,
                                                  hist, model->value, n_params,
                                                  to_options(options))};
    char* j = json ? duplicate(gof::to_json(rows)) : nullptr;
    if (csv) {
      try {
        *csv = duplicate(gof::to_csv(rows));
      } catch (...) {
        std::free(j);
        throw;
      }
    }
    if (json) *json = j;
  });
}

hw_status hw_compare_run(const hw_sample* sample, const int* families, size_t n_families,
                         const hw_mcmc_config* config, const hw_gof_options* options,
                         hw_report** out) {
  return guard([&] {
    require(sample && out && (families || n_families == 0), "null argument");
    std::vector<Family> list;
    for (size_t i = 0; i < n_families; ++i) list.push_back(to_family(families[i]));
    pipeline::CompareConfig cfg;
    cfg.mcmc = to_config(config);
    cfg.gof = to_options(options);
    cfg.fit_threads = config ? config->fit_threads : 0;
    auto report = std::make_unique<hw_report>(
        hw_report{pipeline::compare(sample->value, list, cfg), {}});
    for (const auto& o : report->value.outcomes) {
      if (!o.error.empty()) {
        report->messages.push_back(std::string(family_name(o.family)) + ": " + o.error);
      }
      if (o.fit) {
        for (const auto& w : o.fit->warnings) report->messages.push_back(w);
      }
    }
    *out = report.release();
  });
}

hw_status hw_report_to_json(const hw_report* report, char** json) {
  return guard([&] {
    require(report && json, "null argument");
    *json = duplicate(pipeline::compare_to_json(report->value));
  });
}

hw_status hw_report_to_csv(const hw_report* report, char** csv) {
  return guard([&] {
    require(report && csv, "null argument");
    *csv = duplicate(pipeline::compare_to_csv(report->value));
  });
}

size_t hw_report_message_count(const hw_report* report) {
  return report ? report->messages.size() : 0;
}

const char* hw_report_message(const hw_report* report, size_t index) {
  if (!report || index >= report->messages.size()) return nullptr;
  return report->messages[index].c_str();
}

void hw_report_free(hw_report* report) { delete report; }

hw_status hw_ks_matrix(const hw_sample* const* samples, size_t count, double* out) {
  return guard([&] {
    require(samples && out, "null argument");
    std::vector<HeadwaySample> list;
    for (size_t i = 0; i < count; ++i) {
      require(samples[i] != nullptr, "null sample");
      list.push_back(samples[i]->value);
    }
    const auto m = pipeline::ks_matrix(list);
    for (size_t i = 0; i < count; ++i) {
      for (size_t j = 0; j < count; ++j) out[i * count + j] = m[i][j];
    }
  });
}

hw_status hw_plot_write(const hw_sample* sample, const hw_model* const* models, size_t n_models,
                        const char* path, hw_plot_format format) {
  return guard([&] {
    require(sample && path && (models || n_models == 0), "null argument");
    std::vector<DistributionModel> fitted;
    for (size_t i = 0; i < n_models; ++i) {
      require(models[i] != nullptr, "null model");
      fitted.push_back(models[i]->value);
    }
    const auto hist = pipeline::bin_sample(sample->value.values);
    pipeline::emit_plot_data(hist, fitted, path,
                             format == HW_PLOT_SVG ? pipeline::PlotFormat::kSvg
                                                   : pipeline::PlotFormat::kCsv);
  });
}

}  // extern "C"
