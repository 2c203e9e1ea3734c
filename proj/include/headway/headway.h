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

/* C interface to the headway library. Every object is an opaque handle owned
 * by the caller and released with its matching *_free function. Functions
 * return an hw_status; on failure hw_last_error() describes the problem for
 * the calling thread until its next library call. Strings returned through
 * char** outputs are released with hw_string_free. */

#ifndef HEADWAY_HEADWAY_H_
#define HEADWAY_HEADWAY_H_

#include <stddef.h>
#include <stdint.h>

#if defined(HEADWAY_BUILDING_LIBRARY)
#define HW_API __attribute__((visibility("default")))
#else
#define HW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hw_status {
  HW_OK = 0,
  HW_ERR_INVALID_ARGUMENT = 1,
  HW_ERR_DATA = 2,
  HW_ERR_NUMERICAL = 3,
  HW_ERR_IO = 4,
  HW_ERR_INTERNAL = 5
} hw_status;

/* Family identifiers, in report order. */
enum {
  HW_FAMILY_PROPOSED = 0,
  HW_FAMILY_SHIFTED_LOGNORMAL = 1,
  HW_FAMILY_WEIBULL = 2,
  HW_FAMILY_LOGLOGISTIC = 3,
  HW_FAMILY_GAMMA = 4,
  HW_FAMILY_BURR = 5,
  HW_FAMILY_SHIFTED_EXPONENTIAL = 6,
  HW_FAMILY_COUNT = 7
};

typedef enum hw_csv_format { HW_CSV_HEADWAY_LIST = 0, HW_CSV_EVENT_RECORDS = 1 } hw_csv_format;

typedef enum hw_plot_format { HW_PLOT_CSV = 0, HW_PLOT_SVG = 1 } hw_plot_format;

typedef struct hw_sample hw_sample;
typedef struct hw_model hw_model;
typedef struct hw_fit hw_fit;
typedef struct hw_report hw_report;

typedef struct hw_mcmc_config {
  size_t iterations;
  size_t warmup;
  size_t chains;
  uint64_t seed;
  double alpha_min;
  int adapt;
  /* Concurrent chains per fit; 0 = one thread per chain. */
  size_t max_threads;
  /* Concurrent fits in hw_compare_run; 0 = HEADWAY_FIT_THREADS or auto. */
  size_t fit_threads;
} hw_mcmc_config;

typedef struct hw_gof_options {
  double wasserstein_order;
  int skip_chi2;
} hw_gof_options;

HW_API const char* hw_version(void);
HW_API const char* hw_last_error(void);
HW_API void hw_string_free(char* s);

/* 10000 iterations, 5000 warmup, 2 chains, seed 0, alpha_min 0.5, adapt on. */
HW_API void hw_mcmc_config_default(hw_mcmc_config* config);
/* Wasserstein order 1, chi-square enabled. */
HW_API void hw_gof_options_default(hw_gof_options* options);

/* ---- families ---------------------------------------------------------- */

HW_API hw_status hw_family_from_name(const char* name, int* family);
HW_API const char* hw_family_name(int family);
HW_API size_t hw_family_param_count(int family);
HW_API const char* hw_family_param_name(int family, size_t index);

/* ---- samples ------------------------------------------------------------ */

HW_API hw_status hw_sample_read_csv(const char* path, hw_csv_format format, hw_sample** out);
/* Applies the [0.5, 25] s filter. */
HW_API hw_status hw_sample_from_values(const double* values, size_t n, const char* label,
                                       hw_sample** out);
/* scenario: highD, exiD, NGSIM, Waymo or Lyft (optionally with "-like"). */
HW_API hw_status hw_sample_fixture(const char* scenario, int family, size_t n, uint64_t seed,
                                   hw_sample** out);
HW_API size_t hw_sample_size(const hw_sample* sample);
HW_API size_t hw_sample_raw_size(const hw_sample* sample);
HW_API const double* hw_sample_values(const hw_sample* sample);
HW_API const char* hw_sample_label(const hw_sample* sample);
HW_API hw_status hw_sample_write_csv(const hw_sample* sample, const char* path);
HW_API void hw_sample_free(hw_sample* sample);

/* ---- models ------------------------------------------------------------- */

/* params in canonical order (see hw_family_param_name). alpha_min is used by
 * the proposed family only. */
HW_API hw_status hw_model_create(int family, const double* params, size_t n_params,
                                 double alpha_min, hw_model** out);
/* Reads a model from a fit JSON document written by hw_fit_to_json. */
HW_API hw_status hw_model_from_fit_json(const char* json, hw_model** out);
HW_API int hw_model_family(const hw_model* model);
/* Copies up to capacity parameters; returns the parameter count. */
HW_API size_t hw_model_params(const hw_model* model, double* out, size_t capacity);
HW_API hw_status hw_model_pdf(const hw_model* model, double t, double* out);
HW_API hw_status hw_model_cdf(const hw_model* model, double t, double* out);
HW_API hw_status hw_model_quantile(const hw_model* model, double u, double* out);
/* Writes n draws into out. */
HW_API hw_status hw_model_sample(const hw_model* model, size_t n, uint64_t seed, double* out);
HW_API void hw_model_free(hw_model* model);

/* ---- estimation --------------------------------------------------------- */

HW_API hw_status hw_fit_run(const hw_sample* sample, int family, const hw_mcmc_config* config,
                            hw_fit** out);
HW_API hw_status hw_fit_to_json(const hw_fit* fit, char** json);
HW_API hw_status hw_fit_write_trace_csv(const hw_fit* fit, const char* path);
HW_API hw_status hw_fit_model(const hw_fit* fit, hw_model** out);
HW_API size_t hw_fit_warning_count(const hw_fit* fit);
HW_API const char* hw_fit_warning(const hw_fit* fit, size_t index);
HW_API void hw_fit_free(hw_fit* fit);

/* ---- evaluation --------------------------------------------------------- */

/* Four-metric report for one model; either output may be NULL. */
HW_API hw_status hw_gof_evaluate(const hw_sample* sample, const hw_model* model, size_t n_params,
                                 const hw_gof_options* options, char** json, char** csv);

HW_API hw_status hw_compare_run(const hw_sample* sample, const int* families, size_t n_families,
                                const hw_mcmc_config* config, const hw_gof_options* options,
                                hw_report** out);
HW_API hw_status hw_report_to_json(const hw_report* report, char** json);
HW_API hw_status hw_report_to_csv(const hw_report* report, char** csv);
/* Fit warnings and per-family errors, flattened. */
HW_API size_t hw_report_message_count(const hw_report* report);
HW_API const char* hw_report_message(const hw_report* report, size_t index);
HW_API void hw_report_free(hw_report* report);

/* out receives count * count doubles, row-major. */
HW_API hw_status hw_ks_matrix(const hw_sample* const* samples, size_t count, double* out);

HW_API hw_status hw_plot_write(const hw_sample* sample, const hw_model* const* models,
                               size_t n_models, const char* path, hw_plot_format format);

#ifdef __cplusplus
}
#endif

#endif /* HEADWAY_HEADWAY_H_ */
