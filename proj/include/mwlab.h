// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MWLAB_H_
#define MWLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MWLAB_BUILDING)
#    define MWLAB_API __declspec(dllexport)
#  else
#    define MWLAB_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define MWLAB_API __attribute__((visibility("default")))
#else
#  define MWLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mwlab_config mwlab_config;
typedef struct mwlab_report mwlab_report;

// Values 2, 3 and 4 double as the CLI exit codes.
typedef enum {
  MWLAB_OK = 0,
  MWLAB_ERR_CONFIG = 2,
  MWLAB_ERR_CAPACITY = 3,
  MWLAB_ERR_BLOW_UP = 4,
  MWLAB_ERR_DOMAIN = 5,
  MWLAB_ERR_UNSUPPORTED = 6,
  MWLAB_ERR_DATA = 7,
  MWLAB_ERR_FIT = 8,
  MWLAB_ERR_IO = 9,
  MWLAB_ERR_INVALID_ARGUMENT = 10,
  MWLAB_ERR_INTERNAL = 11
} mwlab_status;

typedef struct {
  const char* param_name;
  double param_value;
  double gap;
  double stderr_;
  uint64_t seed_count;
  double t_final;
  uint64_t m;
  uint64_t N;
  double p;
  double q;
  const char* extra;
} mwlab_row;

MWLAB_API const char* mwlab_version(void);
MWLAB_API const char* mwlab_status_name(mwlab_status status);
// Message of the last failed call on this thread; empty if none.
MWLAB_API const char* mwlab_last_error(void);

MWLAB_API size_t mwlab_kernel_count(void);
MWLAB_API mwlab_status mwlab_kernel_info(size_t index, const char** name, const char** notes);

MWLAB_API mwlab_status mwlab_config_load(const char* path, mwlab_config** out);
MWLAB_API mwlab_status mwlab_config_parse(const char* toml_text, mwlab_config** out);
MWLAB_API mwlab_status mwlab_config_set_seed(mwlab_config* config, uint64_t seed);
MWLAB_API mwlab_status mwlab_config_set_output(mwlab_config* config, const char* dir);
// 0 keeps the current process-wide worker count.
MWLAB_API mwlab_status mwlab_config_set_threads(mwlab_config* config, size_t threads);
// Strings stay valid until the next call on the same handle or its release.
MWLAB_API mwlab_status mwlab_config_describe(mwlab_config* config, const char** toml_text);
MWLAB_API mwlab_status mwlab_config_output(const mwlab_config* config, const char** dir);
MWLAB_API mwlab_status mwlab_config_study(const mwlab_config* config, const char** study);
MWLAB_API void mwlab_config_free(mwlab_config* config);

MWLAB_API mwlab_status mwlab_run(const mwlab_config* config, mwlab_report** out);

MWLAB_API size_t mwlab_report_row_count(const mwlab_report* report);
// Row strings are owned by the report.
MWLAB_API mwlab_status mwlab_report_row(const mwlab_report* report, size_t index, mwlab_row* out);
// MWLAB_ERR_FIT when the study has no fitted slope.
MWLAB_API mwlab_status mwlab_report_fit(const mwlab_report* report, double* slope,
                                        double* intercept, double* residual);
MWLAB_API mwlab_status mwlab_report_csv(mwlab_report* report, const char** csv_text);
// Writes the CSV, the metadata sidecar and any traces into dir; csv_path may be NULL.
MWLAB_API mwlab_status mwlab_report_write(mwlab_report* report, const char* dir,
                                          const char** csv_path);
MWLAB_API void mwlab_report_free(mwlab_report* report);

MWLAB_API mwlab_status mwlab_fit_loglog(const double* params, const double* gaps, size_t n,
                                        double* slope, double* intercept, double* residual);
MWLAB_API mwlab_status mwlab_m_schedule(double n_agents, double alpha, double q, double lip,
                                        double horizon, uint64_t* m);
MWLAB_API mwlab_status mwlab_wasserstein_1d(const double* a, const double* b, size_t n, double p,
                                            double* distance);

#ifdef __cplusplus
}
#endif

#endif  // MWLAB_H_
