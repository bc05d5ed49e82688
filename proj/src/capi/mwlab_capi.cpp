// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab.h"

#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "mwlab/config.hpp"
#include "mwlab/error.hpp"
#include "mwlab/kernels.hpp"
#include "mwlab/parallel.hpp"
#include "mwlab/report.hpp"
#include "mwlab/stats.hpp"
#include "mwlab/studies.hpp"
#include "mwlab/transport.hpp"

struct mwlab_config {
  mwlab::ExperimentConfig config;
  std::string text;
};

struct mwlab_report {
  mwlab::StudyReport report;
  std::string csv;
  std::string path;
};

namespace {

thread_local std::string g_last_error;

mwlab_status fail(mwlab_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn>
mwlab_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return MWLAB_OK;
  } catch (const mwlab::Error& e) {
    return fail(static_cast<mwlab_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MWLAB_ERR_CAPACITY, "out of memory");
  } catch (const std::exception& e) {
    return fail(MWLAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MWLAB_ERR_INTERNAL, "unknown failure");
  }
}

#define MWLAB_REQUIRE(cond, what) \
  if (!(cond)) return fail(MWLAB_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* mwlab_version(void) { return mwlab::kCodeVersion; }

const char* mwlab_status_name(mwlab_status status) {
  switch (status) {
    case MWLAB_OK: return "ok";
    case MWLAB_ERR_CONFIG: return "config error";
    case MWLAB_ERR_CAPACITY: return "capacity error";
    case MWLAB_ERR_BLOW_UP: return "blow-up";
    case MWLAB_ERR_DOMAIN: return "domain error";
    case MWLAB_ERR_UNSUPPORTED: return "unsupported operation";
    case MWLAB_ERR_DATA: return "data error";
    case MWLAB_ERR_FIT: return "fit error";
    case MWLAB_ERR_IO: return "i/o error";
    case MWLAB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MWLAB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* mwlab_last_error(void) { return g_last_error.c_str(); }

size_t mwlab_kernel_count(void) { return mwlab::kernel_catalog().size(); }

mwlab_status mwlab_kernel_info(size_t index, const char** name, const char** notes) {
  const auto& catalog = mwlab::kernel_catalog();
  MWLAB_REQUIRE(index < catalog.size(), "kernel index out of range");
  if (name != nullptr) *name = catalog[index].name.c_str();
  if (notes != nullptr) *notes = catalog[index].notes.c_str();
  return MWLAB_OK;
}

mwlab_status mwlab_config_load(const char* path, mwlab_config** out) {
  MWLAB_REQUIRE(path != nullptr && out != nullptr, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new mwlab_config{mwlab::load_config(path), {}}; });
}

mwlab_status mwlab_config_parse(const char* toml_text, mwlab_config** out) {
  MWLAB_REQUIRE(toml_text != nullptr && out != nullptr, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new mwlab_config{mwlab::parse_config(toml_text), {}}; });
}

mwlab_status mwlab_config_set_seed(mwlab_config* config, uint64_t seed) {
  MWLAB_REQUIRE(config != nullptr, "null config");
  config->config.seed = seed;
  return MWLAB_OK;
}

mwlab_status mwlab_config_set_output(mwlab_config* config, const char* dir) {
  MWLAB_REQUIRE(config != nullptr && dir != nullptr, "null argument");
  config->config.output = dir;
  return MWLAB_OK;
}

mwlab_status mwlab_config_set_threads(mwlab_config* config, size_t threads) {
  MWLAB_REQUIRE(config != nullptr, "null config");
  config->config.threads = threads;
  return MWLAB_OK;
}

mwlab_status mwlab_config_describe(mwlab_config* config, const char** toml_text) {
  MWLAB_REQUIRE(config != nullptr && toml_text != nullptr, "null argument");
  return guarded([&] {
    config->text = config->config.to_toml();
    *toml_text = config->text.c_str();
  });
}

mwlab_status mwlab_config_output(const mwlab_config* config, const char** dir) {
  MWLAB_REQUIRE(config != nullptr && dir != nullptr, "null argument");
  *dir = config->config.output.c_str();
  return MWLAB_OK;
}

mwlab_status mwlab_config_study(const mwlab_config* config, const char** study) {
  MWLAB_REQUIRE(config != nullptr && study != nullptr, "null argument");
  *study = mwlab::study_name(config->config.study).data();
  return MWLAB_OK;
}

void mwlab_config_free(mwlab_config* config) { delete config; }

mwlab_status mwlab_run(const mwlab_config* config, mwlab_report** out) {
  MWLAB_REQUIRE(config != nullptr && out != nullptr, "null argument");
  *out = nullptr;
  return guarded([&] {
    if (config->config.threads > 0) mwlab::set_worker_count(config->config.threads);
    auto* report = new mwlab_report{mwlab::run_study(config->config), {}, {}};
    *out = report;
  });
}

size_t mwlab_report_row_count(const mwlab_report* report) {
  return report == nullptr ? 0 : report->report.rows.size();
}

mwlab_status mwlab_report_row(const mwlab_report* report, size_t index, mwlab_row* out) {
  MWLAB_REQUIRE(report != nullptr && out != nullptr, "null argument");
  MWLAB_REQUIRE(index < report->report.rows.size(), "row index out of range");
  const mwlab::StudyRow& r = report->report.rows[index];
  *out = mwlab_row{r.param_name.c_str(), r.param_value, r.gap,   r.stderr_,
                   r.seed_count,         r.t_final,     r.m,     r.N,
                   r.p,                  r.q,           r.extra.c_str()};
  return MWLAB_OK;
}

mwlab_status mwlab_report_fit(const mwlab_report* report, double* slope, double* intercept,
                              double* residual) {
  MWLAB_REQUIRE(report != nullptr, "null report");
  const auto& fit = report->report.fit;
  if (!fit)
    return fail(MWLAB_ERR_FIT, report->report.fit_error.empty() ? "no fit" : report->report.fit_error);
  if (slope != nullptr) *slope = fit->slope;
  if (intercept != nullptr) *intercept = fit->intercept;
  if (residual != nullptr) *residual = fit->residual;
  return MWLAB_OK;
}

mwlab_status mwlab_report_csv(mwlab_report* report, const char** csv_text) {
  MWLAB_REQUIRE(report != nullptr && csv_text != nullptr, "null argument");
  return guarded([&] {
    report->csv = mwlab::render_csv(report->report);
    *csv_text = report->csv.c_str();
  });
}

mwlab_status mwlab_report_write(mwlab_report* report, const char* dir, const char** csv_path) {
  MWLAB_REQUIRE(report != nullptr && dir != nullptr, "null argument");
  return guarded([&] {
    report->path = mwlab::write_report(report->report, dir).csv;
    if (csv_path != nullptr) *csv_path = report->path.c_str();
  });
}

void mwlab_report_free(mwlab_report* report) { delete report; }

mwlab_status mwlab_fit_loglog(const double* params, const double* gaps, size_t n, double* slope,
                              double* intercept, double* residual) {
  MWLAB_REQUIRE(n == 0 || (params != nullptr && gaps != nullptr), "null argument");
  return guarded([&] {
    std::vector<std::pair<double, double>> rows;
    for (size_t i = 0; i < n; ++i) rows.emplace_back(params[i], gaps[i]);
    const mwlab::LogLogFit fit = mwlab::fit_loglog_slope(rows);
    if (slope != nullptr) *slope = fit.slope;
    if (intercept != nullptr) *intercept = fit.intercept;
    if (residual != nullptr) *residual = fit.residual;
  });
}

mwlab_status mwlab_m_schedule(double n_agents, double alpha, double q, double lip, double horizon,
                              uint64_t* m) {
  MWLAB_REQUIRE(m != nullptr, "null argument");
  return guarded([&] { *m = mwlab::m_schedule(n_agents, alpha, q, lip, horizon); });
}

mwlab_status mwlab_wasserstein_1d(const double* a, const double* b, size_t n, double p,
                                  double* distance) {
  MWLAB_REQUIRE(distance != nullptr && (n == 0 || (a != nullptr && b != nullptr)), "null argument");
  return guarded([&] {
    *distance = mwlab::wasserstein_1d(std::vector<double>(a, a + n), std::vector<double>(b, b + n), p);
  });
}

}  // extern "C"
