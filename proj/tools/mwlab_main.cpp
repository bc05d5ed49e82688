// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the mwlab C API.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "mwlab.h"

namespace {

// Exit codes: 0 ok, 2 config, 3 capacity, 4 blow-up, 1 anything else.
int exit_code(mwlab_status status) {
  switch (status) {
    case MWLAB_OK:
      return 0;
    case MWLAB_ERR_CONFIG:
    case MWLAB_ERR_IO:
      return 2;
    case MWLAB_ERR_CAPACITY:
      return 3;
    case MWLAB_ERR_BLOW_UP:
      return 4;
    default:
      return 1;
  }
}

int report_failure(const char* what, mwlab_status status) {
  std::fprintf(stderr, "mwlab: %s failed (%s): %s\n", what, mwlab_status_name(status),
               mwlab_last_error());
  return exit_code(status);
}

int load(const std::string& path, mwlab_config** config) {
  const mwlab_status st = mwlab_config_load(path.c_str(), config);
  if (st != MWLAB_OK) {
    std::fprintf(stderr, "mwlab: config '%s' rejected (%s): %s\n", path.c_str(),
                 mwlab_status_name(st), mwlab_last_error());
    return exit_code(st);
  }
  return 0;
}

int cmd_list_kernels() {
  const size_t n = mwlab_kernel_count();
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    const char* notes = nullptr;
    mwlab_kernel_info(i, &name, &notes);
    std::printf("%-22s %s\n", name, notes);
  }
  return 0;
}

int cmd_validate(const std::string& path) {
  mwlab_config* config = nullptr;
  if (int rc = load(path, &config); rc != 0) return rc;
  const char* study = nullptr;
  const char* text = nullptr;
  mwlab_config_study(config, &study);
  const mwlab_status st = mwlab_config_describe(config, &text);
  if (st != MWLAB_OK) {
    mwlab_config_free(config);
    return report_failure("describe", st);
  }
  std::printf("config ok: study %s\n%s\n", study, text);
  mwlab_config_free(config);
  return 0;
}

int cmd_run(const std::string& path, const std::string& out, const std::uint64_t* seed,
            std::size_t threads) {
  mwlab_config* config = nullptr;
  if (int rc = load(path, &config); rc != 0) return rc;
  if (seed != nullptr) mwlab_config_set_seed(config, *seed);
  if (!out.empty()) mwlab_config_set_output(config, out.c_str());
  if (threads > 0) mwlab_config_set_threads(config, threads);

  mwlab_report* report = nullptr;
  mwlab_status st = mwlab_run(config, &report);
  if (st != MWLAB_OK) {
    mwlab_config_free(config);
    return report_failure("run", st);
  }
  const char* dir = nullptr;
  mwlab_config_output(config, &dir);
  const char* csv_path = nullptr;
  st = mwlab_report_write(report, dir, &csv_path);
  if (st != MWLAB_OK) {
    mwlab_report_free(report);
    mwlab_config_free(config);
    return report_failure("write", st);
  }

  const size_t rows = mwlab_report_row_count(report);
  for (size_t i = 0; i < rows; ++i) {
    mwlab_row r;
    mwlab_report_row(report, i, &r);
    std::printf("%s=%-10g gap=%-14.6g stderr=%-12.4g m=%llu N=%llu %s\n", r.param_name,
                r.param_value, r.gap, r.stderr_, static_cast<unsigned long long>(r.m),
                static_cast<unsigned long long>(r.N), r.extra);
  }
  double slope = 0.0, intercept = 0.0, residual = 0.0;
  if (mwlab_report_fit(report, &slope, &intercept, &residual) == MWLAB_OK) {
    std::printf("fit: slope=%.6f intercept=%.6f residual=%.3g\n", slope, intercept, residual);
  } else {
    std::printf("fit: %s\n", mwlab_last_error());
  }
  std::printf("wrote %s\n", csv_path);
  mwlab_report_free(report);
  mwlab_config_free(config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mwlab: multiple-wise interaction laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mwlab_version());

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  std::size_t threads = 0;

  CLI::App* run = app.add_subcommand("run", "run the study described by a config file");
  run->add_option("--config", config_path, "TOML experiment config")->required();
  run->add_option("--out", out_dir, "output directory (overrides the config)");
  CLI::Option* seed_opt = run->add_option("--seed", seed, "master seed (overrides the config)");
  run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  app.add_subcommand("list-kernels", "list the kernel catalog");

  CLI::App* validate = app.add_subcommand("validate", "check a config without running it");
  validate->add_option("--config", config_path, "TOML experiment config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (app.got_subcommand("list-kernels")) return cmd_list_kernels();
  if (app.got_subcommand("validate")) return cmd_validate(config_path);
  return cmd_run(config_path, out_dir, seed_opt->count() > 0 ? &seed : nullptr, threads);
}
