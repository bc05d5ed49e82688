// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "mwlab.h"

namespace {

constexpr const char* kMultiwise = R"(
study = "multiwise_limit"
m = [2, 4, 8]
T = 0.5
dt = 0.01

[kernel]
name = "quadratic_statistic"
radius = 3.0

[initial.labels]
law = "discrete"
dim = 1
points = [0.0, 1.0]
weights = [0.5, 0.5]

[initial.opinions]
law = "monokinetic"
profile = "affine"
intercept = 0.0
slope = [2.0]
)";

TEST(CApi, ParseRunAndReadRows) {
  mwlab_config* cfg = nullptr;
  ASSERT_EQ(mwlab_config_parse(kMultiwise, &cfg), MWLAB_OK);
  const char* study = nullptr;
  ASSERT_EQ(mwlab_config_study(cfg, &study), MWLAB_OK);
  EXPECT_STREQ(study, "multiwise_limit");
  ASSERT_EQ(mwlab_config_set_seed(cfg, 9), MWLAB_OK);
  const char* toml = nullptr;
  ASSERT_EQ(mwlab_config_describe(cfg, &toml), MWLAB_OK);
  EXPECT_NE(std::string(toml).find("seed = 9"), std::string::npos);

  mwlab_report* rep = nullptr;
  ASSERT_EQ(mwlab_run(cfg, &rep), MWLAB_OK) << mwlab_last_error();
  ASSERT_EQ(mwlab_report_row_count(rep), 3u);
  mwlab_row row;
  ASSERT_EQ(mwlab_report_row(rep, 0, &row), MWLAB_OK);
  EXPECT_STREQ(row.param_name, "m");
  EXPECT_EQ(row.param_value, 2.0);
  EXPECT_EQ(row.m, 2u);
  EXPECT_GT(row.gap, 0.0);
  EXPECT_EQ(mwlab_report_row(rep, 3, &row), MWLAB_ERR_INVALID_ARGUMENT);

  double slope = 0.0, intercept = 0.0, residual = 0.0;
  ASSERT_EQ(mwlab_report_fit(rep, &slope, &intercept, &residual), MWLAB_OK);
  EXPECT_LT(slope, 0.0);
  const char* csv = nullptr;
  ASSERT_EQ(mwlab_report_csv(rep, &csv), MWLAB_OK);
  EXPECT_EQ(std::strncmp(csv, "study,param_name,", 17), 0);
  mwlab_report_free(rep);
  mwlab_config_free(cfg);
}

TEST(CApi, SingleOrderHasNoFit) {
  std::string text = kMultiwise;
  text.replace(text.find("[2, 4, 8]"), 9, "[2]");
  mwlab_config* cfg = nullptr;
  ASSERT_EQ(mwlab_config_parse(text.c_str(), &cfg), MWLAB_OK);
  mwlab_report* rep = nullptr;
  ASSERT_EQ(mwlab_run(cfg, &rep), MWLAB_OK);
  double s, i, r;
  EXPECT_EQ(mwlab_report_fit(rep, &s, &i, &r), MWLAB_ERR_FIT);
  mwlab_report_free(rep);
  mwlab_config_free(cfg);
}

TEST(CApi, ConfigErrorsCarryAMessage) {
  mwlab_config* cfg = nullptr;
  std::string text = kMultiwise;
  text.replace(text.find("multiwise_limit"), 15, "joint_limit");
  text.insert(0, "alpha = 0.7\nN = [64]\n");
  EXPECT_EQ(mwlab_config_parse(text.c_str(), &cfg), MWLAB_ERR_CONFIG);
  EXPECT_EQ(cfg, nullptr);
  EXPECT_NE(std::string(mwlab_last_error()).find("alpha"), std::string::npos);
  EXPECT_EQ(mwlab_config_load("/nonexistent/x.toml", &cfg), MWLAB_ERR_IO);
}

TEST(CApi, NullArguments) {
  EXPECT_EQ(mwlab_config_parse(nullptr, nullptr), MWLAB_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(mwlab_run(nullptr, nullptr), MWLAB_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(mwlab_report_row_count(nullptr), 0u);
  EXPECT_EQ(mwlab_fit_loglog(nullptr, nullptr, 3, nullptr, nullptr, nullptr), MWLAB_ERR_INVALID_ARGUMENT);
  mwlab_config_free(nullptr);
  mwlab_report_free(nullptr);
}

TEST(CApi, StatusNamesAndVersion) {
  EXPECT_STREQ(mwlab_status_name(MWLAB_OK), "ok");
  EXPECT_STRNE(mwlab_status_name(MWLAB_ERR_CAPACITY), "ok");
  EXPECT_GT(std::strlen(mwlab_version()), 0u);
  EXPECT_EQ(static_cast<int>(MWLAB_ERR_CONFIG), 2);
  EXPECT_EQ(static_cast<int>(MWLAB_ERR_CAPACITY), 3);
  EXPECT_EQ(static_cast<int>(MWLAB_ERR_BLOW_UP), 4);
}

TEST(CApi, KernelCatalog) {
  ASSERT_GE(mwlab_kernel_count(), 3u);
  bool found = false;
  for (size_t i = 0; i < mwlab_kernel_count(); ++i) {
    const char *name = nullptr, *notes = nullptr;
    ASSERT_EQ(mwlab_kernel_info(i, &name, &notes), MWLAB_OK);
    found = found || std::string(name) == "linear_consensus";
  }
  EXPECT_TRUE(found);
  const char *name = nullptr, *notes = nullptr;
  EXPECT_EQ(mwlab_kernel_info(mwlab_kernel_count(), &name, &notes), MWLAB_ERR_INVALID_ARGUMENT);
}

TEST(CApi, Helpers) {
  uint64_t m = 0;
  ASSERT_EQ(mwlab_m_schedule(std::exp(5.0), 0.4, 1.0, 1.0, 1.0, &m), MWLAB_OK);
  EXPECT_EQ(m, 2u);
  EXPECT_EQ(mwlab_m_schedule(100.0, 0.6, 1.0, 1.0, 1.0, &m), MWLAB_ERR_CONFIG);

  const double a[] = {0.0, 1.0, 2.0}, b[] = {1.0, 2.0, 3.0};
  double d = 0.0;
  ASSERT_EQ(mwlab_wasserstein_1d(a, b, 3, 1.0, &d), MWLAB_OK);
  EXPECT_DOUBLE_EQ(d, 1.0);
  EXPECT_EQ(mwlab_wasserstein_1d(a, b, 3, 0.5, &d), MWLAB_ERR_DOMAIN);

  const double x[] = {1.0, 2.0, 4.0, 8.0}, y[] = {1.0, 0.5, 0.25, 0.125};
  double slope = 0.0, intercept = 0.0, residual = 0.0;
  ASSERT_EQ(mwlab_fit_loglog(x, y, 4, &slope, &intercept, &residual), MWLAB_OK);
  EXPECT_NEAR(slope, -1.0, 1e-12);
  EXPECT_EQ(mwlab_fit_loglog(x, y, 2, &slope, &intercept, &residual), MWLAB_ERR_FIT);
}

}  // namespace
