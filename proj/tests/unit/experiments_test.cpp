// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mwlab/config.hpp"
#include "mwlab/error.hpp"
#include "mwlab/parallel.hpp"
#include "mwlab/report.hpp"
#include "mwlab/stats.hpp"
#include "mwlab/studies.hpp"

namespace mwlab {
namespace {

constexpr const char* kTwoNode = R"(
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

constexpr const char* kBox = R"(
[kernel]
name = "quadratic_statistic"
radius = 1.0

[initial.labels]
law = "uniform_box"
lower = [0.0]
upper = [1.0]

[initial.opinions]
law = "monokinetic"
profile = "affine"
intercept = 0.1
slope = [0.8]
)";

ExperimentConfig config(const std::string& head, const char* tail) {
  return parse_config(head + tail);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(FitLogLog, ExactPowerLaw) {
  std::vector<std::pair<double, double>> rows;
  for (double x : {1.0, 2.0, 4.0, 8.0, 16.0}) rows.emplace_back(x, 3.0 / std::sqrt(x));
  const auto fit = fit_loglog_slope(rows);
  EXPECT_NEAR(fit.slope, -0.5, 1e-12);
  EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-12);
  EXPECT_NEAR(fit.residual, 0.0, 1e-12);
  EXPECT_EQ(fit.used_rows, 5u);
  EXPECT_TRUE(fit.warnings.empty());
}

TEST(FitLogLog, TooFewRows) {
  EXPECT_THROW(fit_loglog_slope({{1.0, 1.0}, {2.0, 0.5}}), FitError);
}

TEST(FitLogLog, NonpositiveRowIsDroppedWithAWarning) {
  const auto fit = fit_loglog_slope({{1.0, 1.0}, {2.0, 0.0}, {4.0, 0.25}, {8.0, 0.125}});
  EXPECT_EQ(fit.used_rows, 3u);
  EXPECT_EQ(fit.warnings.size(), 1u);
  EXPECT_THROW(fit_loglog_slope({{1.0, 1.0}, {2.0, -1.0}, {4.0, 0.25}}), FitError);
}

TEST(MSchedule, Examples) {
  EXPECT_EQ(m_schedule(std::exp(5.0), 0.4, 1.0, 1.0, 1.0), 2u);
  EXPECT_EQ(m_schedule(std::exp(5.0), 0.4, 2.0, 1.0, 1.0), 4u);
  EXPECT_EQ(m_schedule(2.0, 0.4, 1.0, 1.0, 1.0), 1u);
  EXPECT_EQ(m_schedule(1024.0, 0.4, 1.0, 2.0, 0.125), 11u);
  EXPECT_THROW(m_schedule(100.0, 0.5, 1.0, 1.0, 1.0), ConfigError);
  EXPECT_THROW(m_schedule(100.0, 0.0, 1.0, 1.0, 1.0), ConfigError);
  EXPECT_THROW(m_schedule(1.0, 0.4, 1.0, 1.0, 1.0), DomainError);
}

TEST(MSchedule, NondecreasingInN) {
  std::size_t prev = 1;
  for (double n = 2.0; n < 1e6; n *= 1.5) {
    const std::size_t m = m_schedule(n, 0.3, 1.5, 1.0, 1.0);
    EXPECT_GE(m, prev);
    prev = m;
  }
}

TEST(MeanAndStderr, Examples) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const auto me = mean_and_stderr(v);
  EXPECT_DOUBLE_EQ(me.mean, 2.5);
  EXPECT_NEAR(me.stderr_, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
  EXPECT_EQ(me.count, 4u);
  const std::vector<double> one{7.0};
  EXPECT_EQ(mean_and_stderr(one).stderr_, 0.0);
}

TEST(DecreasingHelpers, Examples) {
  const std::vector<double> a{1.0, 0.5, 0.25}, small{0.01, 0.01, 0.01}, big{0.6, 0.6, 0.6};
  EXPECT_TRUE(strictly_decreasing_net_of_error(a, small));
  EXPECT_FALSE(strictly_decreasing_net_of_error(a, big));
  EXPECT_TRUE(decreasing_within_error(a, small));
  const std::vector<double> bump{1.0, 1.05, 0.25};
  EXPECT_FALSE(strictly_decreasing_net_of_error(bump, small));
  EXPECT_FALSE(decreasing_within_error(bump, small));
  const std::vector<double> bump_err{0.1, 0.1, 0.1};
  EXPECT_TRUE(decreasing_within_error(bump, bump_err));
}

TEST(Config, ParsesTheShippedFields) {
  const auto c = config("study = \"multiwise_limit\"\nm = [2, 4]\nT = 0.5\ndt = 0.01\n", kTwoNode);
  EXPECT_EQ(c.study, StudyKind::multiwise_limit);
  EXPECT_EQ(c.m, (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(c.kernel, "quadratic_statistic");
  EXPECT_EQ(c.kernel_params.radius, 3.0);
  EXPECT_TRUE(c.initial.monokinetic());
  EXPECT_EQ(c.stem(), "multiwise_limit");
}

TEST(Config, Rejections) {
  EXPECT_THROW(config("study = \"multiwise_limit\"\nbogus = 1\n", kTwoNode), ConfigError);
  EXPECT_THROW(config("study = \"nope\"\n", kTwoNode), ConfigError);
  EXPECT_THROW(config("study = \"joint_limit\"\nN = [64]\nalpha = 0.6\n", kBox), ConfigError);
  EXPECT_THROW(config("study = \"joint_limit\"\nN = [64]\nq = inf\n", kBox), ConfigError);
  EXPECT_THROW(config("study = \"chaos\"\nN = [8]\nk = 3\n", kBox), ConfigError);
  EXPECT_THROW(config("study = \"monokinetic_check\"\nm = [4]\n", kTwoNode), ConfigError);
  EXPECT_THROW(parse_config("study = "), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/mwlab.toml"), IoError);
}

TEST(Config, TomlRoundTrip) {
  const auto c = config("study = \"joint_limit\"\nN = [64, 128]\nR = 4\nalpha = 0.3\nq = 2.0\n", kBox);
  const auto again = parse_config(c.to_toml());
  EXPECT_EQ(again.to_toml(), c.to_toml());
  EXPECT_EQ(again.N, c.N);
  EXPECT_EQ(again.alpha, 0.3);
  EXPECT_EQ(again.q, 2.0);
}

TEST(Report, FormatReal) {
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(INFINITY), "inf");
  EXPECT_EQ(format_real(-INFINITY), "-inf");
  EXPECT_EQ(format_real(NAN), "nan");
}

TEST(Report, CsvLayout) {
  StudyReport r;
  r.study = "demo";
  r.stem = "demo";
  r.rows.push_back({"N", 64.0, 0.25, 0.01, 5, 1.0, 2, 64, 1.0, 1.0, ""});
  const std::string csv = render_csv(r);
  EXPECT_EQ(csv.rfind(std::string(kCsvHeader) + "\n", 0), 0u);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(csv.back(), '\n');
  EXPECT_NE(csv.find("demo,N,64,0.25,0.01,5,1,2,64,1,1,"), std::string::npos);
  EXPECT_EQ(render_metadata(r, false), render_metadata(r, false));
}

TEST(Report, WritesEveryFile) {
  StudyReport r;
  r.study = "demo";
  r.stem = "demo";
  r.rows.push_back({"m", 2.0, 0.5, 0.0, 1, 1.0, 2, 2, 1.0, 1.0, ""});
  r.traces.push_back({0.0, 1, 2.0, "m=2"});
  const auto dir = (std::filesystem::temp_directory_path() / "mwlab_report_test").string();
  std::filesystem::remove_all(dir);
  const auto files = write_report(r, dir);
  EXPECT_EQ(slurp(files.csv), render_csv(r));
  EXPECT_EQ(slurp(files.traces).rfind(std::string(kTraceHeader) + "\n", 0), 0u);
  const auto meta = nlohmann::json::parse(slurp(files.metadata));
  EXPECT_TRUE(meta.is_object());
  std::filesystem::remove_all(dir);
}

TEST(TestFunction, Catalog) {
  const std::vector<double> x{0.25};
  EXPECT_EQ(test_function("zero", x), 0.0);
  EXPECT_EQ(test_function("constant", x), 1.0);
  EXPECT_EQ(test_function("affine", x), 0.25);
  EXPECT_NEAR(test_function("sinusoidal", x), 1.0, 1e-15);
  EXPECT_THROW(test_function("cubic", x), ConfigError);
}

TEST(Studies, SamplingRateRowsAreNonnegative) {
  const auto c = config("study = \"sampling_rate\"\nN = [16, 32, 64, 128]\nseeds = 3\nT = 0.0\n", kBox);
  const auto r = run_study(c);
  ASSERT_EQ(r.rows.size(), 4u);
  for (const auto& row : r.rows) {
    EXPECT_GE(row.gap, 0.0);
    EXPECT_EQ(row.seed_count, 3u);
  }
  EXPECT_TRUE(r.fit.has_value());
}

TEST(Studies, TwoSweepPointsReportAFitError) {
  const auto c = config("study = \"sampling_rate\"\nN = [16, 32]\nseeds = 2\nT = 0.0\n", kBox);
  const auto r = run_study(c);
  EXPECT_EQ(r.rows.size(), 2u);
  EXPECT_FALSE(r.fit.has_value());
  EXPECT_FALSE(r.fit_error.empty());
}

TEST(Studies, DobrushinAtTimeZeroEqualsTheInitialGap) {
  const auto c = config(
      "study = \"dobrushin\"\nm = [2]\nN = [16, 32, 64]\nN_ref = 256\nseeds = 2\nT = 0.0\n", kBox);
  const auto r = run_study(c);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) EXPECT_NEAR(row.gap, std::stod(row.extra), 1e-12);
}

TEST(Studies, MultiwiseLinearKernelHasNoGap) {
  const auto c = config(
      "study = \"multiwise_limit\"\nm = [1, 2, 4]\nT = 0.5\ndt = 0.01\n"
      "[kernel]\nname = \"linear_consensus\"\nradius = 3.0\n"
      "[initial.labels]\nlaw = \"discrete\"\ndim = 1\npoints = [0.0, 1.0]\nweights = [0.5, 0.5]\n"
      "[initial.opinions]\nlaw = \"monokinetic\"\nprofile = \"affine\"\nintercept = 0.0\n"
      "slope = [2.0]\n",
      "");
  const auto r = run_study(c);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) EXPECT_LE(row.gap, 1e-9);
  EXPECT_FALSE(r.traces.empty());
}

TEST(Studies, MultiwiseSingleOrderKeepsTheRow) {
  const auto c = config("study = \"multiwise_limit\"\nm = [1]\nT = 0.5\ndt = 0.01\n", kTwoNode);
  const auto r = run_study(c);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_GT(r.rows[0].gap, 0.0);
  EXPECT_FALSE(r.fit_error.empty());
}

TEST(Studies, JointLimitZeroTestFunction) {
  const auto c = config(
      "study = \"joint_limit\"\nN = [8, 16, 32]\nR = 4\nseeds = 2\nN_ref = 64\nT = 0.125\n"
      "dt = 0.0125\ntest_functions = [\"zero\"]\n",
      kBox);
  const auto r = run_study(c);
  ASSERT_EQ(r.rows.size(), 3u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.gap, 0.0);
    EXPECT_EQ(row.extra, "zero");
  }
}

TEST(Studies, MonokineticCheckLinearAndTimeZero) {
  const auto linear = config(
      "study = \"monokinetic_check\"\nm = [3]\nT = 0.5\ndt_list = [0.01, 0.005]\n"
      "[kernel]\nname = \"linear_consensus\"\nradius = 3.0\n"
      "[initial.labels]\nlaw = \"discrete\"\ndim = 1\npoints = [0.0, 1.0]\nweights = [0.5, 0.5]\n"
      "[initial.opinions]\nlaw = \"monokinetic\"\nprofile = \"affine\"\nintercept = 0.0\n"
      "slope = [2.0]\n",
      "");
  for (const auto& row : run_study(linear).rows) EXPECT_LE(row.gap, 1e-9);
  const auto still = config("study = \"monokinetic_check\"\nm = [4]\nT = 0.0\ndt_list = [0.01]\n",
                            kTwoNode);
  for (const auto& row : run_study(still).rows) EXPECT_EQ(row.gap, 0.0);
}

TEST(Studies, CsvIsIndependentOfTheWorkerCount) {
  const auto c = config(
      "study = \"chaos\"\nm = [2]\nN = [4, 8, 16]\nR = 16\nseeds = 2\nN_ref = 64\nT = 0.25\n"
      "dt = 0.05\n",
      kBox);
  set_worker_count(1);
  const std::string one = render_csv(run_study(c));
  set_worker_count(3);
  const std::string three = render_csv(run_study(c));
  set_worker_count(1);
  EXPECT_EQ(one, three);
}

}  // namespace
}  // namespace mwlab
