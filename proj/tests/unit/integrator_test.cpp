// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mwlab/error.hpp"
#include "mwlab/integrator.hpp"
#include "oracles.hpp"

namespace mwlab {
namespace {

const DriftFn kDecay = [](double, ConstVec y, MutVec out, StageId) {
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = -y[i];
};

double final_error(Scheme scheme, double dt) {
  const auto r = integrate_flow({1.0}, TimeGrid::uniform(1.0, dt), scheme, kDecay, {});
  return std::abs(r.states.back()[0] - std::exp(-1.0));
}

TEST(TimeGrid, UniformHasExactEndpoints) {
  const auto g = TimeGrid::uniform(1.0, 0.3);
  EXPECT_EQ(g.steps(), 4u);
  EXPECT_EQ(g.times.front(), 0.0);
  EXPECT_EQ(g.final_time(), 1.0);
  EXPECT_EQ(TimeGrid::uniform(1.0, 0.1).steps(), 10u);
  EXPECT_EQ(TimeGrid::uniform(0.0, 0.1).times, (std::vector<double>{0.0}));
  EXPECT_THROW(TimeGrid::uniform(1.0, 0.0), DomainError);
  EXPECT_THROW((TimeGrid{{0.0, 0.0}}).validate(), DomainError);
}

TEST(IntegrateFlow, Rk4OrderOnTheDecay) {
  std::vector<double> dts{1e-1, 5e-2, 2.5e-2, 1.25e-2}, errs;
  for (double dt : dts) errs.push_back(final_error(Scheme::rk4, dt));
  EXPECT_NEAR(oracle::loglog_slope(dts, errs), 4.0, 0.3);
}

TEST(IntegrateFlow, EulerOrderOnTheDecay) {
  std::vector<double> dts{1e-1, 1e-2, 1e-3}, errs;
  for (double dt : dts) errs.push_back(final_error(Scheme::euler, dt));
  EXPECT_NEAR(oracle::loglog_slope(dts, errs), 1.0, 0.1);
}

TEST(IntegrateFlow, RecordStrideKeepsTheLastPoint) {
  const auto r = integrate_flow({1.0}, TimeGrid::uniform(1.0, 0.1), Scheme::rk4, kDecay, {}, 3);
  EXPECT_EQ(r.times, (std::vector<double>{0.0, 0.3, 0.6, 0.9, 1.0}));
}

TEST(IntegrateFlow, ViolationTruncates) {
  const DriftFn grow = [](double, ConstVec y, MutVec out, StageId) { out[0] = y[0]; };
  const StateCheck check = [](ConstVec y) {
    if (y[0] > 2.0) throw DomainViolation("left the ball");
  };
  const auto r = integrate_flow({1.0}, TimeGrid::uniform(2.0, 0.1), Scheme::rk4, grow, check);
  EXPECT_TRUE(r.blow_up);
  EXPECT_NEAR(r.exit_time, 0.7, 1e-12);
  EXPECT_NEAR(r.times.back(), 0.6, 1e-12);
  EXPECT_LE(r.states.back()[0], 2.0);
  EXPECT_EQ(r.blow_up_reason, "left the ball");
}

TEST(IntegrateFlow, StageIdsCoverEveryStage) {
  std::vector<StageId> seen;
  const DriftFn record = [&](double, ConstVec, MutVec out, StageId id) {
    out[0] = 0.0;
    seen.push_back(id);
  };
  integrate_flow({0.0}, TimeGrid::uniform(0.2, 0.1), Scheme::rk4, record, {});
  ASSERT_EQ(seen.size(), 8u);
  EXPECT_EQ(seen[5].step, 1u);
  EXPECT_EQ(seen[5].stage, 1u);
}

TEST(Scheme, NamesRoundTrip) {
  EXPECT_EQ(parse_scheme(scheme_name(Scheme::rk4)), Scheme::rk4);
  EXPECT_EQ(parse_scheme("euler"), Scheme::euler);
  EXPECT_THROW(parse_scheme("leapfrog"), ConfigError);
}

}  // namespace
}  // namespace mwlab
