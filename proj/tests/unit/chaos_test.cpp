// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mwlab/chaos.hpp"
#include "mwlab/error.hpp"
#include "mwlab/kernels.hpp"
#include "mwlab/transport.hpp"

namespace mwlab {
namespace {

OpinionProfile affine(double intercept, double slope) {
  OpinionProfile p;
  p.kind = OpinionProfile::Kind::affine;
  p.intercept = intercept;
  p.slope = {slope};
  return p;
}

InitialDatumSpec monokinetic_box(const OpinionProfile& profile) {
  return {UniformBoxLabels{{0.0}, {1.0}}, Monokinetic{profile}};
}

// R runs of N agents with label i and opinion 10 r + i, recorded at t = 0 only.
LiouvilleEnsemble indexed_ensemble(std::size_t n, std::size_t runs) {
  LiouvilleEnsemble ens;
  ens.agents = n;
  ens.runs.resize(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    Trajectory& t = ens.runs[r];
    t.times = {0.0};
    t.opinions.resize(1);
    for (std::size_t i = 0; i < n; ++i) {
      t.labels.push_back(static_cast<double>(i));
      t.opinions[0].push_back(10.0 * r + i);
    }
  }
  return ens;
}

TEST(LiouvilleEnsemble, SingleRunIsOneIntegrateCall) {
  const auto spec = monokinetic_box(affine(0.0, 1.0));
  const auto k = quadratic_statistic({.radius = 2.0});
  const auto grid = TimeGrid::uniform(0.5, 0.05);
  const auto ens = sample_liouville_ensemble(spec, 10, 1, k, 2, grid, Scheme::rk4, RhsMode::exact(), 77);
  RngStream init = RngStream(77).split(0, 0);
  const auto direct = integrate(sample_initial(spec, 10, init), k, 2, grid, Scheme::rk4, RhsMode::exact());
  ASSERT_EQ(ens.size(), 1u);
  EXPECT_EQ(ens.runs[0].opinions, direct.opinions);
  EXPECT_EQ(ens.runs[0].labels, direct.labels);
}

TEST(LiouvilleEnsemble, MonokineticStartOnTheGraph) {
  const auto profile = affine(0.25, -0.5);
  const auto ens = sample_liouville_ensemble(monokinetic_box(profile), 20, 8, linear_consensus(), 1,
                                             TimeGrid::uniform(0.1, 0.05), Scheme::rk4,
                                             RhsMode::exact(), 5);
  for (const auto& run : ens.runs)
    for (std::size_t i = 0; i < 20; ++i) {
      double y = 0.0;
      profile.evaluate(ConstVec(run.labels).subspan(i, 1), MutVec(&y, 1));
      EXPECT_EQ(run.opinions[0][i], y);
    }
}

TEST(LiouvilleEnsemble, DifferentSeedsDrawDifferentLabels) {
  const auto spec = monokinetic_box(affine(0.0, 1.0));
  const auto grid = TimeGrid{{0.0}};
  const auto a = sample_liouville_ensemble(spec, 16, 4, linear_consensus(), 1, grid, Scheme::rk4,
                                           RhsMode::exact(), 1);
  const auto b = sample_liouville_ensemble(spec, 16, 4, linear_consensus(), 1, grid, Scheme::rk4,
                                           RhsMode::exact(), 2);
  for (std::size_t r = 0; r < 4; ++r)
    for (double x : a.runs[r].labels)
      for (const auto& other : b.runs)
        EXPECT_EQ(std::count(other.labels.begin(), other.labels.end(), x), 0);
}

TEST(SymmetrizedMarginal, IdentityHookRecoversTheFullState) {
  const auto ens = indexed_ensemble(5, 3);
  SymmetrizeOptions opts;
  opts.identity = true;
  const auto cloud = symmetrized_marginal_samples(ens, 0.0, 5, RngStream(1), opts);
  ASSERT_EQ(cloud.size(), 3u);
  ASSERT_EQ(cloud.dim, 10u);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t i = 0; i < 5; ++i) {
      EXPECT_EQ(cloud.point(r)[2 * i], static_cast<double>(i));
      EXPECT_EQ(cloud.point(r)[2 * i + 1], 10.0 * r + i);
    }
}

TEST(SymmetrizedMarginal, FullMarginalIsAPermutationOfTheState) {
  const auto ens = indexed_ensemble(6, 4);
  const auto cloud = symmetrized_marginal_samples(ens, 0.0, 6, RngStream(2));
  for (std::size_t r = 0; r < 4; ++r) {
    std::vector<double> labels;
    for (std::size_t i = 0; i < 6; ++i) labels.push_back(cloud.point(r)[2 * i]);
    std::sort(labels.begin(), labels.end());
    EXPECT_EQ(labels, (std::vector<double>{0, 1, 2, 3, 4, 5}));
  }
}

TEST(SymmetrizedMarginal, FirstCoordinateIsUniform) {
  const std::size_t n = 8, runs = 10000;
  const auto cloud = symmetrized_marginal_samples(indexed_ensemble(n, runs), 0.0, 1, RngStream(3));
  std::vector<double> counts(n, 0.0);
  for (std::size_t r = 0; r < runs; ++r) counts[static_cast<std::size_t>(cloud.point(r)[0])] += 1.0;
  const double expected = static_cast<double>(runs) / n;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 18.475);  // chi-square, 7 degrees of freedom, 1% level
}

TEST(SymmetrizedMarginal, Errors) {
  const auto ens = indexed_ensemble(3, 2);
  EXPECT_THROW(symmetrized_marginal_samples(ens, 0.0, 4, RngStream(1)), DomainError);
  EXPECT_THROW(symmetrized_marginal_samples(ens, 0.0, 0, RngStream(1)), DomainError);
  EXPECT_THROW(symmetrized_marginal_samples(ens, 0.5, 1, RngStream(1)), DomainError);
}

TEST(SymmetrizedMarginal, RelabellingLeavesTheLawUnchanged) {
  const auto spec = monokinetic_box(affine(-0.5, 1.0));
  const auto ens = sample_liouville_ensemble(spec, 12, 400, quadratic_statistic({.radius = 2.0}), 2,
                                             TimeGrid::uniform(0.5, 0.05), Scheme::rk4,
                                             RhsMode::closed_form(), 9);
  SymmetrizeOptions relabel;
  relabel.relabel = {11, 3, 5, 0, 1, 2, 4, 6, 7, 8, 9, 10};
  const auto a = symmetrized_marginal_samples(ens, 0.5, 1, RngStream(4));
  const auto b = symmetrized_marginal_samples(ens, 0.5, 1, RngStream(5), relabel);
  const auto metric = GroundMetric::phase_space(1, 1);
  const double observed = wasserstein_assignment(a, b, 1.0, metric).distance;

  PointCloud pooled{2, a.coords};
  pooled.coords.insert(pooled.coords.end(), b.coords.begin(), b.coords.end());
  RngStream rng(6);
  std::size_t at_least = 0;
  const std::size_t splits = 200;
  for (std::size_t s = 0; s < splits; ++s) {
    const auto order = random_permutation_prefix(pooled.size(), pooled.size(), rng);
    PointCloud x{2, {}}, y{2, {}};
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto& dst = i < a.size() ? x : y;
      const auto p = pooled.point(order[i]);
      dst.coords.insert(dst.coords.end(), p.begin(), p.end());
    }
    if (wasserstein_assignment(x, y, 1.0, metric).distance >= observed) ++at_least;
  }
  EXPECT_GT(static_cast<double>(at_least + 1) / (splits + 1), 0.01);
}

TEST(FirstMomentPairing, ConstantTestFunctionIsConserved) {
  const auto spec = monokinetic_box(affine(0.0, 2.0));
  const auto grid = TimeGrid::uniform(1.0, 0.01);
  const auto ens = sample_liouville_ensemble(spec, 30, 6, linear_consensus({.radius = 3.0}), 2, grid,
                                             Scheme::rk4, RhsMode::exact(), 13);
  const LabelFunction one = [](ConstVec) { return 1.0; };
  for (const auto& run : ens.runs) {
    LiouvilleEnsemble single;
    single.agents = 30;
    single.runs = {run};
    const double start = first_moment_pairing(single, 0.0, one)[0];
    double label_mean = 0.0;
    for (double x : run.labels) label_mean += 2.0 * x / 30.0;
    EXPECT_NEAR(start, label_mean, 1e-12);
    for (double t : grid.times) EXPECT_NEAR(first_moment_pairing(single, t, one)[0], start, 1e-6);
  }
}

TEST(FirstMomentPairing, ZeroTestFunctionGivesZero) {
  const auto ens = indexed_ensemble(4, 3);
  EXPECT_EQ(first_moment_pairing(ens, 0.0, [](ConstVec) { return 0.0; })[0], 0.0);
}

TEST(FirstMomentPairing, SingleAgentSingleRun) {
  const auto ens = indexed_ensemble(1, 1);
  const LabelFunction bump = [](ConstVec x) { return std::exp(-x[0] * x[0]); };
  auto shifted = ens;
  shifted.runs[0].labels[0] = 0.5;
  shifted.runs[0].opinions[0][0] = 3.0;
  EXPECT_EQ(first_moment_pairing(shifted, 0.0, bump)[0], std::exp(-0.25) * 3.0);
}

}  // namespace
}  // namespace mwlab
