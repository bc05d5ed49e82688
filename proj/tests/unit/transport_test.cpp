// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "mwlab/error.hpp"
#include "mwlab/rng.hpp"
#include "mwlab/stats.hpp"
#include "mwlab/transport.hpp"
#include "oracles.hpp"

namespace mwlab {
namespace {

PointCloud random_cloud(RngStream& rng, std::size_t n, std::size_t dim, double shift = 0.0) {
  PointCloud c{dim, std::vector<double>(n * dim)};
  for (double& v : c.coords) v = rng.uniform() + shift;
  return c;
}

std::vector<std::vector<double>> cost_matrix(const PointCloud& a, const PointCloud& b, double p,
                                             const GroundMetric& metric) {
  std::vector<std::vector<double>> cost(a.size(), std::vector<double>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      cost[i][j] = std::pow(ground_distance(a.point(i), b.point(j), metric), p);
  return cost;
}

TEST(GroundDistance, Examples) {
  const auto phase = GroundMetric::phase_space(1, 1);
  const std::vector<double> a{0.0, 0.0}, b{1.0, 2.0};
  EXPECT_EQ(ground_distance(a, b, phase), 3.0);

  const auto qinf = GroundMetric::product_q(2, std::numeric_limits<double>::infinity(), 1, 1);
  const std::vector<double> c{0.0, 0.0, 0.0, 0.0}, d{0.0, 1.0, 0.0, 3.0};
  EXPECT_EQ(ground_distance(c, d, qinf), 3.0);

  const auto q1 = GroundMetric::product_q(2, 1.0, 1, 1);
  const std::vector<double> e{1.0, 1.0, 1.0, 3.0};
  EXPECT_EQ(ground_distance(c, e, q1), 6.0);
}

TEST(GroundDistance, ShapeMismatchIsADomainError) {
  const std::vector<double> a{0.0, 0.0}, b{1.0, 2.0, 3.0};
  EXPECT_THROW(ground_distance(a, b, GroundMetric::phase_space(1, 1)), DomainError);
}

TEST(GroundDistance, MetricAxiomsOnRandomTriples) {
  RngStream rng(21);
  for (const auto& metric : {GroundMetric::phase_space(2, 1), GroundMetric::product_q(2, 1.0, 1, 1),
                             GroundMetric::product_q(2, 2.5, 1, 2),
                             GroundMetric::product_q(3, std::numeric_limits<double>::infinity(), 1, 1)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto pts = random_cloud(rng, 3, metric.point_dim());
      const double ab = ground_distance(pts.point(0), pts.point(1), metric);
      EXPECT_EQ(ab, ground_distance(pts.point(1), pts.point(0), metric));
      EXPECT_GT(ab, 0.0);
      EXPECT_EQ(ground_distance(pts.point(0), pts.point(0), metric), 0.0);
      EXPECT_LE(ground_distance(pts.point(0), pts.point(2), metric),
                ab + ground_distance(pts.point(1), pts.point(2), metric) + 1e-12);
    }
  }
}

TEST(Wasserstein1d, Examples) {
  EXPECT_EQ(wasserstein_1d({0.0, 2.0}, {1.0, 3.0}, 1.0), 1.0);
  EXPECT_EQ(wasserstein_1d({0.0}, {5.0}, 2.0), 5.0);
  EXPECT_EQ(wasserstein_1d({0.3, -1.0, 2.0}, {2.0, 0.3, -1.0}, 1.0), 0.0);
  EXPECT_THROW(wasserstein_1d({0.0}, {1.0, 2.0}, 1.0), DomainError);
}

TEST(WassersteinAssignment, TwoAtomExample) {
  const PointCloud a{2, {0.0, 0.0, 0.0, 2.0}}, b{2, {0.0, 1.0, 0.0, 3.0}};
  EXPECT_EQ(wasserstein_assignment(a, b, 1.0, GroundMetric::phase_space(1, 1)).distance, 1.0);
}

TEST(WassersteinAssignment, ShuffledCopyIsZeroWithTheUnshufflingPairing) {
  RngStream rng(22);
  const auto a = random_cloud(rng, 40, 2);
  std::vector<std::size_t> perm(40);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t j = perm.size(); j > 1; --j) std::swap(perm[j - 1], perm[rng.below(j)]);
  PointCloud b{2, std::vector<double>(80)};
  for (std::size_t i = 0; i < 40; ++i) {
    b.coords[2 * perm[i]] = a.coords[2 * i];
    b.coords[2 * perm[i] + 1] = a.coords[2 * i + 1];
  }
  const auto r = wasserstein_assignment(a, b, 1.0, GroundMetric::phase_space(1, 1));
  EXPECT_EQ(r.distance, 0.0);
  EXPECT_EQ(r.pairing, perm);
}

TEST(WassersteinAssignment, EqualsBruteForce) {
  RngStream rng(23);
  const GroundMetric metrics[] = {GroundMetric::phase_space(1, 1), GroundMetric::product_q(2, 2.0, 1, 1)};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    const auto& metric = metrics[trial % 2];
    const double p = (trial / 2) % 2 == 0 ? 1.0 : 2.0;
    const auto a = random_cloud(rng, n, metric.point_dim());
    const auto b = random_cloud(rng, n, metric.point_dim());
    const auto r = wasserstein_assignment(a, b, p, metric);
    const double brute = oracle::brute_force_assignment(cost_matrix(a, b, p, metric));
    EXPECT_NEAR(std::pow(r.distance, p), brute, 1e-12 * (1.0 + brute));
  }
}

TEST(WassersteinAssignment, DistanceMatchesItsPairing) {
  RngStream rng(24);
  const auto metric = GroundMetric::phase_space(1, 1);
  const auto a = random_cloud(rng, 30, 2);
  const auto b = random_cloud(rng, 30, 2);
  const auto r = wasserstein_assignment(a, b, 2.0, metric);
  double total = 0.0;
  for (std::size_t i = 0; i < 30; ++i)
    total += std::pow(ground_distance(a.point(i), b.point(r.pairing[i]), metric), 2.0) / 30.0;
  EXPECT_NEAR(r.distance, std::sqrt(total), 1e-14);
  EXPECT_LE(r.cost_min, r.cost_mean);
  EXPECT_LE(r.cost_mean, r.cost_max);
}

TEST(WassersteinAssignment, AgreesWithTheQuantileCoupling) {
  RngStream rng(25);
  const std::size_t n = 200;
  PointCloud a{2, {}}, b{2, {}};
  std::vector<double> xa, xb;
  for (std::size_t i = 0; i < n; ++i) {
    xa.push_back(rng.normal());
    xb.push_back(rng.uniform(-1.0, 2.0));
    a.coords.insert(a.coords.end(), {0.5, xa.back()});
    b.coords.insert(b.coords.end(), {0.5, xb.back()});
  }
  const auto metric = GroundMetric::phase_space(1, 1);
  for (double p : {1.0, 2.0, 3.0}) {
    const double w1d = wasserstein_1d(xa, xb, p);
    EXPECT_NEAR(wasserstein_assignment(a, b, p, metric).distance, w1d, 1e-10);
    EXPECT_NEAR(empirical_wasserstein(a, b, p, metric), w1d, 1e-10);
  }
}

TEST(WassersteinAssignment, Errors) {
  const auto metric = GroundMetric::phase_space(1, 1);
  const PointCloud a{2, {0.0, 0.0, 1.0, 1.0}}, one{2, {0.0, 0.0}};
  EXPECT_THROW(wasserstein_assignment(a, one, 1.0, metric), DomainError);
  EXPECT_THROW(wasserstein_assignment(a, a, 1.0, metric, TransportLimits{1}), CapacityError);
  const PointCloud nan{2, {0.0, std::nan(""), 1.0, 1.0}};
  EXPECT_THROW(wasserstein_assignment(a, nan, 1.0, metric), DataError);
  EXPECT_THROW(solve_assignment({0.0, std::nan(""), 1.0, 0.0}, 2), DataError);
  EXPECT_THROW(wasserstein_assignment(a, a, 0.5, metric), DomainError);
}

TEST(WassersteinAssignment, MetricAxiomsAndMonotonicityInP) {
  RngStream rng(26);
  const auto metric = GroundMetric::phase_space(1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(30);
    const auto a = random_cloud(rng, n, 2);
    const auto b = random_cloud(rng, n, 2, 0.2);
    const auto c = random_cloud(rng, n, 2, -0.1);
    const double ab = wasserstein_assignment(a, b, 1.0, metric).distance;
    EXPECT_NEAR(ab, wasserstein_assignment(b, a, 1.0, metric).distance, 1e-12);
    EXPECT_LE(wasserstein_assignment(a, c, 1.0, metric).distance,
              ab + wasserstein_assignment(b, c, 1.0, metric).distance + 1e-9);
    for (double p : {1.5, 2.0, 4.0})
      EXPECT_LE(ab, wasserstein_assignment(a, b, p, metric).distance + 1e-9);
  }
}

TEST(WassersteinAssignment, TensorizationBound) {
  const auto factor_metric = GroundMetric::product_q(1, 1.0, 1, 1);
  const auto product_metric = GroundMetric::product_q(2, 1.0, 1, 1);
  const std::size_t n = 256;
  std::vector<double> factor, product;
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    RngStream rng = RngStream(27).split(rep);
    auto draw = [&](double shift) {
      PointCloud c{2, {}};
      for (std::size_t i = 0; i < n; ++i) c.coords.insert(c.coords.end(), {0.0, rng.uniform() + shift});
      return c;
    };
    const auto a1 = draw(0.0), a2 = draw(0.0), b1 = draw(0.25), b2 = draw(0.25);
    factor.push_back(wasserstein_assignment(a1, b1, 1.0, factor_metric).distance);
    PointCloud pa{4, {}}, pb{4, {}};
    for (std::size_t i = 0; i < n; ++i) {
      pa.coords.insert(pa.coords.end(), {0.0, a1.coords[2 * i + 1], 0.0, a2.coords[2 * i + 1]});
      pb.coords.insert(pb.coords.end(), {0.0, b1.coords[2 * i + 1], 0.0, b2.coords[2 * i + 1]});
    }
    product.push_back(wasserstein_assignment(pa, pb, 1.0, product_metric).distance);
  }
  const auto f = mean_and_stderr(factor);
  const auto g = mean_and_stderr(product);
  EXPECT_LE(g.mean, 2.0 * f.mean + 2.0 * f.stderr_);
}

}  // namespace
}  // namespace mwlab
