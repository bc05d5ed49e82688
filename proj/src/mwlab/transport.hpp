// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "mwlab/kernels.hpp"

namespace mwlab {

// Ground metric on (label x opinion)^k. A point is k consecutive blocks of
// label_dim label coordinates followed by opinion_dim opinion coordinates.
//   phase_space: k = 1, |x - x'| + |xi - xi'| (Euclidean in each part).
//   product_q:   ||(|x_a - x'_a|)_a||_q + ||(|xi_a - xi'_a|)_a||_q over the k factors.
struct GroundMetric {
  enum class Kind { phase_space, product_q };
  Kind kind = Kind::phase_space;
  std::size_t label_dim = 1;
  std::size_t opinion_dim = 1;
  std::size_t factors = 1;  // k
  double q = 1.0;           // may be +infinity

  static GroundMetric phase_space(std::size_t label_dim, std::size_t opinion_dim) {
    return {Kind::phase_space, label_dim, opinion_dim, 1, 1.0};
  }
  static GroundMetric product_q(std::size_t factors, double q, std::size_t label_dim,
                                std::size_t opinion_dim) {
    return {Kind::product_q, label_dim, opinion_dim, factors, q};
  }
  std::size_t point_dim() const { return factors * (label_dim + opinion_dim); }
  void validate() const;  // DomainError
  std::string describe() const;
};

double ground_distance(ConstVec a, ConstVec b, const GroundMetric& metric);

// n points of a fixed dimension, row-major.
struct PointCloud {
  std::size_t dim = 1;
  std::vector<double> coords;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  ConstVec point(std::size_t i) const { return ConstVec(coords).subspan(i * dim, dim); }
};

struct TransportResult {
  double distance = 0.0;
  std::vector<std::size_t> pairing;  // a_i is matched to b_{pairing[i]}
  double cost_min = 0.0;             // over the n x n matrix of ground_distance^p
  double cost_max = 0.0;
  double cost_mean = 0.0;
};

struct TransportLimits {
  std::size_t assignment_cap = 2048;
};

// Quantile coupling of two equal-size scalar samples.
double wasserstein_1d(std::vector<double> a, std::vector<double> b, double p);

// Exact W_p between uniform empirical measures of equal size via an optimal
// assignment (shortest augmenting paths, O(n^3)).
TransportResult wasserstein_assignment(const PointCloud& a, const PointCloud& b, double p,
                                       const GroundMetric& metric,
                                       const TransportLimits& limits = {});

// Minimum-cost perfect matching of a square row-major cost matrix. Returns the
// column assigned to each row. DataError on NaN entries.
std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n);

// W_p with the exact 1-D route when every coordinate except one is constant
// and shared by both clouds (any size), otherwise wasserstein_assignment.
double empirical_wasserstein(const PointCloud& a, const PointCloud& b, double p,
                             const GroundMetric& metric, const TransportLimits& limits = {});

}  // namespace mwlab
