// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "mwlab/error.hpp"
#include "mwlab/parallel.hpp"
#include "mwlab/summation.hpp"

namespace mwlab {
namespace {

double euclid(ConstVec a, ConstVec b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double aggregate(const std::vector<double>& parts, double q) {
  if (std::isinf(q)) return *std::max_element(parts.begin(), parts.end());
  if (q == 1.0) {
    double s = 0.0;
    for (double v : parts) s += v;
    return s;
  }
  double s = 0.0;
  for (double v : parts) s += std::pow(v, q);
  return std::pow(s, 1.0 / q);
}

void check_p(double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("transport order p must lie in [1, inf)");
}

double mean_power_cost(const std::vector<double>& costs, double p) {
  const double mean = pairwise_sum(costs) / static_cast<double>(costs.size());
  return p == 1.0 ? mean : std::pow(mean, 1.0 / p);
}

double power(double v, double p) { return p == 1.0 ? v : (p == 2.0 ? v * v : std::pow(v, p)); }

}  // namespace

void GroundMetric::validate() const {
  if (factors == 0) throw DomainError("ground metric needs at least one factor");
  if (label_dim + opinion_dim == 0) throw DomainError("ground metric on an empty space");
  if (!(q >= 1.0)) throw DomainError("ground metric q must lie in [1, inf]");
  if (kind == Kind::phase_space && factors != 1)
    throw DomainError("phase-space ground metric has exactly one factor");
}

std::string GroundMetric::describe() const {
  std::ostringstream s;
  if (kind == Kind::phase_space) {
    s << "phase_space";
  } else {
    s << "product_q(k=" << factors << ",q=" << q << ")";
  }
  return s.str();
}

double ground_distance(ConstVec a, ConstVec b, const GroundMetric& metric) {
  metric.validate();
  const std::size_t block = metric.label_dim + metric.opinion_dim;
  if (a.size() != metric.point_dim() || b.size() != metric.point_dim())
    throw DomainError("point shape does not match the ground metric");
  std::vector<double> label_parts(metric.factors), opinion_parts(metric.factors);
  for (std::size_t f = 0; f < metric.factors; ++f) {
    const std::size_t o = f * block;
    label_parts[f] = euclid(a.subspan(o, metric.label_dim), b.subspan(o, metric.label_dim));
    opinion_parts[f] = euclid(a.subspan(o + metric.label_dim, metric.opinion_dim),
                              b.subspan(o + metric.label_dim, metric.opinion_dim));
  }
  return aggregate(label_parts, metric.q) + aggregate(opinion_parts, metric.q);
}

double wasserstein_1d(std::vector<double> a, std::vector<double> b, double p) {
  check_p(p);
  if (a.size() != b.size())
    throw DomainError("wasserstein_1d needs equal sample counts (resample upstream)");
  if (a.empty()) throw DomainError("wasserstein_1d of empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> costs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) costs[i] = power(std::abs(a[i] - b[i]), p);
  return mean_power_cost(costs, p);
}

std::vector<std::size_t> solve_assignment(const std::vector<double>& cost, std::size_t n) {
  if (cost.size() != n * n) throw DomainError("cost matrix is not n x n");
  for (double c : cost)
    if (std::isnan(c)) throw DataError("NaN entry in the transport cost matrix");
  if (n == 0) return {};

  // Shortest augmenting paths with row/column potentials; 1-based with a
  // virtual column 0 holding the row being inserted.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t row = 1; row <= n; ++row) {
    owner[0] = row;
    std::size_t col0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const std::size_t i0 = owner[col0];
      double delta = inf;
      std::size_t col1 = 0;
      const double* crow = &cost[(i0 - 1) * n];
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = crow[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (owner[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      owner[col0] = owner[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<std::size_t> pairing(n);
  for (std::size_t j = 1; j <= n; ++j) pairing[owner[j] - 1] = j - 1;
  return pairing;
}

TransportResult wasserstein_assignment(const PointCloud& a, const PointCloud& b, double p,
                                       const GroundMetric& metric, const TransportLimits& limits) {
  check_p(p);
  metric.validate();
  const std::size_t n = a.size();
  if (b.size() != n) throw DomainError("assignment transport needs equal sample counts");
  if (n == 0) throw DomainError("transport between empty samples");
  if (a.dim != metric.point_dim() || b.dim != metric.point_dim())
    throw DomainError("point shape does not match the ground metric");
  if (n > limits.assignment_cap) {
    std::ostringstream msg;
    msg << "assignment transport with n = " << n << " exceeds the cap of "
        << limits.assignment_cap;
    throw CapacityError(msg.str());
  }

  std::vector<double> cost(n * n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j)
      cost[i * n + j] = power(ground_distance(a.point(i), b.point(j), metric), p);
  });

  TransportResult result;
  result.pairing = solve_assignment(cost, n);
  std::vector<double> assigned(n);
  for (std::size_t i = 0; i < n; ++i) assigned[i] = cost[i * n + result.pairing[i]];
  std::sort(assigned.begin(), assigned.end());
  result.distance = mean_power_cost(assigned, p);
  const auto [lo, hi] = std::minmax_element(cost.begin(), cost.end());
  result.cost_min = *lo;
  result.cost_max = *hi;
  result.cost_mean = pairwise_sum(cost) / static_cast<double>(cost.size());
  return result;
}

double empirical_wasserstein(const PointCloud& a, const PointCloud& b, double p,
                             const GroundMetric& metric, const TransportLimits& limits) {
  metric.validate();
  if (a.dim != metric.point_dim() || b.dim != metric.point_dim())
    throw DomainError("point shape does not match the ground metric");
  if (a.size() == 0 || a.size() != b.size())
    throw DomainError("transport needs equal nonzero sample counts");

  // Coordinates constant across both clouds contribute nothing to any cost.
  std::optional<std::size_t> moving;
  bool one_dimensional = true;
  for (std::size_t c = 0; c < a.dim && one_dimensional; ++c) {
    const double ref = a.coords[c];
    bool constant = true;
    for (std::size_t i = 0; i < a.size() && constant; ++i)
      constant = a.coords[i * a.dim + c] == ref && b.coords[i * b.dim + c] == ref;
    if (constant) continue;
    if (moving) one_dimensional = false;
    moving = c;
  }
  if (!one_dimensional) return wasserstein_assignment(a, b, p, metric, limits).distance;
  if (!moving) return 0.0;
  std::vector<double> xa(a.size()), xb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    xa[i] = a.coords[i * a.dim + *moving];
    xb[i] = b.coords[i * b.dim + *moving];
  }
  return wasserstein_1d(std::move(xa), std::move(xb), p);
}

}  // namespace mwlab
