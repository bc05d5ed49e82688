// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace oracle {

namespace {

void enumerate(const std::vector<double>& atoms, std::size_t m, std::vector<double>& tail,
               const std::function<long double(const std::vector<double>&)>& f,
               long double& sum) {
  if (tail.size() == m) {
    sum += f(tail);
    return;
  }
  for (double a : atoms) {
    tail.push_back(a);
    enumerate(atoms, m, tail, f, sum);
    tail.pop_back();
  }
}

long double tail_mean(const std::vector<double>& tail) {
  long double s = 0.0L;
  for (double v : tail) s += v;
  return s / static_cast<long double>(tail.size());
}

}  // namespace

long double tuple_average(const std::vector<double>& atoms, std::size_t m,
                          const std::function<long double(const std::vector<double>&)>& f) {
  std::vector<double> tail;
  long double sum = 0.0L;
  enumerate(atoms, m, tail, f, sum);
  return sum / std::pow(static_cast<long double>(atoms.size()), static_cast<long double>(m));
}

std::vector<double> quadratic_drifts(const std::vector<double>& opinions, std::size_t m) {
  const long double second = tuple_average(opinions, m, [](const std::vector<double>& tail) {
    const long double s = tail_mean(tail);
    return s * s;
  });
  std::vector<double> out;
  for (double xi : opinions) out.push_back(static_cast<double>(second - xi));
  return out;
}

std::vector<double> linear_drifts(const std::vector<double>& opinions, std::size_t m) {
  const long double first = tuple_average(opinions, m, tail_mean);
  std::vector<double> out;
  for (double xi : opinions) out.push_back(static_cast<double>(first - xi));
  return out;
}

double brute_force_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += cost[i][perm[i]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(n);
}

std::vector<double> consensus_closed_form(const std::vector<double>& y0,
                                          const std::vector<double>& weights, double t) {
  long double mean = 0.0L;
  for (std::size_t i = 0; i < y0.size(); ++i) {
    const long double w = weights.empty() ? 1.0L / y0.size() : weights[i];
    mean += w * y0[i];
  }
  std::vector<double> out;
  for (double y : y0) out.push_back(static_cast<double>(mean + (y - mean) * std::exp(-static_cast<long double>(t))));
  return out;
}

std::vector<TwoNodeState> two_node_benchmark(double a0, double b0, std::size_t m, double horizon,
                                             double dt) {
  const long double inv_m = m == 0 ? 0.0L : 1.0L / static_cast<long double>(m);
  auto f = [&](long double mu, long double h) { return mu * mu + h * h * inv_m - mu; };
  long double mu = 0.5L * (static_cast<long double>(a0) + b0);
  long double h = 0.5L * (static_cast<long double>(b0) - a0);
  const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  const long double step = static_cast<long double>(horizon) / steps;
  std::vector<TwoNodeState> out;
  out.push_back({0.0, static_cast<double>(mu - h), static_cast<double>(mu + h)});
  for (std::size_t n = 0; n < steps; ++n) {
    const long double k1m = f(mu, h), k1h = -h;
    const long double m2 = mu + 0.5L * step * k1m, h2 = h + 0.5L * step * k1h;
    const long double k2m = f(m2, h2), k2h = -h2;
    const long double m3 = mu + 0.5L * step * k2m, h3 = h + 0.5L * step * k2h;
    const long double k3m = f(m3, h3), k3h = -h3;
    const long double m4 = mu + step * k3m, h4 = h + step * k3h;
    const long double k4m = f(m4, h4), k4h = -h4;
    mu += step / 6.0L * (k1m + 2.0L * k2m + 2.0L * k3m + k4m);
    h += step / 6.0L * (k1h + 2.0L * k2h + 2.0L * k3h + k4h);
    const double t = static_cast<double>(step * (n + 1));
    out.push_back({t, static_cast<double>(mu - h), static_cast<double>(mu + h)});
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace oracle
