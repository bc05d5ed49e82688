// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mwlab {

struct MeanError {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(n); 0 for n = 1
  std::size_t count = 0;
};

MeanError mean_and_stderr(std::span<const double> values);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square residual in log space
  std::size_t used_rows = 0;
  std::vector<std::string> warnings;  // one per dropped row
};

// Least squares of log(gap) against log(param). Rows with a nonpositive
// parameter or gap are dropped with a warning; FitError if fewer than three
// rows survive.
LogLogFit fit_loglog_slope(const std::vector<std::pair<double, double>>& rows);

// max(1, floor(alpha log N / (lip T))^q). ConfigError unless 0 < alpha < 1/2;
// DomainError for N < 2, lip <= 0, T <= 0 or q not finite and >= 1.
std::size_t m_schedule(double agents, double alpha, double q, double lip, double horizon);

// a[k+1] <= a[k] + sqrt(e[k]^2 + e[k+1]^2) at every step, and
// a.back() + e.back() < a.front() - e.front().
bool decreasing_within_error(std::span<const double> values, std::span<const double> errors);

// a[k+1] < a[k] at every step, and the first-to-last drop exceeds
// sqrt(e.front()^2 + e.back()^2).
bool strictly_decreasing_net_of_error(std::span<const double> values,
                                      std::span<const double> errors);

}  // namespace mwlab
