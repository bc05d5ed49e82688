// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/stats.hpp"

#include <cmath>
#include <sstream>

#include "mwlab/error.hpp"

namespace mwlab {

MeanError mean_and_stderr(std::span<const double> values) {
  MeanError r;
  r.count = values.size();
  if (values.empty()) return r;
  double s = 0.0;
  for (double v : values) s += v;
  r.mean = s / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - r.mean) * (v - r.mean);
    const double n = static_cast<double>(values.size());
    r.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  }
  return r;
}

LogLogFit fit_loglog_slope(const std::vector<std::pair<double, double>>& rows) {
  LogLogFit fit;
  std::vector<double> xs, ys;
  for (const auto& [param, gap] : rows) {
    if (!(param > 0.0) || !(gap > 0.0) || !std::isfinite(param) || !std::isfinite(gap)) {
      std::ostringstream w;
      w << "dropped row (param=" << param << ", gap=" << gap << "): nonpositive value";
      fit.warnings.push_back(w.str());
      continue;
    }
    xs.push_back(std::log(param));
    ys.push_back(std::log(gap));
  }
  fit.used_rows = xs.size();
  if (xs.size() < 3) {
    std::ostringstream msg;
    msg << "log-log fit needs at least 3 positive rows, got " << xs.size();
    throw FitError(msg.str());
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw FitError("log-log fit needs at least two distinct parameters");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

std::size_t m_schedule(double agents, double alpha, double q, double lip, double horizon) {
  if (!(alpha > 0.0 && alpha < 0.5))
    throw ConfigError("joint-limit exponent alpha must lie in (0, 1/2)");
  if (!(agents >= 2.0)) throw DomainError("m_schedule needs N >= 2");
  if (!(lip > 0.0) || !(horizon > 0.0)) throw DomainError("m_schedule needs lip > 0 and T > 0");
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("m_schedule needs a finite q >= 1");
  const double base = std::floor(alpha * std::log(agents) / (lip * horizon) + 1e-12);
  const double m = std::pow(base, q);
  if (!(m >= 1.0)) return 1;
  if (m > 1e9) throw DomainError("m_schedule result is unreasonably large");
  return static_cast<std::size_t>(m);
}

bool decreasing_within_error(std::span<const double> values, std::span<const double> errors) {
  if (values.size() != errors.size() || values.size() < 2) return false;
  for (std::size_t k = 0; k + 1 < values.size(); ++k)
    if (values[k + 1] > values[k] + std::hypot(errors[k], errors[k + 1])) return false;
  return values.back() + errors.back() < values.front() - errors.front();
}

bool strictly_decreasing_net_of_error(std::span<const double> values,
                                      std::span<const double> errors) {
  if (values.size() != errors.size() || values.size() < 2) return false;
  for (std::size_t k = 0; k + 1 < values.size(); ++k)
    if (!(values[k + 1] < values[k])) return false;
  return values.front() - values.back() > std::hypot(errors.front(), errors.back());
}

}  // namespace mwlab
