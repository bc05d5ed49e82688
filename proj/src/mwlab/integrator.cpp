// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/integrator.hpp"

#include <cmath>

#include "mwlab/error.hpp"

namespace mwlab {

std::string_view scheme_name(Scheme scheme) { return scheme == Scheme::rk4 ? "rk4" : "euler"; }

Scheme parse_scheme(std::string_view name) {
  if (name == "rk4") return Scheme::rk4;
  if (name == "euler") return Scheme::euler;
  throw ConfigError("unknown scheme '" + std::string(name) + "' (expected euler or rk4)");
}

TimeGrid TimeGrid::uniform(double horizon, double dt) {
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) throw DomainError("time horizon must be >= 0");
  if (!(dt > 0.0)) throw DomainError("time step must be > 0");
  const auto steps = static_cast<std::size_t>(std::max(0.0, std::ceil(horizon / dt - 1e-9)));
  TimeGrid grid;
  grid.times.resize(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i)
    grid.times[i] = steps == 0 ? 0.0 : horizon * static_cast<double>(i) / static_cast<double>(steps);
  return grid;
}

void TimeGrid::validate() const {
  if (times.empty()) throw DomainError("time grid is empty");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw DomainError("time grid is not strictly increasing");
}

FlowResult integrate_flow(std::vector<double> initial, const TimeGrid& grid, Scheme scheme,
                          const DriftFn& drift, const StateCheck& check,
                          std::size_t record_stride) {
  grid.validate();
  if (record_stride == 0) record_stride = 1;
  FlowResult result;
  const std::size_t n = initial.size();
  std::vector<double> state = std::move(initial);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

  result.times.push_back(grid.times.front());
  result.states.push_back(state);
  bool last_recorded = true;

  const std::size_t steps = grid.steps();
  std::vector<double> next(n);
  for (std::size_t step = 0; step < steps; ++step) {
    const double t = grid.times[step];
    const double h = grid.times[step + 1] - t;
    try {
      if (scheme == Scheme::euler) {
        drift(t, state, k1, {step, 0});
        for (std::size_t i = 0; i < n; ++i) next[i] = state[i] + h * k1[i];
      } else {
        drift(t, state, k1, {step, 0});
        for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * h * k1[i];
        drift(t + 0.5 * h, tmp, k2, {step, 1});
        for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * h * k2[i];
        drift(t + 0.5 * h, tmp, k3, {step, 2});
        for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + h * k3[i];
        drift(t + h, tmp, k4, {step, 3});
        for (std::size_t i = 0; i < n; ++i)
          next[i] = state[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
      if (check) check(next);
    } catch (const DomainViolation& violation) {
      result.blow_up = true;
      result.exit_time = grid.times[step + 1];
      result.blow_up_reason = violation.what();
      // The trajectory ends at the last valid state.
      if (!last_recorded) {
        result.times.push_back(t);
        result.states.push_back(state);
      }
      break;
    }
    state.swap(next);
    const bool record = (step + 1) % record_stride == 0 || step + 1 == steps;
    if (record) {
      result.times.push_back(grid.times[step + 1]);
      result.states.push_back(state);
    }
    last_recorded = record;
  }
  return result;
}

}  // namespace mwlab
