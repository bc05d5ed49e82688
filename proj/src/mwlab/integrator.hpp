// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mwlab/kernels.hpp"

namespace mwlab {

enum class Scheme { euler, rk4 };

std::string_view scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);  // ConfigError on unknown names

struct TimeGrid {
  std::vector<double> times;

  // n = ceil(T / dt) equal steps covering [0, T] with exact endpoints.
  static TimeGrid uniform(double horizon, double dt);
  std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
  double final_time() const { return times.back(); }
  // Throws DomainError unless nonempty and strictly increasing.
  void validate() const;
};

// Identifies one right-hand-side evaluation inside a run; Monte-Carlo
// drifts derive their random substream from it.
struct StageId {
  std::size_t step = 0;
  std::size_t stage = 0;
};

using DriftFn = std::function<void(double t, ConstVec state, MutVec out, StageId id)>;
// Throws DomainViolation when a state is outside the admissible region.
using StateCheck = std::function<void(ConstVec state)>;

struct FlowResult {
  std::vector<double> times;                // recorded grid times
  std::vector<std::vector<double>> states;  // one per recorded time
  bool blow_up = false;
  double exit_time = 0.0;                   // first grid time with an invalid state
  std::string blow_up_reason;
};

// Advances `initial` along the grid with a fixed-step one-step scheme.
// Records grid point 0, every `record_stride`-th point and the last point
// reached. A DomainViolation raised by the drift or the state check truncates
// the run with blow_up set instead of propagating.
FlowResult integrate_flow(std::vector<double> initial, const TimeGrid& grid, Scheme scheme,
                          const DriftFn& drift, const StateCheck& check,
                          std::size_t record_stride = 1);

}  // namespace mwlab
