// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mwlab/integrator.hpp"
#include "mwlab/interaction.hpp"
#include "mwlab/measures.hpp"

namespace mwlab {

// A pushed-forward weighted sample of the Vlasov solution at one time.
struct VlasovState {
  WeightedMeasure measure;
  double time = 0.0;
};

struct VlasovSolution {
  std::vector<VlasovState> states;  // one per recorded grid time
  bool blow_up = false;
  double exit_time = 0.0;
  std::string blow_up_reason;
};

// Order-m mean-field force of the state at the probe (x, xi): the average of
// G^(m)(t, (x, xi), tail) over tails drawn from the weighted atoms.
// Monte-Carlo mode draws from RngStream(mode.seed).
std::vector<double> mean_field_force(const VlasovState& state, const InteractionKernel& kernel,
                                     std::size_t m, double t, ConstVec label, ConstVec opinion,
                                     const RhsMode& mode, const EngineLimits& limits = {});

// Transports every atom along xdot = 0, xidot = mean-field force of the current
// state. Weights never change. With uniform weights this is the particle
// system itself, bit for bit.
VlasovSolution vlasov_solve(const WeightedMeasure& f0, const InteractionKernel& kernel,
                            std::size_t m, const TimeGrid& grid, Scheme scheme,
                            const RhsMode& mode, const EngineLimits& limits = {},
                            std::size_t record_stride = 1);

}  // namespace mwlab
