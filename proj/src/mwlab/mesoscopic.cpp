// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/mesoscopic.hpp"

#include "mwlab/error.hpp"

namespace mwlab {

std::vector<double> mean_field_force(const VlasovState& state, const InteractionKernel& kernel,
                                     std::size_t m, double t, ConstVec label, ConstVec opinion,
                                     const RhsMode& mode, const EngineLimits& limits) {
  const WeightedMeasure& f = state.measure;
  f.validate();
  if (label.size() != f.label_dim || opinion.size() != f.opinion_dim)
    throw DomainError("probe shape does not match the measure");
  const AtomView probe{1, f.label_dim, f.opinion_dim, label, opinion, {}};
  std::vector<double> out(f.opinion_dim);
  tuple_average_drifts(kernel, m, t, probe, f.view(), mode, RngStream(mode.seed), out, limits);
  return out;
}

VlasovSolution vlasov_solve(const WeightedMeasure& f0, const InteractionKernel& kernel,
                            std::size_t m, const TimeGrid& grid, Scheme scheme,
                            const RhsMode& mode, const EngineLimits& limits,
                            std::size_t record_stride) {
  f0.validate();
  // Exactly uniform weights take the unweighted path so that the flow is the
  // particle flow bit for bit.
  const ConstVec weights = uniform_weights(f0.weights) ? ConstVec{} : ConstVec(f0.weights);
  FlowResult flow = flow_atoms(kernel, m, f0.label_dim, f0.opinion_dim, f0.labels, f0.opinions,
                               weights, grid, scheme, mode, limits, record_stride);
  VlasovSolution sol;
  sol.states.reserve(flow.times.size());
  for (std::size_t k = 0; k < flow.times.size(); ++k) {
    VlasovState s;
    s.measure = f0;
    s.measure.opinions = std::move(flow.states[k]);
    s.time = flow.times[k];
    sol.states.push_back(std::move(s));
  }
  sol.blow_up = flow.blow_up;
  sol.exit_time = flow.exit_time;
  sol.blow_up_reason = std::move(flow.blow_up_reason);
  return sol;
}

}  // namespace mwlab
