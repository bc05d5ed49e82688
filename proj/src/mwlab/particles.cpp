// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/particles.hpp"

#include <algorithm>
#include <cmath>

#include "mwlab/error.hpp"

namespace mwlab {

ParticleEnsemble Trajectory::snapshot(std::size_t k) const {
  if (k >= size()) throw DomainError("trajectory snapshot index out of range");
  ParticleEnsemble e;
  e.label_dim = label_dim;
  e.opinion_dim = opinion_dim;
  e.labels = labels;
  e.opinions = opinions[k];
  e.time = times[k];
  return e;
}

std::optional<std::size_t> Trajectory::find_time(double t) const {
  for (std::size_t k = 0; k < times.size(); ++k)
    if (std::abs(times[k] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return k;
  return std::nullopt;
}

std::vector<double> rhs_exact(const ParticleEnsemble& ensemble, const InteractionKernel& kernel,
                              std::size_t m, double t, const EngineLimits& limits) {
  return rhs(ensemble, kernel, m, t, RhsMode::exact(), limits);
}

std::vector<double> rhs_monte_carlo(const ParticleEnsemble& ensemble,
                                    const InteractionKernel& kernel, std::size_t m, double t,
                                    std::size_t samples, const RngStream& stream) {
  ensemble.validate();
  std::vector<double> out(ensemble.size() * ensemble.opinion_dim);
  tuple_average_drifts(kernel, m, t, ensemble.view(), ensemble.view(),
                       RhsMode::monte_carlo(samples, 0), stream, out);
  return out;
}

std::vector<double> rhs(const ParticleEnsemble& ensemble, const InteractionKernel& kernel,
                        std::size_t m, double t, const RhsMode& mode, const EngineLimits& limits) {
  ensemble.validate();
  std::vector<double> out(ensemble.size() * ensemble.opinion_dim);
  tuple_average_drifts(kernel, m, t, ensemble.view(), ensemble.view(), mode, RngStream(mode.seed),
                       out, limits);
  return out;
}

Trajectory integrate(const ParticleEnsemble& initial, const InteractionKernel& kernel,
                     std::size_t m, const TimeGrid& grid, Scheme scheme, const RhsMode& mode,
                     const IntegrateOptions& options) {
  initial.validate();
  FlowResult flow = flow_atoms(kernel, m, initial.label_dim, initial.opinion_dim, initial.labels,
                               initial.opinions, {}, grid, scheme, mode, options.limits,
                               options.record_stride);
  Trajectory traj;
  traj.label_dim = initial.label_dim;
  traj.opinion_dim = initial.opinion_dim;
  traj.labels = initial.labels;
  traj.times = std::move(flow.times);
  traj.opinions = std::move(flow.states);
  traj.blow_up = flow.blow_up;
  traj.exit_time = flow.exit_time;
  traj.blow_up_reason = std::move(flow.blow_up_reason);
  return traj;
}

}  // namespace mwlab
