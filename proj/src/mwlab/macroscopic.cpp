// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/macroscopic.hpp"

#include <cmath>

#include "mwlab/error.hpp"
#include "mwlab/parallel.hpp"

namespace mwlab {
namespace {

OpinionTrajectory from_flow(const LabelMeasure& nodes, std::size_t opinion_dim, FlowResult flow) {
  OpinionTrajectory traj;
  traj.nodes = nodes;
  traj.opinion_dim = opinion_dim;
  traj.times = std::move(flow.times);
  traj.values = std::move(flow.states);
  traj.blow_up = flow.blow_up;
  traj.exit_time = flow.exit_time;
  traj.blow_up_reason = std::move(flow.blow_up_reason);
  return traj;
}

const StatisticKernel& require_statistic(const InteractionKernel& kernel) {
  const auto* stat = kernel.statistic();
  if (stat == nullptr)
    throw UnsupportedOperation("kernel '" + kernel.name() +
                               "' is a black box; the m -> infinity limit needs a statistic kernel");
  return *stat;
}

void limit_drift(const StatisticKernel& stat, const InteractionKernel& kernel, double t,
                 const AtomView& atoms, MutVec out) {
  const std::vector<double> mean = statistic_mean(kernel, atoms);
  const std::size_t d = atoms.opinion_dim;
  parallel_for(atoms.count, [&](std::size_t j) {
    const AgentRef a = atoms.agent(j);
    stat.head_map(t, a.label, a.opinion, mean, out.subspan(j * d, d));
  });
}

}  // namespace

void OpinionField::validate() const {
  nodes.validate();
  if (opinion_dim == 0) throw DomainError("opinion field needs opinion_dim >= 1");
  if (values.size() != size() * opinion_dim)
    throw DomainError("opinion field values do not match the node count");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("opinion field has a non-finite value");
}

OpinionField field_from_profile(const LabelMeasure& nodes, const OpinionProfile& profile) {
  nodes.validate();
  OpinionField field;
  field.nodes = nodes;
  field.opinion_dim = profile.dim();
  field.values.resize(nodes.size() * field.opinion_dim);
  for (std::size_t j = 0; j < nodes.size(); ++j)
    profile.evaluate(nodes.atom(j),
                     MutVec(field.values).subspan(j * field.opinion_dim, field.opinion_dim));
  return field;
}

OpinionField OpinionTrajectory::field(std::size_t k) const {
  if (k >= size()) throw DomainError("opinion trajectory index out of range");
  OpinionField f;
  f.nodes = nodes;
  f.opinion_dim = opinion_dim;
  f.values = values[k];
  f.time = times[k];
  return f;
}

std::vector<double> opinion_rhs(const OpinionField& field, const InteractionKernel& kernel,
                                std::size_t m, const RhsMode& mode, double t,
                                const EngineLimits& limits) {
  field.validate();
  std::vector<double> out(field.values.size());
  const AtomView atoms = field.view();
  tuple_average_drifts(kernel, m, t, atoms, atoms, mode, RngStream(mode.seed), out, limits);
  return out;
}

OpinionTrajectory opinion_solve(const OpinionField& y0, const InteractionKernel& kernel,
                                std::size_t m, const TimeGrid& grid, Scheme scheme,
                                const RhsMode& mode, const EngineLimits& limits,
                                std::size_t record_stride) {
  y0.validate();
  const ConstVec weights =
      uniform_weights(y0.nodes.weights) ? ConstVec{} : ConstVec(y0.nodes.weights);
  FlowResult flow = flow_atoms(kernel, m, y0.nodes.dim, y0.opinion_dim, y0.nodes.atoms, y0.values,
                               weights, grid, scheme, mode, limits, record_stride);
  return from_flow(y0.nodes, y0.opinion_dim, std::move(flow));
}

std::vector<double> opinion_limit_rhs(const OpinionField& field, const InteractionKernel& kernel,
                                      double t) {
  const StatisticKernel& stat = require_statistic(kernel);
  field.validate();
  const AtomView atoms = field.view();
  check_atoms_in_ball(kernel, atoms, "node");
  std::vector<double> out(field.values.size());
  limit_drift(stat, kernel, t, atoms, out);
  return out;
}

OpinionTrajectory opinion_limit_solve(const OpinionField& y0, const InteractionKernel& kernel,
                                      const TimeGrid& grid, Scheme scheme,
                                      std::size_t record_stride) {
  const StatisticKernel& stat = require_statistic(kernel);
  y0.validate();
  grid.validate();
  const LabelMeasure& nodes = y0.nodes;
  const std::size_t d = y0.opinion_dim;
  const auto atoms_at = [&](ConstVec state) {
    return AtomView{nodes.size(), nodes.dim, d, nodes.atoms, state, nodes.weights};
  };
  check_atoms_in_ball(kernel, atoms_at(y0.values), "node");
  const DriftFn drift = [&](double t, ConstVec state, MutVec out, StageId) {
    limit_drift(stat, kernel, t, atoms_at(state), out);
  };
  const StateCheck check = [&](ConstVec state) {
    check_atoms_in_ball(kernel, atoms_at(state), "node");
  };
  return from_flow(nodes, d,
                   integrate_flow(y0.values, grid, scheme, drift, check, record_stride));
}

}  // namespace mwlab
