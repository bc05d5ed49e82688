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

// Opinion values y_j on fixed label nodes x_j carrying the weights nu_j.
struct OpinionField {
  LabelMeasure nodes;
  std::size_t opinion_dim = 1;
  std::vector<double> values;  // J x opinion_dim
  double time = 0.0;

  std::size_t size() const { return nodes.size(); }
  ConstVec value(std::size_t j) const {
    return ConstVec(values).subspan(j * opinion_dim, opinion_dim);
  }
  AtomView view() const {
    return {size(), nodes.dim, opinion_dim, nodes.atoms, values, nodes.weights};
  }
  void validate() const;
};

// y0 evaluated on the nodes.
OpinionField field_from_profile(const LabelMeasure& nodes, const OpinionProfile& profile);

struct OpinionTrajectory {
  LabelMeasure nodes;
  std::size_t opinion_dim = 1;
  std::vector<double> times;
  std::vector<std::vector<double>> values;
  bool blow_up = false;
  double exit_time = 0.0;
  std::string blow_up_reason;

  std::size_t size() const { return times.size(); }
  OpinionField field(std::size_t k) const;
};

// rhs_j = integral of G^(m)(t, x_j, y_j, tail) against (nu o (id, y))^(x m).
std::vector<double> opinion_rhs(const OpinionField& field, const InteractionKernel& kernel,
                                std::size_t m, const RhsMode& mode, double t,
                                const EngineLimits& limits = {});

OpinionTrajectory opinion_solve(const OpinionField& y0, const InteractionKernel& kernel,
                                std::size_t m, const TimeGrid& grid, Scheme scheme,
                                const RhsMode& mode, const EngineLimits& limits = {},
                                std::size_t record_stride = 1);

// rhs_j = g(t, x_j, y_j, sum_k nu_k phi(x_k, y_k)). Statistic kernels only.
std::vector<double> opinion_limit_rhs(const OpinionField& field, const InteractionKernel& kernel,
                                      double t);

OpinionTrajectory opinion_limit_solve(const OpinionField& y0, const InteractionKernel& kernel,
                                      const TimeGrid& grid, Scheme scheme,
                                      std::size_t record_stride = 1);

}  // namespace mwlab
