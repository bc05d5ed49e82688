// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mwlab/integrator.hpp"
#include "mwlab/interaction.hpp"
#include "mwlab/measures.hpp"

namespace mwlab {

// Snapshots of an N-agent run. Labels are stored once since they never move.
struct Trajectory {
  std::size_t label_dim = 1;
  std::size_t opinion_dim = 1;
  std::vector<double> labels;
  std::vector<double> times;
  std::vector<std::vector<double>> opinions;  // one block per recorded time
  bool blow_up = false;
  double exit_time = 0.0;
  std::string blow_up_reason;

  std::size_t size() const { return times.size(); }
  ParticleEnsemble snapshot(std::size_t k) const;
  // Index of the recorded time equal to t up to 1e-9 relative; nullopt otherwise.
  std::optional<std::size_t> find_time(double t) const;
};

struct IntegrateOptions {
  std::size_t record_stride = 1;
  EngineLimits limits;
};

// drift_i = N^-m sum over all (j_1..j_m) in {1..N}^m of G(t, agent_i, agents_j).
// Repeated indices and j = i are included. CapacityError above the cap.
std::vector<double> rhs_exact(const ParticleEnsemble& ensemble, const InteractionKernel& kernel,
                              std::size_t m, double t, const EngineLimits& limits = {});

// Average over `samples` uniform tuples per agent; agent i draws from stream.split(i).
std::vector<double> rhs_monte_carlo(const ParticleEnsemble& ensemble,
                                    const InteractionKernel& kernel, std::size_t m, double t,
                                    std::size_t samples, const RngStream& stream);

// Dispatches on mode; Monte-Carlo draws from RngStream(mode.seed).
std::vector<double> rhs(const ParticleEnsemble& ensemble, const InteractionKernel& kernel,
                        std::size_t m, double t, const RhsMode& mode,
                        const EngineLimits& limits = {});

// Fixed-step integration of the labelled system over `grid`.
Trajectory integrate(const ParticleEnsemble& initial, const InteractionKernel& kernel,
                     std::size_t m, const TimeGrid& grid, Scheme scheme, const RhsMode& mode,
                     const IntegrateOptions& options = {});

}  // namespace mwlab
