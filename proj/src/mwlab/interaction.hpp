// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mwlab/integrator.hpp"
#include "mwlab/kernels.hpp"
#include "mwlab/rng.hpp"

namespace mwlab {

// Non-owning view of K atoms in label x opinion space, optionally weighted.
// Empty weights mean uniform weights 1/K.
struct AtomView {
  std::size_t count = 0;
  std::size_t label_dim = 1;
  std::size_t opinion_dim = 1;
  ConstVec labels;
  ConstVec opinions;
  ConstVec weights;

  AgentRef agent(std::size_t i) const {
    return {labels.subspan(i * label_dim, label_dim), opinions.subspan(i * opinion_dim, opinion_dim)};
  }
};

enum class RhsKind { exact, monte_carlo, closed_form };

// How the m-fold tuple average is evaluated.
//   exact:       enumerate all K^m tuples (bounded by EngineLimits).
//   monte_carlo: S i.i.d. tuples per head, unbiased.
//   closed_form: statistic kernels whose head map is at most quadratic in the
//                statistic; exact in exact arithmetic, O(K) per call.
struct RhsMode {
  RhsKind kind = RhsKind::exact;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  static RhsMode exact() { return {}; }
  static RhsMode monte_carlo(std::size_t samples, std::uint64_t seed) {
    return {RhsKind::monte_carlo, samples, seed};
  }
  static RhsMode closed_form() { return {RhsKind::closed_form, 0, 0}; }

  std::string describe() const;
};

struct EngineLimits {
  std::uint64_t enumeration_cap = 10'000'000;
};

// True when every weight equals the first one (or there are none).
bool uniform_weights(ConstVec weights);

// For each head h, writes into out[h*d, (h+1)*d) the average of
// G^(m)(t, head_h, tail) over tails drawn from `tails` with product weights.
// Opinions of heads and tails must lie in the kernel's declared ball
// (DomainViolation otherwise). Monte-Carlo head h uses stream.split(h).
void tuple_average_drifts(const InteractionKernel& kernel, std::size_t m, double t,
                          const AtomView& heads, const AtomView& tails, const RhsMode& mode,
                          const RngStream& stream, MutVec out, const EngineLimits& limits = {});

// Weighted mean of the statistic map over the atoms (statistic kernels only).
std::vector<double> statistic_mean(const InteractionKernel& kernel, const AtomView& atoms);

// Checks every opinion of `atoms` against the kernel radius; `what` names the atoms in errors.
void check_atoms_in_ball(const InteractionKernel& kernel, const AtomView& atoms, const char* what);

// Integrates the weighted-atom flow: labels fixed, each opinion driven by the
// tuple average over the current atoms (Jacobi sweep: every drift reads the
// state at the start of the stage). Monte-Carlo stage (step, stage) uses
// RngStream(mode.seed).split(step, stage). The initial opinions must lie in
// the kernel ball; leaving it later truncates the flow with blow_up set.
FlowResult flow_atoms(const InteractionKernel& kernel, std::size_t m, std::size_t label_dim,
                      std::size_t opinion_dim, ConstVec labels, std::vector<double> opinions,
                      ConstVec weights, const TimeGrid& grid, Scheme scheme, const RhsMode& mode,
                      const EngineLimits& limits, std::size_t record_stride);

}  // namespace mwlab
