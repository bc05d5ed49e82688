// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mwlab/measures.hpp"
#include "mwlab/particles.hpp"
#include "mwlab/transport.hpp"

namespace mwlab {

// R independent N-agent runs started from i.i.d. f0 data: samples of the
// N-particle law at the recorded times.
struct LiouvilleEnsemble {
  std::size_t agents = 0;  // N
  std::uint64_t master_seed = 0;
  std::vector<Trajectory> runs;
  std::size_t blown_up_runs = 0;

  std::size_t size() const { return runs.size(); }
};

struct EnsembleOptions {
  std::size_t record_stride = 1;
  EngineLimits limits;
};

// Run r draws its initial ensemble from RngStream(master_seed).split(r, 0) and,
// in Monte-Carlo mode, its tuple seed from RngStream(master_seed).split(r, 1).
LiouvilleEnsemble sample_liouville_ensemble(const InitialDatumSpec& spec, std::size_t agents,
                                            std::size_t runs, const InteractionKernel& kernel,
                                            std::size_t m, const TimeGrid& grid, Scheme scheme,
                                            const RhsMode& mode, std::uint64_t master_seed,
                                            const EnsembleOptions& options = {});

struct SymmetrizeOptions {
  // Test hooks: skip the random permutation, or relabel every run by a fixed
  // permutation of {0..N-1} before sampling.
  bool identity = false;
  std::vector<std::size_t> relabel;
};

// One uniform permutation per run (run r uses stream.split(r)); emits the
// first k permuted agents at time t as one point of (label x opinion)^k.
// DomainError if t is not a recorded time of every run or k is not in [1, N].
PointCloud symmetrized_marginal_samples(const LiouvilleEnsemble& ensemble, double t, std::size_t k,
                                        const RngStream& stream,
                                        const SymmetrizeOptions& options = {});

using LabelFunction = std::function<double(ConstVec label)>;

// (1/R) sum_r (1/N) sum_i phi(x_i) xi_i(t), one value per opinion component.
std::vector<double> first_moment_pairing(const LiouvilleEnsemble& ensemble, double t,
                                         const LabelFunction& phi);

}  // namespace mwlab
