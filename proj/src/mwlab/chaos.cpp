// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/chaos.hpp"

#include <algorithm>
#include <sstream>

#include "mwlab/error.hpp"
#include "mwlab/parallel.hpp"
#include "mwlab/summation.hpp"

namespace mwlab {
namespace {

std::size_t time_index(const Trajectory& run, double t) {
  const auto k = run.find_time(t);
  if (!k) {
    std::ostringstream msg;
    msg << "time " << t << " is not a recorded snapshot"
        << (run.blow_up ? " (run truncated by blow-up)" : "") << "; no interpolation";
    throw DomainError(msg.str());
  }
  return *k;
}

}  // namespace

LiouvilleEnsemble sample_liouville_ensemble(const InitialDatumSpec& spec, std::size_t agents,
                                            std::size_t runs, const InteractionKernel& kernel,
                                            std::size_t m, const TimeGrid& grid, Scheme scheme,
                                            const RhsMode& mode, std::uint64_t master_seed,
                                            const EnsembleOptions& options) {
  if (runs == 0) throw DomainError("Liouville ensemble needs at least one run");
  if (agents == 0) throw DomainError("Liouville ensemble needs N >= 1");
  spec.validate();
  LiouvilleEnsemble ens;
  ens.agents = agents;
  ens.master_seed = master_seed;
  ens.runs.resize(runs);
  const RngStream master(master_seed);
  parallel_for(runs, [&](std::size_t r) {
    RngStream init = master.split(r, 0);
    const ParticleEnsemble e0 = sample_initial(spec, agents, init);
    RhsMode run_mode = mode;
    if (mode.kind == RhsKind::monte_carlo) run_mode.seed = master.split(r, 1).next_u64();
    ens.runs[r] = integrate(e0, kernel, m, grid, scheme, run_mode,
                            {options.record_stride, options.limits});
  });
  ens.blown_up_runs = static_cast<std::size_t>(
      std::count_if(ens.runs.begin(), ens.runs.end(), [](const Trajectory& r) { return r.blow_up; }));
  return ens;
}

PointCloud symmetrized_marginal_samples(const LiouvilleEnsemble& ensemble, double t, std::size_t k,
                                        const RngStream& stream,
                                        const SymmetrizeOptions& options) {
  const std::size_t n = ensemble.agents;
  if (k == 0 || k > n) throw DomainError("marginal order k must lie in [1, N]");
  if (ensemble.runs.empty()) throw DomainError("empty Liouville ensemble");
  if (!options.relabel.empty()) {
    std::vector<std::size_t> sorted = options.relabel;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted.size() != n || sorted[i] != i)
        throw DomainError("relabel hook is not a permutation of the agents");
  }
  const std::size_t ld = ensemble.runs.front().label_dim;
  const std::size_t od = ensemble.runs.front().opinion_dim;
  PointCloud out;
  out.dim = k * (ld + od);
  out.coords.resize(ensemble.size() * out.dim);
  for (std::size_t r = 0; r < ensemble.size(); ++r) {
    const Trajectory& run = ensemble.runs[r];
    const std::vector<double>& state = run.opinions[time_index(run, t)];
    std::vector<std::size_t> pick(k);
    if (options.identity) {
      for (std::size_t a = 0; a < k; ++a) pick[a] = a;
    } else {
      RngStream rng = stream.split(r);
      pick = random_permutation_prefix(n, k, rng);
    }
    double* dst = &out.coords[r * out.dim];
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t i = options.relabel.empty() ? pick[a] : options.relabel[pick[a]];
      dst = std::copy_n(run.labels.begin() + static_cast<std::ptrdiff_t>(i * ld), ld, dst);
      dst = std::copy_n(state.begin() + static_cast<std::ptrdiff_t>(i * od), od, dst);
    }
  }
  return out;
}

std::vector<double> first_moment_pairing(const LiouvilleEnsemble& ensemble, double t,
                                         const LabelFunction& phi) {
  if (ensemble.runs.empty()) throw DomainError("empty Liouville ensemble");
  const std::size_t od = ensemble.runs.front().opinion_dim;
  const std::size_t ld = ensemble.runs.front().label_dim;
  PairwiseAccumulator over_runs(od);
  std::vector<double> run_mean(od), term(od);
  for (const Trajectory& run : ensemble.runs) {
    const std::vector<double>& state = run.opinions[time_index(run, t)];
    const std::size_t n = run.labels.size() / ld;
    PairwiseAccumulator over_agents(od);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = phi(ConstVec(run.labels).subspan(i * ld, ld));
      for (std::size_t c = 0; c < od; ++c) term[c] = w * state[i * od + c];
      over_agents.add(term);
    }
    over_agents.total(run_mean);
    for (double& v : run_mean) v /= static_cast<double>(n);
    over_runs.add(run_mean);
  }
  std::vector<double> out(od);
  over_runs.total(out);
  for (double& v : out) v /= static_cast<double>(ensemble.size());
  return out;
}

}  // namespace mwlab
