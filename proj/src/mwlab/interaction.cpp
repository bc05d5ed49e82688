// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mwlab/error.hpp"
#include "mwlab/parallel.hpp"
#include "mwlab/summation.hpp"

namespace mwlab {
namespace {

// K^m if it does not exceed cap, otherwise nullopt-like sentinel 0.
std::uint64_t tuple_count(std::size_t atoms, std::size_t m, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (atoms != 0 && total > cap / atoms) return 0;
    total *= atoms;
  }
  return total <= cap ? total : 0;
}

std::vector<double> expanded_weights(const AtomView& atoms) {
  if (!atoms.weights.empty()) return {atoms.weights.begin(), atoms.weights.end()};
  return std::vector<double>(atoms.count, 1.0 / static_cast<double>(atoms.count));
}

// phi evaluated at every atom, row-major K x s.
std::vector<double> statistic_table(const StatisticKernel& s, const AtomView& atoms) {
  std::vector<double> table(atoms.count * s.statistic_dim);
  for (std::size_t j = 0; j < atoms.count; ++j) {
    const AgentRef a = atoms.agent(j);
    s.statistic_map(a.label, a.opinion, MutVec(table).subspan(j * s.statistic_dim, s.statistic_dim));
  }
  return table;
}

void drifts_exact(const InteractionKernel& kernel, std::size_t m, double t, const AtomView& heads,
                  const AtomView& tails, MutVec out, const EngineLimits& limits) {
  const std::uint64_t tuples = tuple_count(tails.count, m, limits.enumeration_cap);
  if (tuples == 0) {
    std::ostringstream msg;
    msg << "exact tuple enumeration needs " << tails.count << "^" << m
        << " kernel calls per head, above the cap of " << limits.enumeration_cap
        << "; use the Monte-Carlo rhs mode (or closed_form for statistic kernels)";
    throw CapacityError(msg.str());
  }
  const std::size_t d = kernel.opinion_dim();
  const auto* stat = kernel.statistic();
  if (stat != nullptr && stat->affine_head) {
    const std::vector<double> mean = statistic_mean(kernel, tails);
    parallel_for(heads.count, [&](std::size_t h) {
      const AgentRef head = heads.agent(h);
      stat->head_map(t, head.label, head.opinion, mean, out.subspan(h * d, d));
    });
    return;
  }
  const bool uniform = uniform_weights(tails.weights);
  const std::vector<double> weights = expanded_weights(tails);
  const std::vector<double> phi = stat ? statistic_table(*stat, tails) : std::vector<double>{};
  const std::size_t sd = stat ? stat->statistic_dim : 0;
  const double md = static_cast<double>(m);

  parallel_for(heads.count, [&](std::size_t h) {
    const AgentRef head = heads.agent(h);
    PairwiseAccumulator acc(d);
    std::vector<std::size_t> index(m, 0);
    std::vector<double> value(d), term(d), mean(sd), scratch(sd * (m + 1));
    std::vector<AgentRef> tail(stat ? 0 : m);

    for (std::uint64_t n = 0; n < tuples; ++n) {
      if (stat != nullptr) {
        std::fill(mean.begin(), mean.end(), 0.0);
        const double* pivot = &phi[index[0] * sd];
        for (std::size_t k = 1; k < m; ++k) {
          const double* p = &phi[index[k] * sd];
          for (std::size_t c = 0; c < sd; ++c) mean[c] += p[c] - pivot[c];
        }
        for (std::size_t c = 0; c < sd; ++c) mean[c] = pivot[c] + mean[c] / md;
        stat->head_map(t, head.label, head.opinion, mean, value);
      } else {
        for (std::size_t k = 0; k < m; ++k) tail[k] = tails.agent(index[k]);
        kernel.evaluate_unchecked(t, head, tail, value, scratch);
      }
      if (uniform) {
        acc.add(value);
      } else {
        double w = 1.0;
        for (std::size_t k = 0; k < m; ++k) w *= weights[index[k]];
        for (std::size_t c = 0; c < d; ++c) term[c] = w * value[c];
        acc.add(term);
      }
      // Lexicographic odometer, last position fastest.
      for (std::size_t k = m; k-- > 0;) {
        if (++index[k] < tails.count) break;
        index[k] = 0;
      }
    }
    MutVec dst = out.subspan(h * d, d);
    acc.total(dst);
    if (uniform) {
      const auto scale = static_cast<double>(tuples);
      for (double& v : dst) v /= scale;
    }
  });
}

void drifts_monte_carlo(const InteractionKernel& kernel, std::size_t m, double t,
                        const AtomView& heads, const AtomView& tails, std::size_t samples,
                        const RngStream& stream, MutVec out) {
  if (samples == 0) throw DomainError("Monte-Carlo rhs needs at least one sample");
  const std::size_t d = kernel.opinion_dim();
  const AtomSampler sampler(tails.count, tails.weights);
  const std::size_t sd = kernel.statistic() ? kernel.statistic()->statistic_dim : 0;

  parallel_for(heads.count, [&](std::size_t h) {
    RngStream rng = stream.split(h);
    const AgentRef head = heads.agent(h);
    PairwiseAccumulator acc(d);
    std::vector<AgentRef> tail(m);
    std::vector<double> value(d), scratch(sd * (m + 1));
    for (std::size_t s = 0; s < samples; ++s) {
      for (std::size_t k = 0; k < m; ++k) tail[k] = tails.agent(sampler(rng));
      kernel.evaluate_unchecked(t, head, tail, value, scratch);
      acc.add(value);
    }
    MutVec dst = out.subspan(h * d, d);
    acc.total(dst);
    for (double& v : dst) v /= static_cast<double>(samples);
  });
}

void drifts_closed_form(const InteractionKernel& kernel, std::size_t m, double t,
                        const AtomView& heads, const AtomView& tails, MutVec out) {
  const auto* stat = kernel.statistic();
  if (stat == nullptr || !stat->expected_head)
    throw UnsupportedOperation("kernel '" + kernel.name() +
                               "' has no closed-form tuple average; use exact or Monte-Carlo mode");
  const std::size_t d = kernel.opinion_dim();
  const std::size_t sd = stat->statistic_dim;
  const std::vector<double> mean = statistic_mean(kernel, tails);

  // Covariance of a single draw; the tuple mean of m i.i.d. draws has cov / m.
  const bool uniform = uniform_weights(tails.weights);
  const std::vector<double> phi = statistic_table(*stat, tails);
  PairwiseAccumulator acc(sd * sd);
  std::vector<double> term(sd * sd);
  for (std::size_t j = 0; j < tails.count; ++j) {
    const double w = uniform ? 1.0 : tails.weights[j];
    for (std::size_t a = 0; a < sd; ++a)
      for (std::size_t b = 0; b < sd; ++b)
        term[a * sd + b] = w * (phi[j * sd + a] - mean[a]) * (phi[j * sd + b] - mean[b]);
    acc.add(term);
  }
  std::vector<double> cov(sd * sd);
  acc.total(cov);
  const double scale = uniform ? static_cast<double>(tails.count) * static_cast<double>(m)
                               : static_cast<double>(m);
  for (double& v : cov) v /= scale;

  parallel_for(heads.count, [&](std::size_t h) {
    const AgentRef head = heads.agent(h);
    stat->expected_head(t, head.label, head.opinion, mean, cov, out.subspan(h * d, d));
  });
}

}  // namespace

std::string RhsMode::describe() const {
  switch (kind) {
    case RhsKind::exact:
      return "exact";
    case RhsKind::closed_form:
      return "closed_form";
    case RhsKind::monte_carlo:
      return "mc(S=" + std::to_string(samples) + ",seed=" + std::to_string(seed) + ")";
  }
  return "unknown";
}

bool uniform_weights(ConstVec weights) {
  return std::all_of(weights.begin(), weights.end(), [&](double w) { return w == weights.front(); });
}

void check_atoms_in_ball(const InteractionKernel& kernel, const AtomView& atoms, const char* what) {
  for (std::size_t j = 0; j < atoms.count; ++j)
    kernel.check_opinion(atoms.opinions.subspan(j * atoms.opinion_dim, atoms.opinion_dim),
                         std::string(what) + " " + std::to_string(j));
}

std::vector<double> statistic_mean(const InteractionKernel& kernel, const AtomView& atoms) {
  const auto* stat = kernel.statistic();
  if (stat == nullptr)
    throw UnsupportedOperation("kernel '" + kernel.name() + "' has no statistic map");
  if (atoms.count == 0) throw DomainError("statistic mean of an empty atom set");
  const std::size_t sd = stat->statistic_dim;
  const bool uniform = uniform_weights(atoms.weights);
  const std::vector<double> phi = statistic_table(*stat, atoms);
  PairwiseAccumulator acc(sd);
  std::vector<double> term(sd);
  for (std::size_t j = 0; j < atoms.count; ++j) {
    const double w = uniform ? 1.0 : atoms.weights[j];
    for (std::size_t c = 0; c < sd; ++c) term[c] = w * (phi[j * sd + c] - phi[c]);
    acc.add(term);
  }
  std::vector<double> mean(sd);
  acc.total(mean);
  for (std::size_t c = 0; c < sd; ++c)
    mean[c] = phi[c] + (uniform ? mean[c] / static_cast<double>(atoms.count) : mean[c]);
  return mean;
}

void tuple_average_drifts(const InteractionKernel& kernel, std::size_t m, double t,
                          const AtomView& heads, const AtomView& tails, const RhsMode& mode,
                          const RngStream& stream, MutVec out, const EngineLimits& limits) {
  if (m == 0) throw DomainError("interaction order m must be >= 1");
  if (tails.count == 0) throw DomainError("tuple average over an empty atom set");
  const std::size_t d = kernel.opinion_dim();
  if (heads.opinion_dim != d || tails.opinion_dim != d)
    throw DomainError("atom opinion dimension differs from the kernel opinion dimension");
  if (heads.label_dim != tails.label_dim) throw DomainError("head and tail label dimensions differ");
  if (out.size() != heads.count * d) throw DomainError("drift output has the wrong size");
  if (!tails.weights.empty() && tails.weights.size() != tails.count)
    throw DomainError("weight vector length differs from the atom count");
  check_atoms_in_ball(kernel, heads, "head");
  check_atoms_in_ball(kernel, tails, "atom");

  switch (mode.kind) {
    case RhsKind::exact:
      drifts_exact(kernel, m, t, heads, tails, out, limits);
      return;
    case RhsKind::monte_carlo:
      drifts_monte_carlo(kernel, m, t, heads, tails, mode.samples, stream, out);
      return;
    case RhsKind::closed_form:
      drifts_closed_form(kernel, m, t, heads, tails, out);
      return;
  }
}

FlowResult flow_atoms(const InteractionKernel& kernel, std::size_t m, std::size_t label_dim,
                      std::size_t opinion_dim, ConstVec labels, std::vector<double> opinions,
                      ConstVec weights, const TimeGrid& grid, Scheme scheme, const RhsMode& mode,
                      const EngineLimits& limits, std::size_t record_stride) {
  grid.validate();
  const std::size_t count = opinions.size() / opinion_dim;
  if (labels.size() != count * label_dim) throw DomainError("label and opinion counts differ");
  check_atoms_in_ball(kernel, {count, label_dim, opinion_dim, labels, opinions, weights}, "atom");
  const RngStream master(mode.seed);

  const DriftFn drift = [&](double t, ConstVec state, MutVec out, StageId id) {
    const AtomView atoms{count, label_dim, opinion_dim, labels, state, weights};
    tuple_average_drifts(kernel, m, t, atoms, atoms, mode, master.split(id.step, id.stage), out,
                         limits);
  };
  const StateCheck check = [&](ConstVec state) {
    check_atoms_in_ball(kernel, {count, label_dim, opinion_dim, labels, state, weights}, "atom");
  };
  return integrate_flow(std::move(opinions), grid, scheme, drift, check, record_stride);
}

}  // namespace mwlab
