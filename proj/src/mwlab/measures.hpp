// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "mwlab/interaction.hpp"
#include "mwlab/rng.hpp"

namespace mwlab {

// N labelled agents. Labels are row-major N x label_dim, opinions N x opinion_dim.
struct ParticleEnsemble {
  std::size_t label_dim = 1;
  std::size_t opinion_dim = 1;
  std::vector<double> labels;
  std::vector<double> opinions;
  double time = 0.0;

  std::size_t size() const { return label_dim == 0 ? 0 : labels.size() / label_dim; }
  ConstVec label(std::size_t i) const { return ConstVec(labels).subspan(i * label_dim, label_dim); }
  ConstVec opinion(std::size_t i) const {
    return ConstVec(opinions).subspan(i * opinion_dim, opinion_dim);
  }
  AtomView view() const { return {size(), label_dim, opinion_dim, labels, opinions, {}}; }
  // N >= 1 and consistent array lengths; DomainError otherwise.
  void validate() const;
};

// Atoms in label x opinion space with nonnegative weights summing to one.
struct WeightedMeasure {
  std::size_t label_dim = 1;
  std::size_t opinion_dim = 1;
  std::vector<double> labels;
  std::vector<double> opinions;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  ConstVec label(std::size_t i) const { return ConstVec(labels).subspan(i * label_dim, label_dim); }
  ConstVec opinion(std::size_t i) const {
    return ConstVec(opinions).subspan(i * opinion_dim, opinion_dim);
  }
  AtomView view() const { return {size(), label_dim, opinion_dim, labels, opinions, weights}; }
  void validate() const;
};

// A probability measure on the label set, given by atoms and weights.
struct LabelMeasure {
  std::size_t dim = 1;
  std::vector<double> atoms;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  ConstVec atom(std::size_t i) const { return ConstVec(atoms).subspan(i * dim, dim); }
  void validate() const;
};

struct UniformBoxLabels {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct DiscreteLabels {
  std::size_t dim = 1;
  std::vector<double> points;   // row-major
  std::vector<double> weights;  // empty = uniform
};

using LabelLaw = std::variant<UniformBoxLabels, DiscreteLabels>;

// Lipschitz opinion profile y0(x) for monokinetic data.
struct OpinionProfile {
  enum class Kind { constant, affine, sinusoidal, clamped };
  Kind kind = Kind::constant;
  std::vector<double> value;  // constant: the opinion vector
  double intercept = 0.0;     // affine / clamped
  std::vector<double> slope;  // affine / clamped, one entry per label coordinate
  double offset = 0.0;        // sinusoidal: offset + amplitude sin(2 pi frequency x_0 + phase)
  double amplitude = 0.0;
  double frequency = 1.0;
  double phase = 0.0;
  double lower = 0.0;  // clamped range
  double upper = 0.0;

  std::size_t dim() const { return kind == Kind::constant ? value.size() : 1; }
  void evaluate(ConstVec label, MutVec out) const;
  double lipschitz() const;
  std::string describe() const;
};

struct Monokinetic {
  OpinionProfile profile;
};
struct UniformBallOpinions {
  std::vector<double> center;
  double radius = 1.0;
};
struct TruncatedGaussianOpinions {
  std::vector<double> mean;
  double stddev = 1.0;
  double radius = 1.0;  // truncation radius around the mean
};

using OpinionLaw = std::variant<Monokinetic, UniformBallOpinions, TruncatedGaussianOpinions>;

// f0 on label x opinion space: a label law and an opinion law given the label.
struct InitialDatumSpec {
  LabelLaw labels;
  OpinionLaw opinions;

  std::size_t label_dim() const;
  std::size_t opinion_dim() const;
  bool monokinetic() const { return std::holds_alternative<Monokinetic>(opinions); }
  const OpinionProfile* profile() const {
    const auto* mk = std::get_if<Monokinetic>(&opinions);
    return mk ? &mk->profile : nullptr;
  }
  // ConfigError on inconsistent descriptors.
  void validate() const;
  std::string describe() const;
};

// N i.i.d. draws from f0, label then opinion per agent, from one stream.
ParticleEnsemble sample_initial(const InitialDatumSpec& spec, std::size_t count, RngStream& stream);

// Uniform atoms 1/N at the agents; repeated points stay separate atoms.
WeightedMeasure empirical_measure(const ParticleEnsemble& ensemble);

// sum_k w_k |atom_k|^z with |.| Euclidean on the concatenated (label, opinion).
double moment_z(const WeightedMeasure& measure, double z);

// Quadrature nodes for a label law: the midpoint grid with n^dim nodes,
// n = floor(J^(1/dim)), for boxes; the atoms themselves for discrete laws.
LabelMeasure discretize_labels(const LabelLaw& law, std::size_t node_budget);

// Monokinetic f0 restricted to label nodes: atoms (x_j, y0(x_j)), weights nu_j.
WeightedMeasure monokinetic_measure(const LabelMeasure& nodes, const OpinionProfile& profile);

// Surrogate for f0 with about `budget` atoms: the monokinetic quadrature when
// f0 is monokinetic, otherwise `budget` i.i.d. draws with uniform weights.
WeightedMeasure reference_measure(const InitialDatumSpec& spec, std::size_t budget,
                                  RngStream& stream);

// Uniform-weight measure with the given atoms of `measure` (indices may repeat).
WeightedMeasure select_atoms(const WeightedMeasure& measure, const std::vector<std::size_t>& indices);

ParticleEnsemble ensemble_from_measure(const WeightedMeasure& measure, double time = 0.0);

}  // namespace mwlab
