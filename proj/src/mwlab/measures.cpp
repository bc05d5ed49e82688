// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "mwlab/error.hpp"
#include "mwlab/summation.hpp"

namespace mwlab {
namespace {

void check_weights(const std::vector<double>& weights, const char* what) {
  if (weights.empty()) throw DomainError(std::string(what) + " has no atoms");
  for (double w : weights)
    if (!(w >= 0.0)) throw DomainError(std::string(what) + " has a negative or NaN weight");
  const double total = pairwise_sum(weights);
  if (std::abs(total - 1.0) > 1e-12)
    throw DomainError(std::string(what) + " weights sum to " + std::to_string(total) + ", not 1");
}

std::vector<double> uniform_weight_vector(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

}  // namespace

void ParticleEnsemble::validate() const {
  if (label_dim == 0 || opinion_dim == 0) throw DomainError("ensemble has a zero dimension");
  if (labels.size() % label_dim != 0 || opinions.size() % opinion_dim != 0)
    throw DomainError("ensemble arrays are not a whole number of points");
  if (size() == 0) throw DomainError("ensemble needs N >= 1 agents");
  if (opinions.size() / opinion_dim != size())
    throw DomainError("label and opinion arrays describe different agent counts");
}

void WeightedMeasure::validate() const {
  if (label_dim == 0 || opinion_dim == 0) throw DomainError("measure has a zero dimension");
  if (labels.size() != size() * label_dim || opinions.size() != size() * opinion_dim)
    throw DomainError("measure arrays disagree with the weight count");
  check_weights(weights, "measure");
}

void LabelMeasure::validate() const {
  if (dim == 0 || atoms.size() != size() * dim) throw DomainError("label measure arrays disagree");
  check_weights(weights, "label measure");
}

void OpinionProfile::evaluate(ConstVec label, MutVec out) const {
  switch (kind) {
    case Kind::constant:
      std::copy(value.begin(), value.end(), out.begin());
      return;
    case Kind::affine:
    case Kind::clamped: {
      double y = intercept;
      for (std::size_t k = 0; k < slope.size() && k < label.size(); ++k) y += slope[k] * label[k];
      out[0] = kind == Kind::clamped ? std::clamp(y, lower, upper) : y;
      return;
    }
    case Kind::sinusoidal:
      out[0] = offset + amplitude * std::sin(2.0 * std::numbers::pi * frequency * label[0] + phase);
      return;
  }
}

double OpinionProfile::lipschitz() const {
  switch (kind) {
    case Kind::constant:
      return 0.0;
    case Kind::affine:
    case Kind::clamped: {
      double s = 0.0;
      for (double v : slope) s += v * v;
      return std::sqrt(s);
    }
    case Kind::sinusoidal:
      return 2.0 * std::numbers::pi * std::abs(amplitude * frequency);
  }
  return 0.0;
}

std::string OpinionProfile::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::constant:
      os << "constant";
      break;
    case Kind::affine:
      os << "affine(intercept=" << intercept << ")";
      break;
    case Kind::sinusoidal:
      os << "sinusoidal(offset=" << offset << ",amplitude=" << amplitude << ",frequency=" << frequency
         << ",phase=" << phase << ")";
      break;
    case Kind::clamped:
      os << "clamped(intercept=" << intercept << ",lower=" << lower << ",upper=" << upper << ")";
      break;
  }
  os << " lip=" << lipschitz();
  return os.str();
}

std::size_t InitialDatumSpec::label_dim() const {
  if (const auto* box = std::get_if<UniformBoxLabels>(&labels)) return box->lower.size();
  return std::get<DiscreteLabels>(labels).dim;
}

std::size_t InitialDatumSpec::opinion_dim() const {
  if (const auto* mk = std::get_if<Monokinetic>(&opinions)) return mk->profile.dim();
  if (const auto* ball = std::get_if<UniformBallOpinions>(&opinions)) return ball->center.size();
  return std::get<TruncatedGaussianOpinions>(opinions).mean.size();
}

void InitialDatumSpec::validate() const {
  if (const auto* box = std::get_if<UniformBoxLabels>(&labels)) {
    if (box->lower.empty() || box->lower.size() != box->upper.size())
      throw ConfigError("uniform label box needs lower/upper of equal, nonzero length");
    for (std::size_t k = 0; k < box->lower.size(); ++k)
      if (!(box->lower[k] < box->upper[k])) throw ConfigError("uniform label box has lower >= upper");
  } else {
    const auto& discrete = std::get<DiscreteLabels>(labels);
    if (discrete.dim == 0 || discrete.points.empty() || discrete.points.size() % discrete.dim != 0)
      throw ConfigError("discrete label law needs a nonempty list of points");
    const std::size_t n = discrete.points.size() / discrete.dim;
    if (!discrete.weights.empty()) {
      if (discrete.weights.size() != n) throw ConfigError("discrete label weights/points mismatch");
      try {
        check_weights(discrete.weights, "discrete label law");
      } catch (const DomainError& e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (const auto* mk = std::get_if<Monokinetic>(&opinions)) {
    const auto& p = mk->profile;
    if (p.kind == OpinionProfile::Kind::constant && p.value.empty())
      throw ConfigError("constant opinion profile needs a value");
    if ((p.kind == OpinionProfile::Kind::affine || p.kind == OpinionProfile::Kind::clamped) &&
        p.slope.size() != label_dim())
      throw ConfigError("affine opinion profile needs one slope per label coordinate");
    if (p.kind == OpinionProfile::Kind::clamped && !(p.lower <= p.upper))
      throw ConfigError("clamped opinion profile needs lower <= upper");
  } else if (const auto* ball = std::get_if<UniformBallOpinions>(&opinions)) {
    if (ball->center.empty() || !(ball->radius > 0.0))
      throw ConfigError("uniform opinion ball needs a center and a positive radius");
  } else {
    const auto& g = std::get<TruncatedGaussianOpinions>(opinions);
    if (g.mean.empty() || !(g.stddev > 0.0) || !(g.radius > 0.0))
      throw ConfigError("truncated Gaussian needs a mean, stddev > 0 and radius > 0");
  }
}

std::string InitialDatumSpec::describe() const {
  std::ostringstream os;
  if (std::holds_alternative<UniformBoxLabels>(labels))
    os << "labels=uniform_box";
  else
    os << "labels=discrete(" << std::get<DiscreteLabels>(labels).points.size() / label_dim() << ")";
  if (const auto* mk = std::get_if<Monokinetic>(&opinions))
    os << " opinions=monokinetic[" << mk->profile.describe() << "]";
  else if (std::holds_alternative<UniformBallOpinions>(opinions))
    os << " opinions=uniform_ball";
  else
    os << " opinions=truncated_gaussian";
  return os.str();
}

ParticleEnsemble sample_initial(const InitialDatumSpec& spec, std::size_t count, RngStream& stream) {
  if (count == 0) throw DomainError("sample_initial needs N >= 1");
  const std::size_t dx = spec.label_dim();
  const std::size_t d = spec.opinion_dim();
  ParticleEnsemble ensemble;
  ensemble.label_dim = dx;
  ensemble.opinion_dim = d;
  ensemble.labels.resize(count * dx);
  ensemble.opinions.resize(count * d);

  const auto* discrete = std::get_if<DiscreteLabels>(&spec.labels);
  const std::size_t discrete_count = discrete ? discrete->points.size() / dx : 0;
  std::optional<AtomSampler> picker;
  if (discrete) picker.emplace(discrete_count, discrete->weights);

  for (std::size_t i = 0; i < count; ++i) {
    MutVec label = MutVec(ensemble.labels).subspan(i * dx, dx);
    MutVec opinion = MutVec(ensemble.opinions).subspan(i * d, d);
    if (discrete) {
      const std::size_t j = (*picker)(stream);
      std::copy_n(discrete->points.begin() + static_cast<std::ptrdiff_t>(j * dx), dx, label.begin());
    } else {
      const auto& box = std::get<UniformBoxLabels>(spec.labels);
      for (std::size_t k = 0; k < dx; ++k) label[k] = stream.uniform(box.lower[k], box.upper[k]);
    }

    if (const auto* mk = std::get_if<Monokinetic>(&spec.opinions)) {
      mk->profile.evaluate(label, opinion);
    } else if (const auto* ball = std::get_if<UniformBallOpinions>(&spec.opinions)) {
      if (d == 1) {
        opinion[0] = ball->center[0] + stream.uniform(-ball->radius, ball->radius);
      } else {
        double n2 = 0.0;
        do {
          n2 = 0.0;
          for (double& v : opinion) {
            v = stream.normal();
            n2 += v * v;
          }
        } while (n2 == 0.0);
        const double r = ball->radius * std::pow(stream.uniform(), 1.0 / static_cast<double>(d));
        for (std::size_t c = 0; c < d; ++c) opinion[c] = ball->center[c] + opinion[c] * r / std::sqrt(n2);
      }
    } else {
      const auto& g = std::get<TruncatedGaussianOpinions>(spec.opinions);
      double n2 = 0.0;
      do {
        n2 = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          const double z = g.stddev * stream.normal();
          opinion[c] = z;
          n2 += z * z;
        }
      } while (n2 > g.radius * g.radius);
      for (std::size_t c = 0; c < d; ++c) opinion[c] += g.mean[c];
    }
  }
  return ensemble;
}

WeightedMeasure empirical_measure(const ParticleEnsemble& ensemble) {
  ensemble.validate();
  WeightedMeasure measure;
  measure.label_dim = ensemble.label_dim;
  measure.opinion_dim = ensemble.opinion_dim;
  measure.labels = ensemble.labels;
  measure.opinions = ensemble.opinions;
  measure.weights = uniform_weight_vector(ensemble.size());
  measure.validate();
  return measure;
}

double moment_z(const WeightedMeasure& measure, double z) {
  if (!(z > 0.0)) throw DomainError("moment order z must be positive");
  std::vector<double> terms(measure.size());
  for (std::size_t k = 0; k < measure.size(); ++k) {
    double r2 = 0.0;
    for (double v : measure.label(k)) r2 += v * v;
    for (double v : measure.opinion(k)) r2 += v * v;
    terms[k] = measure.weights[k] * std::pow(std::sqrt(r2), z);
  }
  return pairwise_sum(terms);
}

LabelMeasure discretize_labels(const LabelLaw& law, std::size_t node_budget) {
  LabelMeasure nodes;
  if (const auto* discrete = std::get_if<DiscreteLabels>(&law)) {
    nodes.dim = discrete->dim;
    nodes.atoms = discrete->points;
    nodes.weights = discrete->weights.empty() ? uniform_weight_vector(discrete->points.size() / discrete->dim)
                                              : discrete->weights;
    nodes.validate();
    return nodes;
  }
  const auto& box = std::get<UniformBoxLabels>(law);
  if (node_budget == 0) throw DomainError("label discretization needs at least one node");
  const std::size_t dim = box.lower.size();
  auto per_axis = static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(node_budget), 1.0 / static_cast<double>(dim)) + 1e-9));
  per_axis = std::max<std::size_t>(1, per_axis);
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim; ++k) total *= per_axis;

  nodes.dim = dim;
  nodes.atoms.resize(total * dim);
  std::vector<std::size_t> index(dim, 0);
  for (std::size_t n = 0; n < total; ++n) {
    for (std::size_t k = 0; k < dim; ++k) {
      const double h = (box.upper[k] - box.lower[k]) / static_cast<double>(per_axis);
      nodes.atoms[n * dim + k] = box.lower[k] + (static_cast<double>(index[k]) + 0.5) * h;
    }
    for (std::size_t k = dim; k-- > 0;) {
      if (++index[k] < per_axis) break;
      index[k] = 0;
    }
  }
  nodes.weights = uniform_weight_vector(total);
  nodes.validate();
  return nodes;
}

WeightedMeasure monokinetic_measure(const LabelMeasure& nodes, const OpinionProfile& profile) {
  WeightedMeasure measure;
  measure.label_dim = nodes.dim;
  measure.opinion_dim = profile.dim();
  measure.labels = nodes.atoms;
  measure.weights = nodes.weights;
  measure.opinions.resize(nodes.size() * measure.opinion_dim);
  for (std::size_t j = 0; j < nodes.size(); ++j)
    profile.evaluate(nodes.atom(j),
                     MutVec(measure.opinions).subspan(j * measure.opinion_dim, measure.opinion_dim));
  measure.validate();
  return measure;
}

WeightedMeasure reference_measure(const InitialDatumSpec& spec, std::size_t budget,
                                  RngStream& stream) {
  if (const auto* profile = spec.profile())
    return monokinetic_measure(discretize_labels(spec.labels, budget), *profile);
  return empirical_measure(sample_initial(spec, budget, stream));
}

WeightedMeasure select_atoms(const WeightedMeasure& measure, const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw DomainError("select_atoms needs at least one index");
  WeightedMeasure out;
  out.label_dim = measure.label_dim;
  out.opinion_dim = measure.opinion_dim;
  out.labels.reserve(indices.size() * measure.label_dim);
  out.opinions.reserve(indices.size() * measure.opinion_dim);
  for (std::size_t i : indices) {
    if (i >= measure.size()) throw DomainError("select_atoms index out of range");
    const auto l = measure.label(i);
    const auto o = measure.opinion(i);
    out.labels.insert(out.labels.end(), l.begin(), l.end());
    out.opinions.insert(out.opinions.end(), o.begin(), o.end());
  }
  out.weights = uniform_weight_vector(indices.size());
  return out;
}

ParticleEnsemble ensemble_from_measure(const WeightedMeasure& measure, double time) {
  ParticleEnsemble e;
  e.label_dim = measure.label_dim;
  e.opinion_dim = measure.opinion_dim;
  e.labels = measure.labels;
  e.opinions = measure.opinions;
  e.time = time;
  return e;
}

}  // namespace mwlab
