// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mwlab/error.hpp"
#include "mwlab/rng.hpp"

namespace mwlab {
namespace {

using Impl = std::variant<StatisticKernel, BlackBoxKernel>;

double norm2(ConstVec v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double distance2(ConstVec a, ConstVec b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

// max over s of |d/ds tanh(s^2)| = 2 s sech^2(s^2), attained near s = 0.7224.
constexpr double kSaturatedHeadSlope = 1.1131158721202679;

}  // namespace

InteractionKernel::InteractionKernel(StatisticKernel kernel) {
  if (!kernel.statistic_map || !kernel.head_map)
    throw ConfigError("statistic kernel '" + kernel.name + "' is missing a map");
  if (kernel.opinion_dim == 0 || kernel.statistic_dim == 0)
    throw ConfigError("statistic kernel '" + kernel.name + "' has a zero dimension");
  impl_ = std::make_shared<const Impl>(std::move(kernel));
}

InteractionKernel::InteractionKernel(BlackBoxKernel kernel) {
  if (!kernel.evaluator) throw ConfigError("black-box kernel '" + kernel.name + "' has no evaluator");
  if (kernel.opinion_dim == 0) throw ConfigError("black-box kernel has zero opinion dimension");
  impl_ = std::make_shared<const Impl>(std::move(kernel));
}

const std::string& InteractionKernel::name() const {
  return std::visit([](const auto& k) -> const std::string& { return k.name; }, *impl_);
}

std::size_t InteractionKernel::opinion_dim() const {
  return std::visit([](const auto& k) { return k.opinion_dim; }, *impl_);
}

double InteractionKernel::bound() const {
  return std::visit([](const auto& k) { return k.bound; }, *impl_);
}

double InteractionKernel::lipschitz() const {
  if (const auto* s = statistic()) return s->lipschitz();
  return black_box()->lipschitz;
}

double InteractionKernel::radius() const {
  return std::visit([](const auto& k) { return k.radius; }, *impl_);
}

void InteractionKernel::check_opinion(ConstVec opinion, std::string_view role) const {
  const double r = norm2(opinion);
  if (!(r <= radius())) {
    std::ostringstream msg;
    msg << "opinion of " << role << " has norm " << r << " outside the declared radius "
        << radius() << " of kernel '" << name() << "'";
    throw DomainViolation(msg.str());
  }
}

void InteractionKernel::evaluate_unchecked(double t, AgentRef head, std::span<const AgentRef> tail,
                                           MutVec out, MutVec scratch) const {
  if (const auto* s = statistic()) {
    const std::size_t sd = s->statistic_dim;
    const std::size_t m = tail.size();
    MutVec mean = scratch.first(sd);
    MutVec values = scratch.subspan(sd, sd * m);
    for (std::size_t j = 0; j < m; ++j) {
      s->statistic_map(tail[j].label, tail[j].opinion, mean);
      for (std::size_t c = 0; c < sd; ++c) values[c * m + j] = mean[c];
    }
    for (std::size_t c = 0; c < sd; ++c) {
      MutVec column = values.subspan(c * m, m);
      std::sort(column.begin(), column.end());
      double sum = 0.0;
      for (double v : column) sum += v - column[0];
      mean[c] = column[0] + sum / static_cast<double>(m);
    }
    s->head_map(t, head.label, head.opinion, mean, out);
    return;
  }
  black_box()->evaluator(t, head, tail, out);
}

std::vector<double> evaluate_kernel(const InteractionKernel& kernel, double t, AgentRef head,
                                    std::span<const AgentRef> tail) {
  if (tail.empty()) throw DomainError("kernel '" + kernel.name() + "' needs a tail of length m >= 1");
  const std::size_t d = kernel.opinion_dim();
  if (head.opinion.size() != d) throw DomainError("head opinion has the wrong dimension");
  kernel.check_opinion(head.opinion, "head");
  for (std::size_t k = 0; k < tail.size(); ++k) {
    if (tail[k].opinion.size() != d) throw DomainError("tail opinion has the wrong dimension");
    if (tail[k].label.size() != head.label.size())
      throw DomainError("tail label dimension differs from the head label dimension");
    kernel.check_opinion(tail[k].opinion, "tail[" + std::to_string(k) + "]");
  }
  std::vector<double> out(d, 0.0);
  const std::size_t sd = kernel.statistic() ? kernel.statistic()->statistic_dim : 0;
  std::vector<double> scratch(sd * (tail.size() + 1));
  kernel.evaluate_unchecked(t, head, tail, out, scratch);
  return out;
}

std::vector<double> kernel_limit_field(const InteractionKernel& kernel, double t, ConstVec label,
                                       ConstVec opinion, ConstVec statistic_mean) {
  const auto* s = kernel.statistic();
  if (s == nullptr)
    throw UnsupportedOperation("kernel '" + kernel.name() +
                               "' is a black box and has no analytic m -> infinity limit");
  if (statistic_mean.size() != s->statistic_dim)
    throw DomainError("statistic mean has the wrong dimension");
  for (double v : statistic_mean)
    if (!std::isfinite(v)) throw DomainError("statistic mean is not finite");
  std::vector<double> out(s->opinion_dim, 0.0);
  s->head_map(t, label, opinion, statistic_mean, out);
  return out;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << "declared M=" << declared_bound << " lip=" << declared_lipschitz << " radius=" << radius;
  for (const auto& p : probes) {
    os << "; m=" << p.m << " max|G|=" << p.max_abs << " max_quotient=" << p.max_quotient;
    if (p.bound_violation) os << " [bound violated]";
    if (p.lip_violation) os << " [lipschitz violated]";
  }
  return os.str();
}

namespace {

// Uniform point in the Euclidean ball of radius r, or on its sphere.
void draw_in_ball(RngStream& rng, double r, bool on_sphere, MutVec out) {
  if (out.size() == 1) {
    out[0] = on_sphere ? (rng.uniform() < 0.5 ? -r : r) : rng.uniform(-r, r);
    return;
  }
  double n = 0.0;
  do {
    n = 0.0;
    for (double& x : out) {
      x = rng.normal();
      n += x * x;
    }
    n = std::sqrt(n);
  } while (n == 0.0);
  const double radial =
      on_sphere ? r : r * std::pow(rng.uniform(), 1.0 / static_cast<double>(out.size()));
  for (double& x : out) x *= radial / n;
}

struct Probe {
  std::vector<double> labels;    // (m + 1) * label_dim, head first
  std::vector<double> opinions;  // (m + 1) * d
};

}  // namespace

ValidationReport validate_kernel(const InteractionKernel& kernel, std::size_t probe_count,
                                 double radius, std::uint64_t seed, std::size_t label_dim) {
  if (probe_count < 2) throw DomainError("validate_kernel needs probe_count >= 2");
  if (!(radius > 0.0)) throw DomainError("validate_kernel needs a positive radius");

  ValidationReport report;
  report.declared_bound = kernel.bound();
  report.declared_lipschitz = kernel.lipschitz();
  report.radius = radius;

  const std::size_t d = kernel.opinion_dim();
  const std::size_t sd = kernel.statistic() ? kernel.statistic()->statistic_dim : 0;
  const RngStream master(seed);

  for (std::size_t m : {1U, 2U, 4U, 8U}) {
    RngStream rng = master.split(m);
    ValidationProbe result;
    result.m = m;
    std::vector<double> scratch(sd * (m + 1)), value_a(d), value_b(d);

    auto evaluate = [&](const Probe& p, MutVec out) {
      std::vector<AgentRef> agents(m + 1);
      for (std::size_t k = 0; k <= m; ++k) {
        agents[k] = {ConstVec(p.labels).subspan(k * label_dim, label_dim),
                     ConstVec(p.opinions).subspan(k * d, d)};
      }
      kernel.evaluate_unchecked(0.0, agents[0], std::span<const AgentRef>(agents).subspan(1), out,
                                scratch);
    };
    auto draw = [&](bool on_sphere) {
      Probe p{std::vector<double>((m + 1) * label_dim), std::vector<double>((m + 1) * d)};
      for (double& x : p.labels) x = rng.uniform(-radius, radius);
      for (std::size_t k = 0; k <= m; ++k)
        draw_in_ball(rng, radius, on_sphere, MutVec(p.opinions).subspan(k * d, d));
      return p;
    };

    for (std::size_t i = 0; i < probe_count; ++i) {
      // A quarter of the probes sit on the sphere, where polynomial kernels peak.
      const Probe a = draw(i % 4 == 0);
      Probe b;
      if (i % 2 == 0) {
        b = draw(i % 8 == 0);
      } else {
        // Local perturbation, pulled back into the ball.
        b = a;
        const double eps = 1e-3 * radius;
        for (double& x : b.labels) x += rng.uniform(-eps, eps);
        for (std::size_t k = 0; k <= m; ++k) {
          MutVec o = MutVec(b.opinions).subspan(k * d, d);
          for (double& x : o) x += rng.uniform(-eps, eps);
          const double n = norm2(o);
          if (n > radius)
            for (double& x : o) x *= radius / n;
        }
      }
      evaluate(a, value_a);
      evaluate(b, value_b);
      result.max_abs = std::max({result.max_abs, norm2(value_a), norm2(value_b)});

      double separation = 0.0;
      for (std::size_t k = 0; k <= m; ++k) {
        separation += distance2(ConstVec(a.labels).subspan(k * label_dim, label_dim),
                                ConstVec(b.labels).subspan(k * label_dim, label_dim));
        separation += distance2(ConstVec(a.opinions).subspan(k * d, d),
                                ConstVec(b.opinions).subspan(k * d, d));
      }
      if (separation > 0.0)
        result.max_quotient = std::max(result.max_quotient, distance2(value_a, value_b) / separation);
    }
    result.bound_violation = result.max_abs > 1.01 * report.declared_bound;
    result.lip_violation = result.max_quotient > 1.01 * report.declared_lipschitz;
    report.bound_violation = report.bound_violation || result.bound_violation;
    report.lip_violation = report.lip_violation || result.lip_violation;
    report.probes.push_back(result);
  }
  return report;
}

InteractionKernel linear_consensus(const KernelParams& params) {
  StatisticKernel k;
  k.name = "linear_consensus";
  k.opinion_dim = params.opinion_dim;
  k.statistic_dim = params.opinion_dim;
  k.statistic_map = [](ConstVec, ConstVec opinion, MutVec s) {
    std::copy(opinion.begin(), opinion.end(), s.begin());
  };
  k.head_map = [](double, ConstVec, ConstVec opinion, ConstVec s, MutVec out) {
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = s[c] - opinion[c];
  };
  k.expected_head = [](double, ConstVec, ConstVec opinion, ConstVec mean, ConstVec, MutVec out) {
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = mean[c] - opinion[c];
  };
  k.affine_head = true;
  k.radius = params.radius;
  k.bound = params.bound.value_or(2.0 * params.radius);
  k.lip_head = params.lipschitz.value_or(1.0);
  k.lip_statistic = 1.0;
  return k;
}

InteractionKernel quadratic_statistic(const KernelParams& params) {
  if (params.opinion_dim != 1) throw ConfigError("quadratic_statistic is scalar (opinion_dim = 1)");
  StatisticKernel k;
  k.name = "quadratic_statistic";
  k.statistic_map = [](ConstVec, ConstVec opinion, MutVec s) { s[0] = opinion[0]; };
  k.head_map = [](double, ConstVec, ConstVec opinion, ConstVec s, MutVec out) {
    out[0] = s[0] * s[0] - opinion[0];
  };
  // E[S^2] = mean^2 + var.
  k.expected_head = [](double, ConstVec, ConstVec opinion, ConstVec mean, ConstVec cov,
                       MutVec out) { out[0] = mean[0] * mean[0] + cov[0] - opinion[0]; };
  const double r = params.radius;
  k.radius = r;
  k.bound = params.bound.value_or(r * r + r);
  k.lip_head = params.lipschitz.value_or(std::max(1.0, 2.0 * r));
  k.lip_statistic = 1.0;
  return k;
}

InteractionKernel saturated_quadratic(const KernelParams& params) {
  if (params.opinion_dim != 1) throw ConfigError("saturated_quadratic is scalar (opinion_dim = 1)");
  StatisticKernel k;
  k.name = "saturated_quadratic";
  k.statistic_map = [](ConstVec, ConstVec opinion, MutVec s) { s[0] = opinion[0]; };
  k.head_map = [](double, ConstVec, ConstVec opinion, ConstVec s, MutVec out) {
    out[0] = std::tanh(s[0] * s[0]) - std::tanh(opinion[0]);
  };
  k.radius = params.radius;
  k.bound = params.bound.value_or(2.0);
  k.lip_head = params.lipschitz.value_or(kSaturatedHeadSlope);
  k.lip_statistic = 1.0;
  return k;
}

const std::vector<KernelCatalogEntry>& kernel_catalog() {
  static const std::vector<KernelCatalogEntry> catalog = {
      {"linear_consensus",
       "phi = xi, g = s - xi; tuple average equals g at the global mean for every m; "
       "closed-form rhs; limit field s - xi",
       linear_consensus},
      {"quadratic_statistic",
       "d = 1, phi = xi, g = s^2 - xi; tuple average = mean^2 + var/m - xi; "
       "limit field mean^2 - xi; certified on the declared ball only",
       quadratic_statistic},
      {"saturated_quadratic",
       "d = 1, phi = xi, g = tanh(s^2) - tanh(xi); globally bounded by 2; "
       "no closed-form tuple average; limit field tanh(mean^2) - tanh(xi)",
       saturated_quadratic},
  };
  return catalog;
}

InteractionKernel make_kernel(std::string_view name, const KernelParams& params) {
  for (const auto& entry : kernel_catalog())
    if (entry.name == name) return entry.make(params);
  throw ConfigError("unknown kernel '" + std::string(name) + "'");
}

}  // namespace mwlab
