// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mwlab {

using ConstVec = std::span<const double>;
using MutVec = std::span<double>;

// One agent as seen by a kernel: its (stationary) label and current opinion.
struct AgentRef {
  ConstVec label;
  ConstVec opinion;
};

// m-body kernel of the form G(t, x, xi, tail) = g(t, x, xi, mean_k phi(x_k, xi_k)).
// Symmetric in the tail by construction.
struct StatisticKernel {
  using StatisticMap = std::function<void(ConstVec label, ConstVec opinion, MutVec statistic)>;
  using HeadMap = std::function<void(double t, ConstVec label, ConstVec opinion,
                                     ConstVec statistic, MutVec out)>;
  // E[g(t, x, xi, S)] for a random statistic S with the given mean and
  // covariance (row-major s x s). Only meaningful when g is at most quadratic
  // in the statistic, in which case the expectation depends on the first two
  // moments alone and tuple averages reduce to closed form.
  using ExpectedHeadMap = std::function<void(double t, ConstVec label, ConstVec opinion,
                                             ConstVec mean, ConstVec covariance, MutVec out)>;

  std::string name;
  std::size_t opinion_dim = 1;
  std::size_t statistic_dim = 1;
  StatisticMap statistic_map;
  HeadMap head_map;
  ExpectedHeadMap expected_head;  // optional
  bool affine_head = false;       // g affine in the statistic: E g(S) = g(E S)

  double bound = 0.0;          // M: |G| <= M on the declared ball, for every m
  double lip_head = 0.0;       // Lipschitz constant of g in (x, xi, s)
  double lip_statistic = 0.0;  // Lipschitz constant of phi in (x, xi)
  double radius = 0.0;         // opinion ball on which the constants hold

  double lipschitz() const { return lip_head * (lip_statistic > 1.0 ? lip_statistic : 1.0); }
};

// Arbitrary m-body kernel given only as an evaluator.
struct BlackBoxKernel {
  using Evaluator = std::function<void(double t, AgentRef head, std::span<const AgentRef> tail,
                                       MutVec out)>;

  std::string name;
  std::size_t opinion_dim = 1;
  Evaluator evaluator;
  double bound = 0.0;
  double lipschitz = 0.0;
  double radius = 0.0;
};

// Cheap-to-copy handle over either kernel flavour. Evaluation is pure and
// may be called concurrently.
class InteractionKernel {
 public:
  InteractionKernel(StatisticKernel kernel);  // NOLINT(google-explicit-constructor)
  InteractionKernel(BlackBoxKernel kernel);   // NOLINT(google-explicit-constructor)

  const std::string& name() const;
  std::size_t opinion_dim() const;
  double bound() const;
  double lipschitz() const;
  double radius() const;

  const StatisticKernel* statistic() const { return std::get_if<StatisticKernel>(impl_.get()); }
  const BlackBoxKernel* black_box() const { return std::get_if<BlackBoxKernel>(impl_.get()); }
  bool has_closed_form() const {
    const auto* s = statistic();
    return s != nullptr && static_cast<bool>(s->expected_head);
  }

  // Throws DomainViolation naming `role` if |opinion| exceeds the declared radius.
  void check_opinion(ConstVec opinion, std::string_view role) const;

  // Unchecked evaluation into `out` (size opinion_dim). `scratch` must hold at
  // least statistic_dim * (m + 1) doubles for statistic kernels. The tail
  // statistic is summed in sorted order as pivot + mean deviation, so the
  // result is bitwise invariant under tail permutations and a constant tail
  // reproduces its value exactly.
  void evaluate_unchecked(double t, AgentRef head, std::span<const AgentRef> tail, MutVec out,
                          MutVec scratch) const;

 private:
  std::shared_ptr<const std::variant<StatisticKernel, BlackBoxKernel>> impl_;
};

// G^(m)(t, head, tail) with m = tail.size(). Validates the tail length,
// opinion dimensions and the declared radius.
std::vector<double> evaluate_kernel(const InteractionKernel& kernel, double t, AgentRef head,
                                    std::span<const AgentRef> tail);

// g(t, x, xi, statistic_mean): the m -> infinity limit field of a statistic kernel.
std::vector<double> kernel_limit_field(const InteractionKernel& kernel, double t, ConstVec label,
                                       ConstVec opinion, ConstVec statistic_mean);

struct ValidationProbe {
  std::size_t m = 0;
  double max_abs = 0.0;
  double max_quotient = 0.0;
  bool bound_violation = false;
  bool lip_violation = false;
};

struct ValidationReport {
  double declared_bound = 0.0;
  double declared_lipschitz = 0.0;
  double radius = 0.0;
  std::vector<ValidationProbe> probes;  // one per m in {1, 2, 4, 8}
  bool bound_violation = false;
  bool lip_violation = false;

  bool ok() const { return !bound_violation && !lip_violation; }
  std::string summary() const;
};

// Spot-checks the declared bound and Lipschitz constant: max |G| and the largest difference quotient
// in the l1 product metric over random probes, for m in {1, 2, 4, 8}. A flag is
// raised when either exceeds its declared value by more than 1%.
ValidationReport validate_kernel(const InteractionKernel& kernel, std::size_t probe_count,
                                 double radius, std::uint64_t seed, std::size_t label_dim = 1);

struct KernelParams {
  double radius = 1.0;
  std::size_t opinion_dim = 1;
  std::optional<double> bound;      // overrides the derived M
  std::optional<double> lipschitz;  // overrides the derived lip_head
};

struct KernelCatalogEntry {
  std::string name;
  std::string notes;
  std::function<InteractionKernel(const KernelParams&)> make;
};

// phi = xi, g = s - xi. Any opinion dimension; M = 2r, Lip = 1.
InteractionKernel linear_consensus(const KernelParams& params = {});
// d = s = 1, phi = xi, g = s^2 - xi. M = r^2 + r, Lip = max(1, 2r) on the ball.
InteractionKernel quadratic_statistic(const KernelParams& params = {});
// d = s = 1, phi = xi, g = tanh(s^2) - tanh(xi). Globally |G| < 2.
InteractionKernel saturated_quadratic(const KernelParams& params = {});

const std::vector<KernelCatalogEntry>& kernel_catalog();
// Throws ConfigError for unknown names.
InteractionKernel make_kernel(std::string_view name, const KernelParams& params);

}  // namespace mwlab
