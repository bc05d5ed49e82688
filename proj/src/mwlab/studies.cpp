// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/studies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mwlab/chaos.hpp"
#include "mwlab/error.hpp"
#include "mwlab/macroscopic.hpp"
#include "mwlab/mesoscopic.hpp"
#include "mwlab/parallel.hpp"
#include "mwlab/particles.hpp"
#include "mwlab/transport.hpp"

namespace mwlab {
namespace {

struct StudyContext {
  const ExperimentConfig& config;
  InteractionKernel kernel;
  TimeGrid grid;
  RngStream master;
  StudyReport report;
};

StudyContext begin_study(const ExperimentConfig& config) {
  config.validate();
  StudyContext ctx{config, make_kernel(config.kernel, config.kernel_params),
                   TimeGrid::uniform(config.T, config.dt), RngStream(config.seed), {}};
  ctx.report.study = std::string(study_name(config.study));
  ctx.report.stem = config.stem();

  const ValidationReport validation =
      validate_kernel(ctx.kernel, std::max<std::size_t>(2, config.validation_probes),
                      ctx.kernel.radius(), config.seed, config.initial.label_dim());
  nlohmann::json& meta = ctx.report.metadata;
  meta["config_toml"] = config.to_toml();
  meta["seed"] = config.seed;
  meta["seed_replicates"] = config.seeds;
  meta["kernel"] = {{"name", ctx.kernel.name()},
                    {"bound", ctx.kernel.bound()},
                    {"lipschitz", ctx.kernel.lipschitz()},
                    {"radius", ctx.kernel.radius()},
                    {"closed_form", ctx.kernel.has_closed_form()}};
  meta["validation"] = {{"ok", validation.ok()},
                        {"bound_violation", validation.bound_violation},
                        {"lipschitz_violation", validation.lip_violation},
                        {"summary", validation.summary()}};
  meta["initial_datum"] = config.initial.describe();
  meta["time"] = {{"T", config.T},
                  {"dt", config.dt},
                  {"steps", ctx.grid.steps()},
                  {"scheme", std::string(scheme_name(config.scheme))}};
  meta["rhs_mode"] = config.rhs_mode(ctx.kernel, 0).describe();
  return ctx;
}

void raise_blow_up(const std::string& what, bool blow_up, double exit_time,
                   const std::string& reason) {
  if (!blow_up) return;
  std::ostringstream msg;
  msg << what << " left the certified opinion ball at t = " << exit_time << ": " << reason;
  throw BlowUpError(msg.str(), exit_time);
}

void fit_rows(StudyReport& report, const std::vector<std::pair<double, double>>& rows) {
  try {
    report.fit = fit_loglog_slope(rows);
  } catch (const FitError& e) {
    report.fit_error = e.what();
  }
}

nlohmann::json fit_json(const std::vector<std::pair<double, double>>& rows) {
  try {
    const LogLogFit f = fit_loglog_slope(rows);
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual},
            {"used_rows", f.used_rows}, {"warnings", f.warnings}};
  } catch (const FitError& e) {
    return {{"error", e.what()}};
  }
}

// (label, opinion) points of selected atoms.
PointCloud cloud_of(std::size_t label_dim, std::size_t opinion_dim, const std::vector<double>& labels,
                    const std::vector<double>& opinions, const std::vector<std::size_t>& indices) {
  PointCloud cloud;
  cloud.dim = label_dim + opinion_dim;
  cloud.coords.reserve(indices.size() * cloud.dim);
  for (std::size_t i : indices) {
    cloud.coords.insert(cloud.coords.end(), labels.begin() + static_cast<std::ptrdiff_t>(i * label_dim),
                        labels.begin() + static_cast<std::ptrdiff_t>((i + 1) * label_dim));
    cloud.coords.insert(cloud.coords.end(),
                        opinions.begin() + static_cast<std::ptrdiff_t>(i * opinion_dim),
                        opinions.begin() + static_cast<std::ptrdiff_t>((i + 1) * opinion_dim));
  }
  return cloud;
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Index sets that reconcile an n-particle sample with a weighted reference of
// K atoms as two uniform samples of equal size min(n, K): the reference is
// resampled by weight unless it is already uniform with K = n; the particles
// are resampled uniformly when n > K. Draws with replacement.
struct Reconciled {
  std::vector<std::size_t> sample;
  std::vector<std::size_t> reference;
  bool resampled = false;
};

Reconciled reconcile(std::size_t n, const WeightedMeasure& ref, RngStream& stream) {
  Reconciled r;
  const std::size_t count = std::min(n, ref.size());
  const AtomSampler sampler(ref.size(), ref.weights);
  if (sampler.uniform() && ref.size() == count) {
    r.reference = iota_indices(count);
  } else {
    r.reference.resize(count);
    for (auto& i : r.reference) i = sampler(stream);
    r.resampled = true;
  }
  if (n == count) {
    r.sample = iota_indices(count);
  } else {
    r.sample.resize(count);
    for (auto& i : r.sample) i = static_cast<std::size_t>(stream.below(n));
    r.resampled = true;
  }
  return r;
}

StudyRow base_row(const ExperimentConfig& c, std::string param_name, double param_value) {
  StudyRow row;
  row.param_name = std::move(param_name);
  row.param_value = param_value;
  row.p = c.p;
  row.q = c.q;
  return row;
}

void set_mean_error(StudyRow& row, const std::vector<double>& values) {
  const MeanError me = mean_and_stderr(values);
  row.gap = me.mean;
  row.stderr_ = me.stderr_;
  row.seed_count = me.count;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// Final state of a Vlasov solve that must not blow up.
WeightedMeasure final_measure(const VlasovSolution& sol, const char* what) {
  raise_blow_up(what, sol.blow_up, sol.exit_time, sol.blow_up_reason);
  return sol.states.back().measure;
}

}  // namespace

double test_function(std::string_view name, ConstVec label) {
  if (name == "zero") return 0.0;
  if (name == "constant") return 1.0;
  if (name == "affine") return label[0];
  if (name == "sinusoidal") return std::sin(2.0 * std::numbers::pi * label[0]);
  throw ConfigError("unknown test function '" + std::string(name) + "'");
}

StudyReport run_sampling_rate_study(const ExperimentConfig& config) {
  StudyContext ctx = begin_study(config);
  const ExperimentConfig& c = config;
  const std::size_t n_max = *std::max_element(c.N.begin(), c.N.end());
  const std::size_t seeds = c.seeds;
  const std::size_t points = c.N.size();
  const std::size_t ld = c.initial.label_dim(), od = c.initial.opinion_dim();
  const GroundMetric metric = GroundMetric::phase_space(ld, od);

  std::vector<ParticleEnsemble> references(seeds);
  parallel_for(seeds, [&](std::size_t s) {
    RngStream rng = ctx.master.split(s).split(0);
    references[s] = sample_initial(c.initial, n_max, rng);
  });
  std::vector<double> gaps(seeds * points);
  parallel_for(seeds * points, [&](std::size_t job) {
    const std::size_t s = job / points, i = job % points;
    const RngStream base = ctx.master.split(s).split(i + 1);
    RngStream draw = base.split(0), pick = base.split(1);
    const ParticleEnsemble sample = sample_initial(c.initial, c.N[i], draw);
    const ParticleEnsemble& ref = references[s];
    std::vector<std::size_t> idx = iota_indices(n_max);
    if (c.N[i] < n_max) {
      idx.resize(c.N[i]);
      for (auto& v : idx) v = static_cast<std::size_t>(pick.below(n_max));
    }
    gaps[job] = empirical_wasserstein(
        cloud_of(ld, od, sample.labels, sample.opinions, iota_indices(c.N[i])),
        cloud_of(ld, od, ref.labels, ref.opinions, idx), c.p, metric);
  });

  std::vector<std::pair<double, double>> fit_input;
  for (std::size_t i = 0; i < points; ++i) {
    StudyRow row = base_row(c, "N", static_cast<double>(c.N[i]));
    std::vector<double> v(seeds);
    for (std::size_t s = 0; s < seeds; ++s) v[s] = gaps[s * points + i];
    set_mean_error(row, v);
    row.m = c.m.front();
    row.N = c.N[i];
    row.t_final = 0.0;
    ctx.report.rows.push_back(row);
    fit_input.emplace_back(row.param_value, row.gap);
  }
  fit_rows(ctx.report, fit_input);
  ctx.report.metadata["reference_size"] = n_max;
  ctx.report.metadata["resampling"] =
      "reference draws resampled with replacement to N when N < max(N)";
  return ctx.report;
}

StudyReport run_dobrushin_study(const ExperimentConfig& config) {
  StudyContext ctx = begin_study(config);
  const ExperimentConfig& c = config;
  const std::size_t m = c.m.front();
  const std::size_t seeds = c.seeds, points = c.N.size();
  const std::size_t ld = c.initial.label_dim(), od = c.initial.opinion_dim();
  const GroundMetric metric = GroundMetric::phase_space(ld, od);
  const std::size_t stride = std::max<std::size_t>(1, ctx.grid.steps());

  struct Reference {
    WeightedMeasure start, end;
  };
  std::vector<Reference> refs(seeds);
  parallel_for(seeds, [&](std::size_t s) {
    RngStream rng = ctx.master.split(s).split(0);
    refs[s].start = reference_measure(c.initial, c.N_ref, rng);
    const RhsMode mode = c.rhs_mode(ctx.kernel, rng.split(1).next_u64());
    refs[s].end = final_measure(
        vlasov_solve(refs[s].start, ctx.kernel, m, ctx.grid, c.scheme, mode, {}, stride),
        "reference Vlasov solve");
  });

  std::vector<double> gap_end(seeds * points), gap_start(seeds * points);
  std::vector<char> resampled(seeds * points, 0);
  parallel_for(seeds * points, [&](std::size_t job) {
    const std::size_t s = job / points, i = job % points;
    const RngStream base = ctx.master.split(s).split(i + 1);
    RngStream draw = base.split(0), pick = base.split(1);
    const ParticleEnsemble e0 = sample_initial(c.initial, c.N[i], draw);
    const RhsMode mode = c.rhs_mode(ctx.kernel, base.split(2).next_u64());
    const Trajectory traj = integrate(e0, ctx.kernel, m, ctx.grid, c.scheme, mode, {stride, {}});
    raise_blow_up("particle run", traj.blow_up, traj.exit_time, traj.blow_up_reason);
    const Reconciled r = reconcile(c.N[i], refs[s].start, pick);
    resampled[job] = r.resampled ? 1 : 0;
    const Reference& ref = refs[s];
    gap_start[job] = empirical_wasserstein(
        cloud_of(ld, od, e0.labels, e0.opinions, r.sample),
        cloud_of(ld, od, ref.start.labels, ref.start.opinions, r.reference), c.p, metric);
    gap_end[job] = empirical_wasserstein(
        cloud_of(ld, od, traj.labels, traj.opinions.back(), r.sample),
        cloud_of(ld, od, ref.end.labels, ref.end.opinions, r.reference), c.p, metric);
  });

  const double lip = ctx.kernel.lipschitz();
  const double rate = 2.0 * lip * (1.0 + static_cast<double>(m));
  const double factor = std::exp(rate * c.T);
  nlohmann::json checks = nlohmann::json::array();
  std::vector<std::pair<double, double>> fit_input;
  for (std::size_t i = 0; i < points; ++i) {
    StudyRow row = base_row(c, "N", static_cast<double>(c.N[i]));
    std::vector<double> end(seeds), start(seeds);
    bool under = true;
    for (std::size_t s = 0; s < seeds; ++s) {
      end[s] = gap_end[s * points + i];
      start[s] = gap_start[s * points + i];
      under = under && end[s] <= factor * start[s];
    }
    set_mean_error(row, end);
    const MeanError me0 = mean_and_stderr(start);
    row.extra = format_real(me0.mean);
    row.m = m;
    row.N = c.N[i];
    row.t_final = ctx.grid.final_time();
    ctx.report.rows.push_back(row);
    fit_input.emplace_back(row.param_value, row.gap);
    checks.push_back({{"N", c.N[i]},
                      {"initial_gap", me0.mean},
                      {"initial_gap_stderr", me0.stderr_},
                      {"ceiling", factor * me0.mean},
                      {"every_seed_under_ceiling", under}});
  }
  fit_rows(ctx.report, fit_input);
  nlohmann::json& meta = ctx.report.metadata;
  meta["ceiling"] = {{"rate_C", rate}, {"factor_exp_CT", factor}, {"rows", checks}};
  meta["reference"] = {{"N_ref", c.N_ref},
                       {"atoms", refs.front().start.size()},
                       {"monokinetic_quadrature", c.initial.monokinetic()}};
  meta["resampling"] =
      "samples reconciled to min(N, N_ref) atoms by drawing with replacement; the same indices "
      "are used at t = 0 and t = T";
  meta["extra"] = "seed-averaged distance at t = 0 (initial gap)";
  return ctx.report;
}

StudyReport run_chaos_study(const ExperimentConfig& config) {
  StudyContext ctx = begin_study(config);
  const ExperimentConfig& c = config;
  const std::size_t m = c.m.front(), k = c.k, R = c.R;
  const std::size_t seeds = c.seeds, points = c.N.size();
  const std::size_t ld = c.initial.label_dim(), od = c.initial.opinion_dim();
  const GroundMetric metric = GroundMetric::product_q(k, c.q, ld, od);
  const double t_final = ctx.grid.final_time();
  const std::size_t stride = std::max<std::size_t>(1, ctx.grid.steps());

  // R points of (label x opinion)^k drawn i.i.d. from the weighted atoms.
  const auto product_samples = [&](const WeightedMeasure& f, RngStream& rng) {
    const AtomSampler sampler(f.size(), f.weights);
    PointCloud cloud;
    cloud.dim = k * (ld + od);
    std::vector<std::size_t> idx(R * k);
    for (auto& v : idx) v = sampler(rng);
    const PointCloud flat = cloud_of(ld, od, f.labels, f.opinions, idx);
    cloud.coords = flat.coords;
    return cloud;
  };

  std::vector<WeightedMeasure> refs(seeds);
  std::vector<double> bias(seeds), moments(seeds);
  parallel_for(seeds, [&](std::size_t s) {
    RngStream rng = ctx.master.split(s).split(0);
    const WeightedMeasure f0 = reference_measure(c.initial, c.N_ref, rng);
    moments[s] = moment_z(f0, c.z);
    const RhsMode mode = c.rhs_mode(ctx.kernel, rng.split(1).next_u64());
    refs[s] = final_measure(vlasov_solve(f0, ctx.kernel, m, ctx.grid, c.scheme, mode, {}, stride),
                            "reference Vlasov solve");
    RngStream a = rng.split(2), b = rng.split(3);
    bias[s] = empirical_wasserstein(product_samples(refs[s], a), product_samples(refs[s], b), c.p,
                                    metric);
  });

  std::vector<double> gaps(seeds * points);
  std::vector<std::size_t> blown(seeds * points, 0);
  parallel_for(seeds * points, [&](std::size_t job) {
    const std::size_t s = job / points, i = job % points;
    const RngStream base = ctx.master.split(s).split(i + 1);
    const RhsMode mode = c.rhs_mode(ctx.kernel, 0);
    const LiouvilleEnsemble ens =
        sample_liouville_ensemble(c.initial, c.N[i], R, ctx.kernel, m, ctx.grid, c.scheme, mode,
                                  base.split(0).next_u64(), {stride, {}});
    if (ens.blown_up_runs > 0) {
      for (const Trajectory& run : ens.runs)
        raise_blow_up("Liouville run", run.blow_up, run.exit_time, run.blow_up_reason);
    }
    const PointCloud sym = symmetrized_marginal_samples(ens, t_final, k, base.split(1));
    RngStream pick = base.split(2);
    gaps[job] = empirical_wasserstein(sym, product_samples(refs[s], pick), c.p, metric);
  });

  const MeanError bias_me = mean_and_stderr(bias);
  std::vector<std::pair<double, double>> fit_input;
  for (std::size_t i = 0; i < points; ++i) {
    StudyRow row = base_row(c, "N", static_cast<double>(c.N[i]));
    std::vector<double> v(seeds);
    for (std::size_t s = 0; s < seeds; ++s) v[s] = gaps[s * points + i];
    set_mean_error(row, v);
    row.m = m;
    row.N = c.N[i];
    row.t_final = t_final;
    row.extra = format_real(bias_me.mean);
    ctx.report.rows.push_back(row);
    fit_input.emplace_back(row.param_value, row.gap);
  }
  fit_rows(ctx.report, fit_input);
  nlohmann::json& meta = ctx.report.metadata;
  meta["k"] = k;
  meta["R"] = R;
  meta["ground_metric"] = metric.describe();
  meta["two_sample_bias"] = {{"mean", bias_me.mean}, {"stderr", bias_me.stderr_},
                             {"per_seed", bias}};
  meta["moment_z"] = {{"z", c.z}, {"value", mean_and_stderr(moments).mean}};
  meta["reference"] = {{"N_ref", c.N_ref}, {"atoms", refs.front().size()}};
  meta["symmetrization"] = "one uniform permutation per run";
  meta["extra"] = "two-sample bias: distance between two independent reference sample sets";
  return ctx.report;
}

StudyReport run_multiwise_limit_study(const ExperimentConfig& config) {
  StudyContext ctx = begin_study(config);
  const ExperimentConfig& c = config;
  const LabelMeasure nodes = discretize_labels(c.initial.labels, c.label_nodes);
  const OpinionField y0 = field_from_profile(nodes, *c.initial.profile());
  const OpinionTrajectory limit = opinion_limit_solve(y0, ctx.kernel, ctx.grid, c.scheme);
  raise_blow_up("limit opinion solve", limit.blow_up, limit.exit_time, limit.blow_up_reason);

  std::vector<OpinionTrajectory> finite(c.m.size());
  parallel_for(c.m.size(), [&](std::size_t i) {
    const RhsMode mode = c.rhs_mode(ctx.kernel, ctx.master.split(i).next_u64());
    finite[i] = opinion_solve(y0, ctx.kernel, c.m[i], ctx.grid, c.scheme, mode);
  });

  std::vector<std::pair<double, double>> fit_input;
  for (std::size_t i = 0; i < c.m.size(); ++i) {
    const OpinionTrajectory& f = finite[i];
    raise_blow_up("opinion solve", f.blow_up, f.exit_time, f.blow_up_reason);
    double sup = 0.0, at = 0.0;
    for (std::size_t t = 0; t < f.size(); ++t) {
      const double d = max_abs_diff(f.values[t], limit.values[t]);
      if (d > sup) {
        sup = d;
        at = f.times[t];
      }
    }
    StudyRow row = base_row(c, "m", static_cast<double>(c.m[i]));
    row.gap = sup;
    row.seed_count = 1;
    row.m = c.m[i];
    row.N = nodes.size();
    row.t_final = ctx.grid.final_time();
    row.extra = format_real(at);
    ctx.report.rows.push_back(row);
    fit_input.emplace_back(row.param_value, row.gap);
  }
  fit_rows(ctx.report, fit_input);

  const std::size_t shown = static_cast<std::size_t>(
      std::min_element(c.m.begin(), c.m.end()) - c.m.begin());
  const auto add_traces = [&](const OpinionTrajectory& traj, const std::string& series) {
    for (std::size_t t = 0; t < traj.size(); ++t)
      for (std::size_t j = 0; j < nodes.size(); ++j)
        ctx.report.traces.push_back({traj.times[t], j, traj.values[t][j * traj.opinion_dim], series});
  };
  add_traces(finite[shown], "m=" + std::to_string(c.m[shown]));
  add_traces(limit, "limit");

  nlohmann::json& meta = ctx.report.metadata;
  meta["nodes"] = nodes.size();
  meta["profile_lipschitz"] = c.initial.profile()->lipschitz();
  meta["extra"] = "grid time at which the sup gap is attained";
  meta["traces"] = {{"series", {"m=" + std::to_string(c.m[shown]), "limit"}},
                    {"component", 0}};
  return ctx.report;
}

StudyReport run_joint_limit_study(const ExperimentConfig& config) {
  StudyContext ctx = begin_study(config);
  const ExperimentConfig& c = config;
  if (!(c.T > 0.0)) throw ConfigError("joint-limit study needs T > 0 for the m schedule");
  const std::size_t seeds = c.seeds, points = c.N.size();
  const std::size_t od = c.initial.opinion_dim();
  const double lip = ctx.kernel.lipschitz();
  const std::vector<std::string>& fns = c.test_functions;

  const LabelMeasure nodes = discretize_labels(c.initial.labels, c.N_ref);
  const OpinionField y0 = field_from_profile(nodes, *c.initial.profile());
  const OpinionTrajectory limit = opinion_limit_solve(y0, ctx.kernel, ctx.grid, c.scheme);
  raise_blow_up("limit opinion solve", limit.blow_up, limit.exit_time, limit.blow_up_reason);

  // Limit pairing sum_j nu_j phi(x_j) y_j(t), per function, time and component.
  std::vector<std::vector<double>> target(fns.size());
  for (std::size_t f = 0; f < fns.size(); ++f) {
    target[f].assign(limit.size() * od, 0.0);
    for (std::size_t t = 0; t < limit.size(); ++t)
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        const double w = nodes.weights[j] * test_function(fns[f], nodes.atom(j));
        for (std::size_t d = 0; d < od; ++d) target[f][t * od + d] += w * limit.values[t][j * od + d];
      }
  }

  std::vector<std::size_t> ms(points);
  for (std::size_t i = 0; i < points; ++i)
    ms[i] = m_schedule(static_cast<double>(c.N[i]), c.alpha, c.q, lip, c.T);

  std::vector<double> gaps(seeds * points * fns.size());
  parallel_for(seeds * points, [&](std::size_t job) {
    const std::size_t s = job / points, i = job % points;
    const RngStream base = ctx.master.split(s).split(i + 1);
    const RhsMode mode = c.rhs_mode(ctx.kernel, 0);
    const LiouvilleEnsemble ens = sample_liouville_ensemble(
        c.initial, c.N[i], c.R, ctx.kernel, ms[i], ctx.grid, c.scheme, mode,
        base.split(0).next_u64(), {1, {}});
    for (const Trajectory& run : ens.runs)
      raise_blow_up("Liouville run", run.blow_up, run.exit_time, run.blow_up_reason);
    for (std::size_t f = 0; f < fns.size(); ++f) {
      double sup = 0.0;
      for (std::size_t t = 0; t < ctx.grid.times.size(); ++t) {
        const std::vector<double> pairing = first_moment_pairing(
            ens, ctx.grid.times[t], [&](ConstVec x) { return test_function(fns[f], x); });
        for (std::size_t d = 0; d < od; ++d)
          sup = std::max(sup, std::abs(pairing[d] - target[f][t * od + d]));
      }
      gaps[job * fns.size() + f] = sup;
    }
  });

  nlohmann::json fits = nlohmann::json::object();
  for (std::size_t f = 0; f < fns.size(); ++f) {
    std::vector<std::pair<double, double>> fit_input;
    for (std::size_t i = 0; i < points; ++i) {
      StudyRow row = base_row(c, "N", static_cast<double>(c.N[i]));
      std::vector<double> v(seeds);
      for (std::size_t s = 0; s < seeds; ++s) v[s] = gaps[(s * points + i) * fns.size() + f];
      set_mean_error(row, v);
      row.m = ms[i];
      row.N = c.N[i];
      row.t_final = ctx.grid.final_time();
      row.extra = fns[f];
      ctx.report.rows.push_back(row);
      fit_input.emplace_back(row.param_value, row.gap);
    }
    fits[fns[f]] = fit_json(fit_input);
    if (f == 0) fit_rows(ctx.report, fit_input);
  }
  nlohmann::json& meta = ctx.report.metadata;
  meta["m_schedule"] = {{"alpha", c.alpha}, {"q", c.q}, {"lipschitz", lip}, {"T", c.T},
                        {"m", ms}};
  meta["fits_by_test_function"] = fits;
  meta["limit_nodes"] = nodes.size();
  meta["R"] = c.R;
  meta["extra"] = "test function name; the top-level fit uses the first test function";
  return ctx.report;
}

StudyReport run_monokinetic_check(const ExperimentConfig& config) {
  StudyContext ctx = begin_study(config);
  const ExperimentConfig& c = config;
  const std::size_t m = c.m.front();
  const LabelMeasure nodes = discretize_labels(c.initial.labels, c.label_nodes);
  const OpinionProfile& profile = *c.initial.profile();
  const WeightedMeasure f0 = monokinetic_measure(nodes, profile);
  const OpinionField y0 = field_from_profile(nodes, profile);
  const RhsMode mode = c.rhs_mode(ctx.kernel, c.seed);

  const auto final_field = [&](double dt) {
    const TimeGrid grid = TimeGrid::uniform(c.T, dt);
    const OpinionTrajectory y =
        opinion_solve(y0, ctx.kernel, m, grid, c.scheme, mode, {}, std::max<std::size_t>(1, grid.steps()));
    raise_blow_up("opinion solve", y.blow_up, y.exit_time, y.blow_up_reason);
    return y.values.back();
  };
  const double dt_min = *std::min_element(c.dt_list.begin(), c.dt_list.end());
  const std::vector<double> fine = final_field(dt_min / 4.0);

  const std::size_t n = c.dt_list.size();
  std::vector<double> gap(n), disc(n);
  parallel_for(n, [&](std::size_t i) {
    const TimeGrid grid = TimeGrid::uniform(c.T, c.dt_list[i]);
    const std::size_t stride = std::max<std::size_t>(1, grid.steps());
    const WeightedMeasure v =
        final_measure(vlasov_solve(f0, ctx.kernel, m, grid, c.scheme, mode, {}, stride),
                      "Vlasov solve");
    const std::vector<double> y = final_field(c.dt_list[i]);
    gap[i] = max_abs_diff(v.opinions, y);
    disc[i] = max_abs_diff(y, fine);
  });

  std::vector<std::pair<double, double>> fit_input, disc_input;
  for (std::size_t i = 0; i < n; ++i) {
    StudyRow row = base_row(c, "dt", c.dt_list[i]);
    row.gap = gap[i];
    row.seed_count = 1;
    row.m = m;
    row.N = nodes.size();
    row.t_final = c.T;
    row.extra = format_real(disc[i]);
    ctx.report.rows.push_back(row);
    fit_input.emplace_back(row.param_value, row.gap);
    disc_input.emplace_back(row.param_value, disc[i]);
  }
  fit_rows(ctx.report, fit_input);
  nlohmann::json& meta = ctx.report.metadata;
  meta["nodes"] = nodes.size();
  meta["reference_dt"] = dt_min / 4.0;
  meta["discretization_fit"] = fit_json(disc_input);
  meta["extra"] = "l-infinity error of the opinion field at T against the dt_min / 4 solve";
  return ctx.report;
}

StudyReport run_study(const ExperimentConfig& config) {
  switch (config.study) {
    case StudyKind::sampling_rate:
      return run_sampling_rate_study(config);
    case StudyKind::dobrushin:
      return run_dobrushin_study(config);
    case StudyKind::chaos:
      return run_chaos_study(config);
    case StudyKind::multiwise_limit:
      return run_multiwise_limit_study(config);
    case StudyKind::joint_limit:
      return run_joint_limit_study(config);
    case StudyKind::monokinetic_check:
      return run_monokinetic_check(config);
  }
  throw ConfigError("unknown study");
}

}  // namespace mwlab
