// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "mwlab/config.hpp"
#include "mwlab/report.hpp"

namespace mwlab {

// W_p between N i.i.d. draws of f0 and an independent reference of max(N)
// draws (resampled to N), averaged over seeds; slope fitted against N.
StudyReport run_sampling_rate_study(const ExperimentConfig& config);

// W_p at t = T between an N-agent run and the Vlasov flow of an N_ref-atom
// surrogate of f0. extra = the same distance at t = 0.
StudyReport run_dobrushin_study(const ExperimentConfig& config);

// W_p^[q] at t = T between symmetrized k-marginal samples of R runs and R
// product samples of the reference Vlasov solution. extra = the two-sample
// bias (distance between two independent reference sample sets).
StudyReport run_chaos_study(const ExperimentConfig& config);

// sup over grid times of the l-infinity node distance between the order-m
// and the limit opinion fields; slope fitted against m. Writes traces.
StudyReport run_multiwise_limit_study(const ExperimentConfig& config);

// max over grid times of |first-moment pairing - limit pairing| with
// m = m_schedule(N), one row per (test function, N); extra = test function.
StudyReport run_joint_limit_study(const ExperimentConfig& config);

// l-infinity distance at T between the Vlasov atoms and the opinion field on
// the same nodes, per dt. extra = opinion-field error against dt_min / 4.
StudyReport run_monokinetic_check(const ExperimentConfig& config);

StudyReport run_study(const ExperimentConfig& config);

// Test-function catalog on labels: zero, constant (1), affine (x_0),
// sinusoidal (sin(2 pi x_0)). ConfigError for unknown names.
double test_function(std::string_view name, ConstVec label);

}  // namespace mwlab
