// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mwlab/integrator.hpp"
#include "mwlab/interaction.hpp"
#include "mwlab/kernels.hpp"
#include "mwlab/measures.hpp"

namespace mwlab {

enum class StudyKind {
  sampling_rate,
  dobrushin,
  chaos,
  multiwise_limit,
  joint_limit,
  monokinetic_check,
};

std::string_view study_name(StudyKind kind);
StudyKind parse_study(std::string_view name);  // ConfigError

// rhs_mode = "auto" picks closed_form when the kernel has one, exact otherwise.
enum class RhsChoice { automatic, exact, monte_carlo, closed_form };

struct ExperimentConfig {
  StudyKind study = StudyKind::multiwise_limit;
  std::string name;  // output file stem; defaults to the study name

  std::string kernel = "quadratic_statistic";
  KernelParams kernel_params;

  std::vector<std::size_t> m{1};
  std::vector<std::size_t> N;
  std::size_t S = 1000;  // Monte-Carlo tuples per head
  std::size_t R = 1;     // Liouville runs per ensemble
  std::size_t k = 1;
  double p = 1.0;
  double q = 1.0;  // may be +infinity
  double z = 4.0;
  std::size_t N_ref = 4096;
  double alpha = 0.4;
  std::size_t seeds = 5;          // seed replicates
  std::size_t label_nodes = 64;   // J for continuous label laws
  std::size_t validation_probes = 256;

  InitialDatumSpec initial;
  double T = 1.0;
  double dt = 0.01;
  std::vector<double> dt_list;  // monokinetic check sweep
  Scheme scheme = Scheme::rk4;
  RhsChoice rhs = RhsChoice::automatic;
  std::vector<std::string> test_functions{"constant", "affine", "sinusoidal"};

  std::uint64_t seed = 0;
  std::string output = "out";
  std::size_t threads = 0;  // 0 = leave the process default

  std::string stem() const { return name.empty() ? std::string(study_name(study)) : name; }
  RhsMode rhs_mode(const InteractionKernel& kernel, std::uint64_t mc_seed) const;
  // Cross-field checks; ConfigError on the first violation.
  void validate() const;
  // TOML text equivalent to this config (used as the metadata echo).
  std::string to_toml() const;
};

ExperimentConfig parse_config(std::string_view toml_text, std::string_view source = "<string>");
ExperimentConfig load_config(const std::string& path);  // IoError / ConfigError

}  // namespace mwlab
