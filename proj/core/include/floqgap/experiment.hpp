// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "floqgap/models.hpp"
#include "floqgap/serialization.hpp"

namespace floqgap {

// Process exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitBoundViolation = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNumerical = 4;

struct PipelineSection {
  double p = 3.5;
  int q = 0;  // 0 = default ceil(p-2)
  double tol = 1e-12;
  bool strict = true;
  bool commuting = false;  // route through the commuting-case transform
};

struct EvolutionSection {
  long n_periods = 1000;
  int steps_per_period = 64;
  std::string psi0 = "ground";  // ground | gaussian | file:PATH
  double gaussian_center = 1.0;
  double gaussian_width = 2.0;
  std::uint64_t seed = 0;
  bool intra_period_sampling = false;
  int samples_per_period = 8;
  double window_fraction = -1.0;  // <=0: last decade
  std::string fit_method = "envelope_lsq";
};

struct OutputSection {
  std::string dir = ".";
  std::vector<std::string> formats{"json", "csv"};
  bool emit_gnuplot = false;
};

struct ExperimentConfig {
  int spec_version = 1;
  std::string model_kind;  // "howland" | "discrete"
  HowlandModel howland;
  DiscreteModel discrete;
  PipelineSection pipeline;
  EvolutionSection evolution;
  OutputSection output;

  static ExperimentConfig from_json(const Json& j);
  static ExperimentConfig from_file(const std::string& path);
  Json echo() const;  // full normalized echo for reports
};

struct BuiltModel {
  BasisPtr basis;
  TimePeriodicOperator V;
  GapCertificate certificate;
  Json metadata;  // model-specific extras (shift, phi expansion, ...)
};

BuiltModel build_model(const ExperimentConfig& config);

Vector make_initial_state(const ExperimentConfig& config, const SpectralBasis& basis);

struct CommandOutcome {
  Json report;
  int exit_code = kExitPass;
};

CommandOutcome cmd_norms(const ExperimentConfig& config);
CommandOutcome cmd_certify_gaps(const ExperimentConfig& config);
CommandOutcome cmd_antiadiabatic(const ExperimentConfig& config);
CommandOutcome cmd_diagonalize(const ExperimentConfig& config);
CommandOutcome cmd_reduce(const ExperimentConfig& config, const std::string& out_dir);
CommandOutcome cmd_evolve(const ExperimentConfig& config, const std::string& out_dir);
CommandOutcome cmd_fit(const std::string& trace_csv, double window_fraction,
                       const std::string& method);
CommandOutcome cmd_threshold(const ExperimentConfig& config);

// Runs fn, mapping thrown library errors onto the exit-code convention and
// an {"error": {...}} report.
CommandOutcome run_guarded(const std::function<CommandOutcome()>& fn);

}  // namespace floqgap
