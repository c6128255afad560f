// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "floqgap/antiadiabatic.hpp"
#include "floqgap/sylvester.hpp"
#include "floqgap/time_periodic.hpp"

namespace floqgap {

// Phi(x) = sum_{k>=1} k x^k / (k+1)! = e^x - (e^x - 1)/x, with a series
// evaluation below x = 1e-4 to dodge cancellation. Phi(0) = 0, Phi(1) = 1,
// strictly increasing, Phi(x) < x on (0,1).
double phi(double x);

struct DiagonalizationOptions {
  double tol = 1e-12;        // stop when ||V_s||_{r,i gamma} < tol
  double x_floor = 1e-14;    // alternate stop on the contraction variable
  int max_steps = 60;
  int series_cap = 40;
  double series_tol = 1e-12;  // relative cutoff for the Phi(ad_W) series
  bool strict = true;
  double divisor_floor = 1e-10;
  bool debug_crosscheck = false;  // compare the series update against dense conjugation
};

struct StepRecord {
  int s = 0;
  double x = 0.0;
  double norm_G = 0.0;  // ||G_s||_{inf,gamma}
  double norm_V = 0.0;  // ||V_s||_{r,i gamma}
  double norm_W = 0.0;  // ||W_s||_{r+1,(i-1) gamma}
  std::map<std::string, std::string> bound_checks;  // pass | fail | warn
};

struct DiagonalizationState {
  int steps = 0;
  double M = 0.0;  // c_H / (2 pi C_{r+1})
  std::vector<double> x_history;
  std::vector<StepRecord> records;
  std::vector<std::string> warnings;
  bool converged = false;
  bool smallness_ok = false;
  double final_offdiag_class_norm = 0.0;
  double final_offdiag_spectral_norm = 0.0;
  double unitarity_defect = 0.0;
  double norm_A = 0.0;      // ||A||_{inf,gamma}
  double norm_A_rhs = 0.0;  // 2 (||Y||_{inf,gamma} + ||Zbar||_{r,i gamma})
};

struct DiagonalizationResult {
  BlockOperator U;
  BlockOperator A;
  DiagonalizationState state;
};

// Iteratively conjugates H + Y + Zbar into H + A by solving the commutator
// equation [H + G_s, W_s] = V_s and applying e^{W_s}, with the contraction
// bookkeeping x_s = ||V_s|| / M. Y diagonal Hermitian, Zbar Hermitian,
// r > 2, i >= 1.
DiagonalizationResult progressive_diagonalize(const BlockOperator& Y, const BlockOperator& Z_bar,
                                              double r, int i, const GapCertificate& cert,
                                              const DiagonalizationOptions& options = {});

struct ConjugationResult {
  TimePeriodicOperator family;
  BoundCheck bound;  // ||U X U^*|| <= exp(2 C_r / C_{r+1}) ||X|| in (r-1,(i+1)gamma)
};

// Harmonic-wise conjugation U Xhat_k U^*.
ConjugationResult conjugate_family(const BlockOperator& U, const TimePeriodicOperator& X, double r,
                                   int i, int norm_grid = 64);

// T-periodic unitary family composed of pipeline factors e^{-iF_i(t)} U_i^*.
class UnitaryFamily {
public:
  struct Factor {
    TimePeriodicOperator F;
    BlockOperator U;
  };

  UnitaryFamily(BasisPtr basis, double period) : basis_(std::move(basis)), period_(period) {}

  void append_step(TimePeriodicOperator F, BlockOperator U);
  BlockOperator evaluate(double t) const;

  const std::vector<Factor>& factors() const { return factors_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  double period() const { return period_; }

private:
  BasisPtr basis_;
  double period_;
  std::vector<Factor> factors_;
};

struct PipelineStep {
  int i = 0;
  double r = 0.0;
  double norm_A_prev = 0.0;
  double norm_B_prev = 0.0;
  double step_threshold = 0.0;  // c_H / (4 pi C_{p-i+2})
  double norm_A = 0.0;
  double norm_B = 0.0;
  double bound_A_rhs = 0.0;  // 2 (||A_{i-1}|| + ||B_{i-1}||)
  double bound_B_rhs = 0.0;  // composed bound on ||B_i||_{p-i,(i+1)gamma}
  double aa_bound_rhs = 0.0;
  double aa_achieved = 0.0;
  int diag_steps = 0;
  std::map<std::string, std::string> checks;
};

struct PipelineResult {
  UnitaryFamily J;
  BlockOperator A;
  TimePeriodicOperator B;
  int q = 0;
  double epsilon_used = 0.0;
  double epsilon_threshold = 0.0;
  std::vector<PipelineStep> per_step;
  std::vector<std::string> warnings;
};

struct PipelineOptions {
  DiagonalizationOptions diag;
  AntiAdiabaticOptions aa;
  bool strict = true;
};

// q rounds of anti-adiabatic transform + progressive diagonalization,
// carrying J_i(t) = J_{i-1}(t) (U_i e^{iF_i(t)})^*. Requires 1 <= q < p-1;
// q <= 0 selects the default ceil(p-2).
PipelineResult reduce_floquet(const TimePeriodicOperator& V, double p, int q,
                              const GapCertificate& cert, const PipelineOptions& options = {});

// Admissible perturbation size: min_i F_i^{-1}(c_H / (4 pi C_{p-i+2})) with
// F_i built from the composed step-growth functions phi_j. Bisection to
// 1e-12 relative.
double epsilon_threshold(double p, int q, double T, double c_H, double C_H);

// e^W for skew-Hermitian W, unitary to machine precision.
Matrix exp_skew_hermitian(const Matrix& W);

// e^{i s H} for Hermitian H.
Matrix exp_i_hermitian(const Matrix& H, double s);

}  // namespace floqgap
