// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "floqgap/time_periodic.hpp"

namespace floqgap {

struct AntiAdiabaticOptions {
  double tol = 1e-12;        // relative series stopping tolerance
  int max_terms = 40;        // hard cap on commutator-series terms
  int grid_points = 0;       // 0 = auto: max(64, 4 * harmonic_cutoff + 2)
  int norm_grid = 64;        // grid for family class norms
  int commutation_grid = 16; // grid for the commuting-case check
  double commutation_tol = 1e-12;
};

struct AntiAdiabaticResult {
  TimePeriodicOperator F;          // primitive of the fluctuation of Z
  BlockOperator Z_bar;             // time average of Z
  TimePeriodicOperator Z_diamond;  // transformed perturbation
  int series_terms_used = 0;       // max over grid times
  double bound_rhs = 0.0;          // certified norm bound on Z_diamond
  double achieved_norm = 0.0;      // measured ||Z_diamond||_{r-1,(i+1)gamma}
  double input_norm = 0.0;         // ||Z||_{r,i gamma}
  double discarded_energy = 0.0;   // re-expansion residual, max 2-norm over grid
  double hermiticity_deviation = 0.0;
  int harmonic_cutoff = 0;
  bool bound_ok = false;           // achieved <= rhs (with numeric slack)
  bool bound_within_1pct = false;  // achieved <= 1.01 * rhs
  std::vector<double> term_norms;  // max over grid of the j-th term's class norm
  double F_norm = 0.0;             // ||F||_{r,i gamma}
};

// The gauge transform K -> e^{iF(t)} K e^{-iF(t)} with F the primitive of
// Z - Zbar. Trades one unit of off-diagonal decay for one gamma of diagonal
// decay: Z in Y(r, i gamma) maps to Z_diamond in Y(r-1, (i+1) gamma), plus
// the untouched average Zbar. Y must be diagonal Hermitian, Z a Hermitian
// family, r > 2, i >= 1.
AntiAdiabaticResult anti_adiabatic_transform(const BlockOperator& Y, const TimePeriodicOperator& Z,
                                             double r, int i, const GapCertificate& cert,
                                             const AntiAdiabaticOptions& options = {});

// Variant for i = 0 under pairwise commutation [Z(t), Z(s)] = 0, verified on
// a time grid. Z is measured in Y(r, 0); the series collapses to
// X = ad_F(H + Y).
AntiAdiabaticResult anti_adiabatic_commuting(const BlockOperator& Y, const TimePeriodicOperator& Z,
                                             double r, const GapCertificate& cert,
                                             const AntiAdiabaticOptions& options = {});

}  // namespace floqgap
