// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "floqgap/time_periodic.hpp"

namespace floqgap {

// Stroboscopically sampled <H>_Psi series. Times are in units of driving
// periods of V.
struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> norm_drifts;  // ||psi|| - 1 per sample
  double psi_norm_drift = 0.0;      // max |norm_drifts| over the run
  double unitarity_drift = 0.0;     // ||Phi_T^* Phi_T - I|| of the period map
  int steps_per_period = 0;
  std::string config_ref;
};

struct PropagationOptions {
  int steps_per_period = 64;
  bool intra_period_sampling = false;  // marching path, samples inside periods
  int samples_per_period = 8;          // only with intra_period_sampling
  double norm_drift_abort = 1e-6;
};

// Midpoint-exponential (commutator-free second-order Magnus) propagation of
// psi0 under H + V(t). The steps_per_period substep generators are Hermitian
// and diagonalized once each; the composed period map is snapped back to the
// unitary group (Newton polar iteration, correction far below the O(h^2)
// integrator error) before the stroboscopic sweep so rounding does not
// masquerade as norm loss.
EnergyTrace propagate(const TimePeriodicOperator& V, const Vector& psi0, long n_periods,
                      const PropagationOptions& options = {});

// Initial-state library. All states are normalized.
Vector make_ground_state(const SpectralBasis& basis);
Vector make_gaussian_state(const SpectralBasis& basis, double center_block, double width);

// |<Psi, H(0) Psi>| + t * sup_s ||dV/ds|| ||Psi||^2, with the slope converted
// to the trace's period time unit. Comparisons against <H> traces carry the
// extra sup_t ||V(t)|| slack explicitly.
struct TrivialBound {
  double intercept = 0.0;
  double slope_per_period = 0.0;
  double v_sup = 0.0;  // sup_t ||V(t)||, the comparison slack
  double operator()(double t_periods) const { return intercept + slope_per_period * t_periods; }
};

TrivialBound trivial_bound(const TimePeriodicOperator& V, const Vector& psi0, int grid_points = 64);

enum class FitMethod { tail_lsq, envelope_lsq };

struct ExponentFit {
  double sigma_fit = 0.0;
  double ci_halfwidth = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  FitMethod method = FitMethod::envelope_lsq;
};

// Log-log least squares over the trace tail. window_fraction is the fitted
// fraction of the log-time span; pass a nonpositive value for the default
// window of one decade (clipped to the trace range). envelope_lsq replaces
// values by their running maxima first, since an O(t^sigma) statement bounds
// an envelope rather than a pointwise power law.
ExponentFit fit_exponent(const EnergyTrace& trace, double window_fraction = -1.0,
                         FitMethod method = FitMethod::envelope_lsq);

// Plain linear least squares of values against times over the same tail
// window; used for slope comparisons against the trivial bound.
double fit_linear_slope(const EnergyTrace& trace, double window_fraction = -1.0);

// sigma = 2 alpha / (2 ceil(p-1) (1-alpha) - 1); requires
// ceil(p-1) > 1/(2(1-alpha)).
double theoretical_sigma(double alpha, double p);

// Circle-model variant sigma = 2 alpha / (2 (k-2)(1-alpha) - 1).
double howland_sigma(double alpha, int k);

// Row-wise decay check of ||P_n B Q_n H^{-1/2}||.
struct OffdiagDecayReport {
  std::vector<double> row_norms;   // indexed by block n
  double fitted_exponent = 0.0;    // slope of -log(row) vs log(n)
  double smallest_constant = 0.0;  // min c with row_n <= c ||B|| / n^{2 delta + alpha/2}
  double mu = 0.0;                 // 2 delta
  bool mu_above_half = false;
  bool nontrivial = false;  // mu > 1/2 + alpha
};

OffdiagDecayReport check_offdiag_decay(const BlockOperator& B, double p, double delta);

}  // namespace floqgap
