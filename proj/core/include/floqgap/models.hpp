// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "floqgap/time_periodic.hpp"

namespace floqgap {

// One term v_{j,k} e^{i j theta} e^{i k omega t} of the circle potential.
struct PotentialCoeff {
  int j = 0;  // spatial harmonic
  int k = 0;  // time harmonic
  Complex value;
};

// H = |p|^alpha + eps v(theta,t) on the circle, realized on the exponential
// modes e^{i j theta}, |j| <= N, with the spectrum shifted by a constant so
// that E_1 > 0 holds as the block calculus assumes.
struct HowlandModel {
  double alpha = 0.5;
  int N = 256;  // maximal momentum block; dimension is 2N+1
  double epsilon = 0.0;
  std::vector<PotentialCoeff> potential;
  int k_smooth = 3;
  double shift = 1.0;
  double period = 6.283185307179586476925286766559;  // 2 pi

  void validate() const;
  bool zero_time_average() const;  // all (j,0) coefficients vanish
};

struct HowlandOperators {
  BasisPtr basis;          // blocks n = 0..N mapped to 1..N+1
  TimePeriodicOperator V;  // eps * v assembled into cosine-pair blocks
  GapCertificate certificate;
};

HowlandOperators build_howland(const HowlandModel& model);

// Smoothness-decay report: measured ||eps v||_{k,0} against the
// integration-by-parts bound 2 sqrt(2 pi) ||eps d^k v / d theta^k||_inf.
struct CkDecayReport {
  int k = 0;
  double measured_norm = 0.0;
  double bound = 0.0;
  double sup_derivative = 0.0;
  bool pass = false;
};

CkDecayReport verify_ck_decay(const HowlandModel& model, int theta_grid = 2048, int time_grid = 64);

// H(t) = -Delta + lambda a(t) V on the discrete half-line, V(n) = n^alpha,
// with drive a(t) = a0 + sum_m (a_cos[m-1] cos(m w t) + a_sin[m-1] sin(m w t)).
struct DiscreteModel {
  double alpha = 0.5;
  int N = 256;
  double lambda = 1.0;
  double period = 6.283185307179586476925286766559;
  double a0 = 1.0;
  std::vector<double> a_cos;
  std::vector<double> a_sin;
  int phi_max_harmonics = 64;
  double phi_residual_tol = 1e-10;

  void validate() const;
};

// The monotone time substitution b(t) = lambda int_0^t a and its inverse,
// translating between the lab frame H(t) and the reduced frame
// H_1(t) = V - phi(t) Delta.
class TimeReparam {
public:
  TimeReparam(double lambda, double period, double a0, std::vector<double> a_cos,
              std::vector<double> a_sin);

  double a(double t) const;
  double b(double t) const;          // exact integral of the Fourier series
  double b_inverse(double tau) const;  // monotone bisection
  double kappa() const { return a0_ * period_; }
  double lambda() const { return lambda_; }
  double a_min() const { return a_min_; }

private:
  double lambda_, period_, a0_;
  std::vector<double> a_cos_, a_sin_;
  double a_min_, a_max_;
};

struct DiscreteOperators {
  BasisPtr basis;
  TimePeriodicOperator V;  // -phi(t) Delta, (lambda kappa)-periodic
  TimeReparam reparam;
  GapCertificate certificate;
  double kappa = 0.0;
  double phi_residual = 0.0;  // measured sup-norm residual of the cutoff
  int phi_harmonics = 0;
};

DiscreteOperators build_discrete(const DiscreteModel& model);

}  // namespace floqgap
