// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>

#include "floqgap/block_operator.hpp"

namespace floqgap {

// A T-periodic operator family given as a finite Fourier series
//   Z(t) = sum_{|k| <= K} Zhat_k e^{i k omega t},  omega = 2 pi / T.
// Hermitian families satisfy Zhat_{-k} = Zhat_k^*. The Floquet derivative
// D = -i d/dt is never assembled; it acts on this representation as
// multiplication by k omega per harmonic.
class TimePeriodicOperator {
public:
  TimePeriodicOperator(double period, std::map<int, BlockOperator> coefficients,
                       bool hermitian_family);

  static TimePeriodicOperator constant(double period, const BlockOperator& op);
  static TimePeriodicOperator zero(double period, BasisPtr basis);

  double period() const { return period_; }
  double omega() const;
  int max_harmonic() const;
  bool hermitian_family() const { return hermitian_family_; }
  const std::map<int, BlockOperator>& coefficients() const { return coefficients_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const SpectralBasis& basis() const { return *basis_; }

  bool has_harmonic(int k) const { return coefficients_.count(k) > 0; }
  const BlockOperator& coefficient(int k) const;

  BlockOperator evaluate(double t) const;

private:
  double period_;
  std::map<int, BlockOperator> coefficients_;
  bool hermitian_family_;
  BasisPtr basis_;
};

// Zbar = (1/T) int_0^T Z(t) dt, i.e. the k = 0 coefficient.
BlockOperator time_average(const TimePeriodicOperator& z);

// F(t) = int_0^t (Z(s) - Zbar) ds; T-periodic with F(0) = 0, Hermitian when
// Z is.
TimePeriodicOperator primitive_of_fluctuation(const TimePeriodicOperator& z);

TimePeriodicOperator time_derivative(const TimePeriodicOperator& z);

// max over an equispaced grid of class_norm(Z(t), params).
double family_class_norm(const TimePeriodicOperator& z, const ClassParams& params,
                         int grid_points = 64);

// max over an equispaced grid of the assembled 2-norm of Z(t).
double family_spectral_norm(const TimePeriodicOperator& z, int grid_points = 64);

TimePeriodicOperator operator+(const TimePeriodicOperator& a, const TimePeriodicOperator& b);
TimePeriodicOperator operator*(double c, const TimePeriodicOperator& a);

}  // namespace floqgap
