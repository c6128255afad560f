// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/time_periodic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "floqgap/errors.hpp"

namespace floqgap {

TimePeriodicOperator::TimePeriodicOperator(double period, std::map<int, BlockOperator> coefficients,
                                           bool hermitian_family)
    : period_(period), coefficients_(std::move(coefficients)), hermitian_family_(hermitian_family) {
  if (!(period_ > 0.0)) throw ValidationError("TimePeriodicOperator: period must be positive");
  if (coefficients_.empty()) throw ValidationError("TimePeriodicOperator: no coefficients");
  basis_ = coefficients_.begin()->second.basis_ptr();
  for (const auto& [k, op] : coefficients_) {
    if (!same_basis(op, coefficients_.begin()->second)) {
      throw ValidationError("TimePeriodicOperator: coefficients use different bases");
    }
  }
  if (hermitian_family_) {
    const double scale = [&] {
      double s = 1.0;
      for (const auto& [k, op] : coefficients_) s = std::max(s, max_abs_entry(op));
      return s;
    }();
    for (const auto& [k, op] : coefficients_) {
      auto it = coefficients_.find(-k);
      if (it == coefficients_.end()) {
        throw ValidationError("TimePeriodicOperator: harmonic " + std::to_string(-k) +
                              " missing for a Hermitian family");
      }
      const double dev =
          (op.matrix() - Matrix(it->second.matrix().adjoint())).cwiseAbs().maxCoeff();
      if (dev > 1e-12 * scale) {
        throw ValidationError("TimePeriodicOperator: Zhat_{-k} != Zhat_k^* at k = " +
                              std::to_string(k));
      }
    }
  }
}

TimePeriodicOperator TimePeriodicOperator::constant(double period, const BlockOperator& op) {
  std::map<int, BlockOperator> c;
  c.emplace(0, op);
  return TimePeriodicOperator(period, std::move(c), op.hermitian());
}

TimePeriodicOperator TimePeriodicOperator::zero(double period, BasisPtr basis) {
  return constant(period, BlockOperator::zero(std::move(basis)));
}

double TimePeriodicOperator::omega() const { return 2.0 * std::numbers::pi / period_; }

int TimePeriodicOperator::max_harmonic() const {
  int k_max = 0;
  for (const auto& [k, op] : coefficients_) k_max = std::max(k_max, std::abs(k));
  return k_max;
}

const BlockOperator& TimePeriodicOperator::coefficient(int k) const {
  auto it = coefficients_.find(k);
  if (it == coefficients_.end()) {
    throw ValidationError("TimePeriodicOperator: no harmonic " + std::to_string(k));
  }
  return it->second;
}

BlockOperator TimePeriodicOperator::evaluate(double t) const {
  Matrix sum = Matrix::Zero(basis_->dim(), basis_->dim());
  const double w = omega();
  bool diagonal = true;
  for (const auto& [k, op] : coefficients_) {
    sum += std::exp(Complex(0.0, k * w * t)) * op.matrix();
    diagonal = diagonal && op.diagonal();
  }
  return BlockOperator(basis_, std::move(sum), hermitian_family_, diagonal);
}

BlockOperator time_average(const TimePeriodicOperator& z) {
  if (z.has_harmonic(0)) return z.coefficient(0);
  return BlockOperator::zero(z.basis_ptr());
}

TimePeriodicOperator primitive_of_fluctuation(const TimePeriodicOperator& z) {
  const double w = z.omega();
  std::map<int, BlockOperator> c;
  Matrix f0 = Matrix::Zero(z.basis().dim(), z.basis().dim());
  for (const auto& [k, op] : z.coefficients()) {
    if (k == 0) continue;
    const Complex inv(0.0, -1.0 / (k * w));  // 1/(i k w)
    c.emplace(k, inv * op);
    f0 -= inv * op.matrix();  // fixes F(0) = 0
  }
  c.emplace(0, BlockOperator(z.basis_ptr(), std::move(f0), z.hermitian_family(), false));
  return TimePeriodicOperator(z.period(), std::move(c), z.hermitian_family());
}

TimePeriodicOperator time_derivative(const TimePeriodicOperator& z) {
  const double w = z.omega();
  std::map<int, BlockOperator> c;
  for (const auto& [k, op] : z.coefficients()) c.emplace(k, Complex(0.0, k * w) * op);
  if (c.empty() || c.count(0) == 0) c.emplace(0, BlockOperator::zero(z.basis_ptr()));
  return TimePeriodicOperator(z.period(), std::move(c), z.hermitian_family());
}

double family_class_norm(const TimePeriodicOperator& z, const ClassParams& params,
                         int grid_points) {
  if (grid_points < 1) throw ValidationError("family_class_norm: need at least one grid point");
  double sup = 0.0;
  for (int g = 0; g < grid_points; ++g) {
    sup = std::max(sup, class_norm(z.evaluate(z.period() * g / grid_points), params));
  }
  return sup;
}

double family_spectral_norm(const TimePeriodicOperator& z, int grid_points) {
  double sup = 0.0;
  for (int g = 0; g < grid_points; ++g) {
    sup = std::max(sup, spectral_norm(z.evaluate(z.period() * g / grid_points)));
  }
  return sup;
}

TimePeriodicOperator operator+(const TimePeriodicOperator& a, const TimePeriodicOperator& b) {
  if (a.period() != b.period()) throw ValidationError("TimePeriodicOperator: period mismatch");
  std::map<int, BlockOperator> c = a.coefficients();
  for (const auto& [k, op] : b.coefficients()) {
    auto it = c.find(k);
    if (it == c.end()) {
      c.emplace(k, op);
    } else {
      it->second = it->second + op;
    }
  }
  return TimePeriodicOperator(a.period(), std::move(c),
                              a.hermitian_family() && b.hermitian_family());
}

TimePeriodicOperator operator*(double c, const TimePeriodicOperator& a) {
  std::map<int, BlockOperator> out;
  for (const auto& [k, op] : a.coefficients()) out.emplace(k, c * op);
  return TimePeriodicOperator(a.period(), std::move(out), a.hermitian_family());
}

}  // namespace floqgap
