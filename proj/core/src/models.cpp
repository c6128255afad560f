// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include "floqgap/errors.hpp"

namespace floqgap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex find_coeff(const std::vector<PotentialCoeff>& coeffs, int j, int k) {
  Complex sum = 0.0;
  for (const auto& c : coeffs) {
    if (c.j == j && c.k == k) sum += c.value;
  }
  return sum;
}

}  // namespace

void HowlandModel::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("HowlandModel: alpha must lie in (0,1)");
  }
  if (N < 1) throw ValidationError("HowlandModel: N must be >= 1");
  if (!(period > 0.0)) throw ValidationError("HowlandModel: period must be positive");
  if (!(shift > 0.0)) {
    throw ValidationError(
        "HowlandModel: shift must be positive so that the shifted spectrum has E_1 > 0");
  }
  if (k_smooth < 1) throw ValidationError("HowlandModel: k_smooth must be >= 1");
  // Real-valuedness: v_{-j,-k} = conj(v_{j,k}).
  for (const auto& c : potential) {
    const Complex mirror = find_coeff(potential, -c.j, -c.k);
    if (std::abs(mirror - std::conj(find_coeff(potential, c.j, c.k))) > 1e-12) {
      throw ValidationError("HowlandModel: potential is not real-valued at (j,k) = (" +
                            std::to_string(c.j) + "," + std::to_string(c.k) + ")");
    }
  }
}

bool HowlandModel::zero_time_average() const {
  for (const auto& c : potential) {
    if (c.k == 0 && std::abs(c.value) > 0.0) return false;
  }
  return true;
}

namespace {

// Coordinate of the exponential mode e^{i m theta} in the block layout:
// block 1 = {0}, block n+1 = {-n, +n} for n >= 1.
int mode_index(int m) {
  if (m == 0) return 0;
  const int n = std::abs(m);
  return 2 * n - 1 + (m > 0 ? 1 : 0);
}

}  // namespace

HowlandOperators build_howland(const HowlandModel& model) {
  model.validate();
  const int blocks = model.N + 1;
  std::vector<double> ev(static_cast<size_t>(blocks));
  std::vector<int> mult(static_cast<size_t>(blocks), 2);
  for (int n = 0; n <= model.N; ++n) {
    ev[static_cast<size_t>(n)] = std::pow(static_cast<double>(n), model.alpha) + model.shift;
  }
  mult[0] = 1;
  BasisPtr basis = std::make_shared<const SpectralBasis>(std::move(ev), std::move(mult), model.alpha);
  const int dim = basis->dim();  // 2N+1

  // Group the potential by time harmonic; each spatial harmonic j is an
  // exact shift of exponential modes.
  std::map<int, Matrix> harmonics;
  for (const auto& c : model.potential) {
    auto [it, inserted] = harmonics.try_emplace(c.k, Matrix::Zero(dim, dim));
    Matrix& mat = it->second;
    for (int m = -model.N; m <= model.N; ++m) {
      const int target = m + c.j;
      if (target < -model.N || target > model.N) continue;  // truncated
      mat(mode_index(target), mode_index(m)) += model.epsilon * c.value;
    }
  }
  if (harmonics.empty()) harmonics.emplace(0, Matrix::Zero(dim, dim));

  std::map<int, BlockOperator> coeffs;
  for (auto& [k, mat] : harmonics) {
    if (harmonics.count(-k) == 0) {
      throw ValidationError("build_howland: time harmonic " + std::to_string(-k) +
                            " missing; potential is not real-valued");
    }
    coeffs.emplace(k, BlockOperator(basis, std::move(mat), /*hermitian=*/k == 0));
  }
  TimePeriodicOperator V(model.period, std::move(coeffs), /*hermitian_family=*/true);
  return HowlandOperators{basis, std::move(V), certify_gaps(*basis)};
}

CkDecayReport verify_ck_decay(const HowlandModel& model, int theta_grid, int time_grid) {
  model.validate();
  CkDecayReport report;
  report.k = model.k_smooth;

  // sup over (theta, t) of |eps * d^k v / d theta^k|.
  double sup = 0.0;
  for (int gt = 0; gt < time_grid; ++gt) {
    const double t = model.period * gt / time_grid;
    for (int gs = 0; gs < theta_grid; ++gs) {
      const double theta = kTwoPi * gs / theta_grid;
      Complex val = 0.0;
      for (const auto& c : model.potential) {
        const Complex deriv = std::pow(Complex(0.0, c.j), model.k_smooth);
        val += deriv * c.value *
               std::exp(Complex(0.0, c.j * theta + c.k * kTwoPi / model.period * t));
      }
      sup = std::max(sup, std::abs(model.epsilon * val));
    }
  }
  report.sup_derivative = sup;
  report.bound = 2.0 * std::sqrt(kTwoPi) * sup;

  const HowlandOperators ops = build_howland(model);
  report.measured_norm =
      family_class_norm(ops.V, {static_cast<double>(model.k_smooth), 0.0}, time_grid);
  report.pass = report.measured_norm <= report.bound * (1.0 + 1e-12);
  return report;
}

void DiscreteModel::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("DiscreteModel: alpha must lie in (0,1)");
  }
  if (N < 2) throw ValidationError("DiscreteModel: N must be >= 2");
  if (!(lambda > 0.0)) throw ValidationError("DiscreteModel: lambda must be positive");
  if (!(period > 0.0)) throw ValidationError("DiscreteModel: period must be positive");
  if (phi_max_harmonics < 1 || !(phi_residual_tol > 0.0)) {
    throw ValidationError("DiscreteModel: invalid phi expansion controls");
  }
}

TimeReparam::TimeReparam(double lambda, double period, double a0, std::vector<double> a_cos,
                         std::vector<double> a_sin)
    : lambda_(lambda), period_(period), a0_(a0), a_cos_(std::move(a_cos)), a_sin_(std::move(a_sin)) {
  a_min_ = std::numeric_limits<double>::infinity();
  a_max_ = -a_min_;
  constexpr int kGrid = 1024;
  for (int g = 0; g < kGrid; ++g) {
    const double v = a(period_ * g / kGrid);
    a_min_ = std::min(a_min_, v);
    a_max_ = std::max(a_max_, v);
  }
  if (!(a_min_ > 0.0)) {
    throw PositivityViolated("TimeReparam: a(t) <= 0 detected, min = " + std::to_string(a_min_));
  }
}

double TimeReparam::a(double t) const {
  const double w = kTwoPi / period_;
  double v = a0_;
  for (size_t m = 0; m < a_cos_.size(); ++m) v += a_cos_[m] * std::cos((m + 1) * w * t);
  for (size_t m = 0; m < a_sin_.size(); ++m) v += a_sin_[m] * std::sin((m + 1) * w * t);
  return v;
}

double TimeReparam::b(double t) const {
  const double w = kTwoPi / period_;
  double v = a0_ * t;
  for (size_t m = 0; m < a_cos_.size(); ++m) {
    v += a_cos_[m] * std::sin((m + 1) * w * t) / ((m + 1) * w);
  }
  for (size_t m = 0; m < a_sin_.size(); ++m) {
    v += a_sin_[m] * (1.0 - std::cos((m + 1) * w * t)) / ((m + 1) * w);
  }
  return lambda_ * v;
}

double TimeReparam::b_inverse(double tau) const {
  // b is strictly increasing with slope in [lambda a_min, lambda a_max].
  double lo, hi;
  if (tau >= 0.0) {
    lo = tau / (lambda_ * a_max_) - 1.0;
    hi = tau / (lambda_ * a_min_) + 1.0;
  } else {
    lo = tau / (lambda_ * a_min_) - 1.0;
    hi = tau / (lambda_ * a_max_) + 1.0;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (b(mid) < tau ? lo : hi) = mid;
    if (hi - lo <= 1e-14 * std::max(1.0, std::abs(tau))) break;
  }
  return 0.5 * (lo + hi);
}

DiscreteOperators build_discrete(const DiscreteModel& model) {
  model.validate();
  TimeReparam reparam(model.lambda, model.period, model.a0, model.a_cos, model.a_sin);
  const double kappa = reparam.kappa();
  const double phi_period = model.lambda * kappa;

  // phi(t) = 1 / (lambda a(b^{-1}(t))), expanded over its own period.
  constexpr int kSamples = 4096;
  std::vector<double> phi_samples(kSamples);
  for (int g = 0; g < kSamples; ++g) {
    const double t = phi_period * g / kSamples;
    phi_samples[static_cast<size_t>(g)] = 1.0 / (model.lambda * reparam.a(reparam.b_inverse(t)));
  }
  const int half = kSamples / 2;
  std::vector<Complex> spectrum(static_cast<size_t>(half + 1));
  for (int k = 0; k <= half; ++k) {
    Complex c = 0.0;
    for (int g = 0; g < kSamples; ++g) {
      c += phi_samples[static_cast<size_t>(g)] *
           std::exp(Complex(0.0, -kTwoPi * k * g / kSamples));
    }
    spectrum[static_cast<size_t>(k)] = c / static_cast<double>(kSamples);
  }
  // Smallest cutoff whose discarded spectrum is below tolerance.
  int cutoff = model.phi_max_harmonics;
  for (int K = 0; K <= model.phi_max_harmonics; ++K) {
    double tail = 0.0;
    for (int k = K + 1; k <= half; ++k) tail += 2.0 * std::abs(spectrum[static_cast<size_t>(k)]);
    if (tail < model.phi_residual_tol) {
      cutoff = K;
      break;
    }
  }

  // Basis and the hopping matrix.
  std::vector<double> ev(static_cast<size_t>(model.N));
  std::vector<int> mult(static_cast<size_t>(model.N), 1);
  for (int n = 1; n <= model.N; ++n) {
    ev[static_cast<size_t>(n - 1)] = std::pow(static_cast<double>(n), model.alpha);
  }
  BasisPtr basis = std::make_shared<const SpectralBasis>(std::move(ev), std::move(mult), model.alpha);
  Matrix delta = Matrix::Zero(model.N, model.N);
  for (int n = 0; n + 1 < model.N; ++n) {
    delta(n, n + 1) = 1.0;
    delta(n + 1, n) = 1.0;
  }

  std::map<int, BlockOperator> coeffs;
  for (int k = -cutoff; k <= cutoff; ++k) {
    const Complex phik =
        k >= 0 ? spectrum[static_cast<size_t>(k)] : std::conj(spectrum[static_cast<size_t>(-k)]);
    coeffs.emplace(k, BlockOperator(basis, Matrix(-phik * delta), k == 0, false));
  }
  TimePeriodicOperator V(phi_period, std::move(coeffs), /*hermitian_family=*/true);

  // Measured residual of the truncated expansion on an offset grid.
  double residual = 0.0;
  constexpr int kCheck = 1024;
  for (int g = 0; g < kCheck; ++g) {
    const double t = phi_period * (g + 0.5) / kCheck;
    Complex recon = spectrum[0];
    for (int k = 1; k <= cutoff; ++k) {
      recon += spectrum[static_cast<size_t>(k)] * std::exp(Complex(0.0, kTwoPi * k * t / phi_period));
      recon += std::conj(spectrum[static_cast<size_t>(k)]) *
               std::exp(Complex(0.0, -kTwoPi * k * t / phi_period));
    }
    const double exact = 1.0 / (model.lambda * reparam.a(reparam.b_inverse(t)));
    residual = std::max(residual, std::abs(exact - recon));
  }

  return DiscreteOperators{basis,  std::move(V),  std::move(reparam), certify_gaps(*basis),
                           kappa,  residual,      cutoff};
}

}  // namespace floqgap
