// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floqgap/diagonalization.hpp"
#include "floqgap/errors.hpp"

namespace floqgap {

namespace {

Eigen::VectorXd coordinate_energies(const SpectralBasis& basis) {
  Eigen::VectorXd e(basis.dim());
  for (int n = 1; n <= basis.blocks(); ++n) {
    for (int j = 0; j < basis.multiplicity(n); ++j) e[basis.offset(n) + j] = basis.eigenvalue(n);
  }
  return e;
}

double energy_of(const Eigen::VectorXd& energies, const Vector& psi) {
  return (energies.array() * psi.cwiseAbs2().array()).sum();
}

// Snap a numerically near-unitary matrix back onto the unitary group.
Matrix polar_unitary(Matrix x) {
  for (int it = 0; it < 6; ++it) {
    const Matrix inv_adj = x.partialPivLu().inverse().adjoint();
    x = 0.5 * (x + inv_adj);
    const double dev =
        (x.adjoint() * x - Matrix::Identity(x.rows(), x.cols())).cwiseAbs().maxCoeff();
    if (dev < 1e-14) break;
  }
  return x;
}

}  // namespace

EnergyTrace propagate(const TimePeriodicOperator& V, const Vector& psi0, long n_periods,
                      const PropagationOptions& options) {
  const SpectralBasis& basis = V.basis();
  if (psi0.size() != basis.dim()) {
    throw ValidationError("propagate: psi0 has dimension " + std::to_string(psi0.size()) +
                          ", expected " + std::to_string(basis.dim()));
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-10) {
    throw ValidationError("propagate: psi0 must be normalized");
  }
  if (n_periods < 1) throw ValidationError("propagate: need at least one period");
  if (options.steps_per_period < 1) {
    throw ValidationError("propagate: steps_per_period must be >= 1");
  }

  const int S = options.steps_per_period;
  const double T = V.period();
  const double h = T / S;
  const Eigen::VectorXd energies = coordinate_energies(basis);
  const Matrix H = hamiltonian_operator(V.basis_ptr()).matrix();

  EnergyTrace trace;
  trace.steps_per_period = S;
  trace.times.reserve(static_cast<size_t>(n_periods) + 1);
  trace.values.reserve(static_cast<size_t>(n_periods) + 1);

  if (!options.intra_period_sampling) {
    // One period map, built substep by substep from cached eigensystems.
    Matrix phi = Matrix::Identity(basis.dim(), basis.dim());
    for (int j = 0; j < S; ++j) {
      const Matrix gen = H + V.evaluate((j + 0.5) * h).matrix();
      Eigen::SelfAdjointEigenSolver<Matrix> es(gen);
      const Vector ph =
          (Complex(0.0, -h) * es.eigenvalues().cast<Complex>().array()).exp().matrix();
      phi = es.eigenvectors() * (ph.asDiagonal() * (es.eigenvectors().adjoint() * phi));
    }
    trace.unitarity_drift = spectral_norm(
        Matrix(phi.adjoint() * phi - Matrix::Identity(basis.dim(), basis.dim())), true);
    phi = polar_unitary(std::move(phi));

    Vector psi = psi0;
    trace.times.push_back(0.0);
    trace.values.push_back(energy_of(energies, psi));
    trace.norm_drifts.push_back(psi.norm() - 1.0);
    for (long k = 1; k <= n_periods; ++k) {
      psi = phi * psi;
      const double drift = psi.norm() - 1.0;
      trace.psi_norm_drift = std::max(trace.psi_norm_drift, std::abs(drift));
      if (std::abs(drift) > options.norm_drift_abort) {
        throw StepUnstable("propagate: norm drift " + std::to_string(drift) + " at period " +
                           std::to_string(k));
      }
      trace.times.push_back(static_cast<double>(k));
      trace.values.push_back(energy_of(energies, psi));
      trace.norm_drifts.push_back(drift);
    }
    return trace;
  }

  // Marching path with intra-period samples.
  std::vector<Matrix> steps(static_cast<size_t>(S));
  for (int j = 0; j < S; ++j) {
    const Matrix gen = H + V.evaluate((j + 0.5) * h).matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es(gen);
    const Vector ph = (Complex(0.0, -h) * es.eigenvalues().cast<Complex>().array()).exp().matrix();
    steps[static_cast<size_t>(j)] =
        es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  }
  {
    Matrix phi = Matrix::Identity(basis.dim(), basis.dim());
    for (int j = 0; j < S; ++j) phi = steps[static_cast<size_t>(j)] * phi;
    trace.unitarity_drift = spectral_norm(
        Matrix(phi.adjoint() * phi - Matrix::Identity(basis.dim(), basis.dim())), true);
  }

  const int samples = std::max(1, std::min(options.samples_per_period, S));
  const int stride = S / samples;
  Vector psi = psi0;
  trace.times.push_back(0.0);
  trace.values.push_back(energy_of(energies, psi));
  trace.norm_drifts.push_back(psi.norm() - 1.0);
  for (long k = 0; k < n_periods; ++k) {
    for (int j = 0; j < S; ++j) {
      psi = steps[static_cast<size_t>(j)] * psi;
      const bool sample_here = ((j + 1) % stride == 0) || (j + 1 == S);
      if (!sample_here) continue;
      const double drift = psi.norm() - 1.0;
      trace.psi_norm_drift = std::max(trace.psi_norm_drift, std::abs(drift));
      if (std::abs(drift) > options.norm_drift_abort) {
        throw StepUnstable("propagate: norm drift " + std::to_string(drift) + " at period " +
                           std::to_string(k + 1));
      }
      trace.times.push_back(static_cast<double>(k) + static_cast<double>(j + 1) / S);
      trace.values.push_back(energy_of(energies, psi));
      trace.norm_drifts.push_back(drift);
    }
  }
  return trace;
}

Vector make_ground_state(const SpectralBasis& basis) {
  Vector psi = Vector::Zero(basis.dim());
  psi[0] = 1.0;
  return psi;
}

Vector make_gaussian_state(const SpectralBasis& basis, double center_block, double width) {
  if (!(width > 0.0)) throw ValidationError("make_gaussian_state: width must be positive");
  Vector psi(basis.dim());
  for (int n = 1; n <= basis.blocks(); ++n) {
    const double w = std::exp(-0.5 * std::pow((n - center_block) / width, 2));
    for (int j = 0; j < basis.multiplicity(n); ++j) psi[basis.offset(n) + j] = w;
  }
  psi.normalize();
  return psi;
}

TrivialBound trivial_bound(const TimePeriodicOperator& V, const Vector& psi0, int grid_points) {
  const Matrix H = hamiltonian_operator(V.basis_ptr()).matrix();
  TrivialBound bound;
  const Matrix h0 = H + V.evaluate(0.0).matrix();
  bound.intercept = std::abs((psi0.adjoint() * (h0 * psi0))(0, 0).real());
  const TimePeriodicOperator dV = time_derivative(V);
  bound.slope_per_period = V.period() * family_spectral_norm(dV, grid_points);
  bound.v_sup = family_spectral_norm(V, grid_points);
  return bound;
}

namespace {

struct Window {
  size_t begin = 0;  // first index included
  double t_lo = 0.0, t_hi = 0.0;
};

Window tail_window(const EnergyTrace& trace, double window_fraction) {
  // Positive times only; log fits cannot use t = 0.
  size_t first_pos = 0;
  while (first_pos < trace.times.size() && trace.times[first_pos] <= 0.0) ++first_pos;
  if (trace.times.size() - first_pos < 2) {
    throw DegenerateTrace("fit_exponent: not enough positive-time samples");
  }
  const double t_min = trace.times[first_pos];
  const double t_hi = trace.times.back();
  const double span_decades = std::log10(t_hi / t_min);
  if (!(span_decades > 0.0)) throw DegenerateTrace("fit_exponent: zero time span");
  double wf = window_fraction;
  if (!(wf > 0.0)) wf = std::min(1.0, 1.0 / span_decades);  // default: the last decade
  wf = std::min(wf, 1.0);
  const double t_lo = t_hi * std::pow(t_min / t_hi, wf);
  size_t begin = first_pos;
  while (begin < trace.times.size() && trace.times[begin] < t_lo) ++begin;
  if (trace.times.size() - begin < 2) begin = trace.times.size() - 2;
  return Window{begin, trace.times[begin], t_hi};
}

struct LsqFit {
  double slope = 0.0;
  double halfwidth = 0.0;
};

LsqFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DegenerateTrace("fit_exponent: degenerate abscissa");
  const double slope = sxy / sxx;
  double ss_res = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - my - slope * (x[i] - mx);
    ss_res += r * r;
  }
  LsqFit fit;
  fit.slope = slope;
  if (n > 2) fit.halfwidth = 2.0 * std::sqrt(ss_res / static_cast<double>(n - 2) / sxx);
  return fit;
}

}  // namespace

ExponentFit fit_exponent(const EnergyTrace& trace, double window_fraction, FitMethod method) {
  if (trace.times.size() != trace.values.size() || trace.times.size() < 2) {
    throw ValidationError("fit_exponent: malformed trace");
  }
  if (trace.times.back() < 100.0) {
    throw ValidationError("fit_exponent: trace must cover at least 100 periods");
  }
  const Window win = tail_window(trace, window_fraction);

  std::vector<double> series = trace.values;
  if (method == FitMethod::envelope_lsq) {
    for (size_t i = 1; i < series.size(); ++i) series[i] = std::max(series[i], series[i - 1]);
  }

  ExponentFit fit;
  fit.method = method;
  fit.window_lo = win.t_lo;
  fit.window_hi = win.t_hi;

  bool constant = true;
  for (size_t i = win.begin + 1; i < series.size(); ++i) {
    if (series[i] != series[win.begin]) {
      constant = false;
      break;
    }
  }
  if (constant) {
    fit.sigma_fit = 0.0;
    fit.ci_halfwidth = 0.0;
    return fit;
  }

  std::vector<double> lx, ly;
  lx.reserve(series.size() - win.begin);
  for (size_t i = win.begin; i < series.size(); ++i) {
    if (!(series[i] > 0.0)) {
      throw DegenerateTrace("fit_exponent: nonpositive value in the fit window");
    }
    lx.push_back(std::log(trace.times[i]));
    ly.push_back(std::log(series[i]));
  }
  const LsqFit lsq = least_squares(lx, ly);
  fit.sigma_fit = lsq.slope;
  fit.ci_halfwidth = lsq.halfwidth;
  return fit;
}

double fit_linear_slope(const EnergyTrace& trace, double window_fraction) {
  const Window win = tail_window(trace, window_fraction);
  std::vector<double> x(trace.times.begin() + static_cast<long>(win.begin), trace.times.end());
  std::vector<double> y(trace.values.begin() + static_cast<long>(win.begin), trace.values.end());
  return least_squares(x, y).slope;
}

double theoretical_sigma(double alpha, double p) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("theoretical_sigma: alpha must lie in (0,1)");
  }
  if (!(p > 2.0)) throw ValidationError("theoretical_sigma: requires p > 2");
  const double L = std::ceil(p - 1.0);
  const double denom = 2.0 * L * (1.0 - alpha) - 1.0;
  if (!(L > 1.0 / (2.0 * (1.0 - alpha)))) {
    throw BoundVacuous("theoretical_sigma: ceil(p-1) <= 1/(2(1-alpha)), the bound is vacuous");
  }
  return 2.0 * alpha / denom;
}

double howland_sigma(double alpha, int k) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("howland_sigma: alpha must lie in (0,1)");
  }
  const double denom = 2.0 * (k - 2) * (1.0 - alpha) - 1.0;
  if (!(denom > 0.0)) {
    throw BoundVacuous("howland_sigma: 2(k-2)(1-alpha) - 1 <= 0, the bound is vacuous");
  }
  return 2.0 * alpha / denom;
}

OffdiagDecayReport check_offdiag_decay(const BlockOperator& B, double p, double delta) {
  const SpectralBasis& basis = B.basis();
  const int N = basis.blocks();
  OffdiagDecayReport report;
  report.row_norms.resize(static_cast<size_t>(N));
  report.mu = 2.0 * delta;
  report.mu_above_half = report.mu > 0.5;
  report.nontrivial = report.mu > 0.5 + basis.alpha();

  // Column scaling by H^{-1/2}, then the exact 2-norm of each block row
  // without its diagonal block (P_n B Q_n H^{-1/2}).
  Eigen::VectorXd scale(basis.dim());
  for (int m = 1; m <= N; ++m) {
    for (int j = 0; j < basis.multiplicity(m); ++j) {
      scale[basis.offset(m) + j] = 1.0 / std::sqrt(basis.eigenvalue(m));
    }
  }
  for (int n = 1; n <= N; ++n) {
    const int dn = basis.multiplicity(n);
    Matrix row(dn, basis.dim() - dn);
    int col = 0;
    for (int m = 1; m <= N; ++m) {
      if (m == n) continue;
      const int dm = basis.multiplicity(m);
      Matrix blk = B.block(n, m);
      for (int c = 0; c < dm; ++c) blk.col(c) *= scale[basis.offset(m) + c];
      row.block(0, col, dn, dm) = blk;
      col += dm;
    }
    // ||R|| = sqrt(lambda_max(R R^*)) with R R^* at most 2x2.
    const Matrix gram = row * row.adjoint();
    double lam;
    if (dn == 1) {
      lam = gram(0, 0).real();
    } else if (dn == 2) {
      const double tr = gram(0, 0).real() + gram(1, 1).real();
      const double h = 0.5 * (gram(0, 0).real() - gram(1, 1).real());
      lam = 0.5 * tr + std::hypot(h, std::abs(gram(0, 1)));
    } else {
      Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
      lam = es.eigenvalues().maxCoeff();
    }
    report.row_norms[static_cast<size_t>(n - 1)] = std::sqrt(std::max(0.0, lam));
  }

  const double norm_B = class_norm(B, {p, delta});
  double max_row = 0.0;
  for (double v : report.row_norms) max_row = std::max(max_row, v);
  std::vector<double> lx, ly;
  for (int n = 1; n <= N; ++n) {
    const double v = report.row_norms[static_cast<size_t>(n - 1)];
    if (v > 1e-15 * max_row && v > 0.0) {
      lx.push_back(std::log(static_cast<double>(n)));
      ly.push_back(std::log(v));
    }
    if (norm_B > 0.0) {
      report.smallest_constant =
          std::max(report.smallest_constant,
                   v * std::pow(static_cast<double>(n), 2.0 * delta + basis.alpha() / 2.0) / norm_B);
    }
  }
  if (lx.size() >= 2) {
    report.fitted_exponent = -least_squares(lx, ly).slope;
  }
  return report;
}

}  // namespace floqgap
