// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/antiadiabatic.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "floqgap/errors.hpp"
#include "floqgap/norm_constants.hpp"

namespace floqgap {

namespace {

Matrix dense_commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

struct SeriesInput {
  const BlockOperator& Y;
  const TimePeriodicOperator& Z;
  double r;
  int i;
  const GapCertificate& cert;
  bool commuting;
};

AntiAdiabaticResult run_transform(const SeriesInput& in, const AntiAdiabaticOptions& options) {
  const BlockOperator& Y = in.Y;
  const TimePeriodicOperator& Z = in.Z;
  if (!Y.diagonal()) {
    throw ValidationError("anti_adiabatic_transform: Y must be diagonal");
  }
  if (!Z.hermitian_family()) {
    throw ValidationError("anti_adiabatic_transform: Z must be a Hermitian family");
  }
  if (!(in.r > 2.0)) {
    throw ValidationError("anti_adiabatic_transform: requires r > 2");
  }
  const BasisPtr basis = Z.basis_ptr();
  const SpectralBasis& sb = *basis;
  const double g = sb.gamma();
  const double T = Z.period();
  const ClassParams in_params{in.r, in.i * g};
  const ClassParams out_params{in.r - 1.0, (in.i + 1) * g};

  const int K = Z.max_harmonic();
  const int cutoff = 4 * K + 8;
  const int M =
      options.grid_points > 0 ? options.grid_points : std::max(64, 4 * cutoff + 2);
  if (M <= 2 * cutoff) {
    throw ValidationError("anti_adiabatic_transform: grid too coarse for harmonic cutoff " +
                          std::to_string(cutoff));
  }

  AntiAdiabaticResult result{primitive_of_fluctuation(Z), time_average(Z),
                             TimePeriodicOperator::zero(T, basis)};
  const TimePeriodicOperator& F = result.F;
  const Matrix Zbar = result.Z_bar.matrix();
  const Matrix Hmat = hamiltonian_operator(basis).matrix();
  const Matrix HplusY = Hmat + Y.matrix();

  std::vector<Matrix> samples(static_cast<size_t>(M));
  double herm_dev = 0.0;
  int max_terms_used = 0;

  for (int gpt = 0; gpt < M; ++gpt) {
    const double t = T * gpt / M;
    const Matrix Ft = F.evaluate(t).matrix();
    // The j-dependence of X_j sits only in scalar weights, so the three
    // commutator pieces are formed once per grid time.
    Matrix A1 = dense_commutator(Ft, HplusY);
    Matrix A2 = in.commuting ? Matrix() : Matrix(dense_commutator(Ft, Z.evaluate(t).matrix()));
    Matrix A3 = in.commuting ? Matrix() : Matrix(dense_commutator(Ft, Zbar));

    Matrix sum = Matrix::Zero(sb.dim(), sb.dim());
    double accum_norm = 0.0;
    Complex ipow(0.0, 1.0);  // i^j
    double factorial = 1.0;
    bool converged = false;
    for (int j = 1; j <= options.max_terms; ++j) {
      Matrix x = A1;
      if (!in.commuting) {
        const double wj = static_cast<double>(j) / (j + 1);
        x += wj * A2 + (1.0 / (j + 1)) * A3;
      }
      const Matrix term = (ipow / factorial) * x;
      const double term_norm = class_norm(BlockOperator(basis, term), out_params);
      if (static_cast<int>(result.term_norms.size()) < j) result.term_norms.push_back(0.0);
      result.term_norms[static_cast<size_t>(j - 1)] =
          std::max(result.term_norms[static_cast<size_t>(j - 1)], term_norm);
      if (j > 1 && term_norm <= options.tol * accum_norm) {
        converged = true;
        max_terms_used = std::max(max_terms_used, j - 1);
        break;
      }
      sum += term;
      accum_norm = class_norm(BlockOperator(basis, sum), out_params);
      if (term_norm == 0.0 && accum_norm == 0.0) {
        converged = true;
        max_terms_used = std::max(max_terms_used, j);
        break;
      }
      if (j == options.max_terms) break;
      A1 = dense_commutator(Ft, A1);
      if (!in.commuting) {
        A2 = dense_commutator(Ft, A2);
        A3 = dense_commutator(Ft, A3);
      }
      ipow *= Complex(0.0, 1.0);
      factorial *= j + 1;
    }
    if (!converged) {
      throw SeriesNotConverged("anti_adiabatic_transform: series cap " +
                               std::to_string(options.max_terms) + " reached at t = " +
                               std::to_string(t));
    }
    herm_dev = std::max(herm_dev, (sum - Matrix(sum.adjoint())).cwiseAbs().maxCoeff());
    samples[static_cast<size_t>(gpt)] = 0.5 * (sum + Matrix(sum.adjoint()));
    result.achieved_norm =
        std::max(result.achieved_norm, class_norm(BlockOperator(basis, samples[gpt]), out_params));
  }
  result.hermiticity_deviation = herm_dev;
  result.series_terms_used = max_terms_used;
  result.harmonic_cutoff = cutoff;

  // Re-expand the grid samples as a trigonometric polynomial.
  const double w = Z.omega();
  std::map<int, BlockOperator> coeffs;
  for (int k = -cutoff; k <= cutoff; ++k) {
    Matrix c = Matrix::Zero(sb.dim(), sb.dim());
    for (int gpt = 0; gpt < M; ++gpt) {
      const double t = T * gpt / M;
      c += std::exp(Complex(0.0, -k * w * t)) * samples[static_cast<size_t>(gpt)];
    }
    coeffs.emplace(k, BlockOperator(basis, c / static_cast<double>(M)));
  }
  // Exact Hermitian pairing of the coefficients.
  for (int k = 0; k <= cutoff; ++k) {
    const Matrix sym = 0.5 * (coeffs.at(k).matrix() + Matrix(coeffs.at(-k).matrix().adjoint()));
    coeffs.at(k) = BlockOperator(basis, sym, k == 0);
    coeffs.at(-k) = BlockOperator(basis, sym.adjoint(), k == 0);
  }
  result.Z_diamond = TimePeriodicOperator(T, std::move(coeffs), true);

  for (int gpt = 0; gpt < M; ++gpt) {
    const double t = T * gpt / M;
    const Matrix residual = result.Z_diamond.evaluate(t).matrix() - samples[static_cast<size_t>(gpt)];
    result.discarded_energy =
        std::max(result.discarded_energy, spectral_norm(residual, /*hermitian=*/true));
  }

  // Certified norm bound on the transformed perturbation.
  const double Cr = cp_constant(in.r);
  result.input_norm = family_class_norm(Z, in_params, options.norm_grid);
  result.F_norm = family_class_norm(F, in_params, options.norm_grid);
  const double norm_Y = class_norm(Y, {ClassParams::inf, g});
  const double y_weight = in.commuting ? 2.0 : 4.0;
  const double z_weight = in.commuting ? 0.0 : 2.0 * Cr;
  result.bound_rhs = (std::expm1(4.0 * Cr * T * result.input_norm) / (2.0 * Cr)) *
                     (in.cert.C_H + y_weight * norm_Y + z_weight * result.input_norm);
  result.bound_ok = result.achieved_norm <= result.bound_rhs * (1.0 + 1e-12);
  result.bound_within_1pct = result.achieved_norm <= result.bound_rhs * 1.01;
  return result;
}

}  // namespace

AntiAdiabaticResult anti_adiabatic_transform(const BlockOperator& Y, const TimePeriodicOperator& Z,
                                             double r, int i, const GapCertificate& cert,
                                             const AntiAdiabaticOptions& options) {
  if (i < 1) throw ValidationError("anti_adiabatic_transform: requires i >= 1");
  return run_transform({Y, Z, r, i, cert, /*commuting=*/false}, options);
}

AntiAdiabaticResult anti_adiabatic_commuting(const BlockOperator& Y, const TimePeriodicOperator& Z,
                                             double r, const GapCertificate& cert,
                                             const AntiAdiabaticOptions& options) {
  // Pairwise commutation on the grid, [Z(t), Z(s)] = 0.
  double scale = 0.0;
  std::vector<Matrix> grid(static_cast<size_t>(options.commutation_grid));
  for (int a = 0; a < options.commutation_grid; ++a) {
    grid[static_cast<size_t>(a)] = Z.evaluate(Z.period() * a / options.commutation_grid).matrix();
    scale = std::max(scale, grid[static_cast<size_t>(a)].cwiseAbs().maxCoeff());
  }
  const double tol = options.commutation_tol * std::max(1.0, scale * scale);
  for (size_t a = 0; a < grid.size(); ++a) {
    for (size_t b = a + 1; b < grid.size(); ++b) {
      const double dev = dense_commutator(grid[a], grid[b]).cwiseAbs().maxCoeff();
      if (dev > tol) {
        throw NotCommutingError("anti_adiabatic_commuting: grid commutator norm " +
                                std::to_string(dev) + " exceeds tolerance");
      }
    }
  }
  return run_transform({Y, Z, r, /*i=*/0, cert, /*commuting=*/true}, options);
}

}  // namespace floqgap
