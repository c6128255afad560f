// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/sylvester.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "floqgap/errors.hpp"

namespace floqgap {

SylvesterSolution sylvester_solve(const BlockOperator& G, const BlockOperator& V,
                                  const GapCertificate& cert, const SylvesterOptions& options) {
  if (!same_basis(G, V)) throw ValidationError("sylvester_solve: operands use different bases");
  if (!G.diagonal()) throw ValidationError("sylvester_solve: G must be diagonal");
  const SpectralBasis& basis = G.basis();
  const int N = basis.blocks();
  const double g = basis.gamma();

  if (options.strict) {
    const double norm_G = class_norm(G, {ClassParams::inf, g});
    if (norm_G > cert.c_H / 6.0) {
      throw GapConditionViolated("sylvester_solve: ||G||_{inf,gamma} = " + std::to_string(norm_G) +
                                 " exceeds c_H/6 = " + std::to_string(cert.c_H / 6.0));
    }
  }

  // Spectra of the Hermitian blocks E_n + G_nn.
  std::vector<Eigen::VectorXd> spectra(static_cast<size_t>(N));
  for (int n = 1; n <= N; ++n) {
    const Matrix blk = Matrix(G.block(n, n)) + basis.eigenvalue(n) * Matrix::Identity(
                                                   basis.multiplicity(n), basis.multiplicity(n));
    Eigen::SelfAdjointEigenSolver<Matrix> es(blk, Eigen::EigenvaluesOnly);
    spectra[static_cast<size_t>(n - 1)] = es.eigenvalues();
  }

  Matrix W = Matrix::Zero(basis.dim(), basis.dim());
  SylvesterReport report;
  report.min_distance = std::numeric_limits<double>::infinity();
  report.min_distance_ratio = std::numeric_limits<double>::infinity();
  report.max_solution_ratio = 0.0;
  constexpr double half_pi = std::numbers::pi / 2.0;

  for (int m = 1; m <= N; ++m) {
    for (int n = 1; n <= N; ++n) {
      if (m == n) continue;
      const auto& sa = spectra[static_cast<size_t>(m - 1)];
      const auto& sb = spectra[static_cast<size_t>(n - 1)];
      double dist = std::numeric_limits<double>::infinity();
      for (int i = 0; i < sa.size(); ++i)
        for (int j = 0; j < sb.size(); ++j) dist = std::min(dist, std::abs(sa[i] - sb[j]));
      if (dist < options.divisor_floor) {
        throw SmallDivisorError("sylvester_solve: block pair (" + std::to_string(m) + "," +
                                std::to_string(n) + ") has spectral distance " +
                                std::to_string(dist) + " below the floor");
      }
      const double guaranteed = cert.c_H * std::abs(m - n) /
                                (2.0 * std::pow(static_cast<double>(std::max(m, n)), 2.0 * g));
      report.min_distance = std::min(report.min_distance, dist);
      report.min_distance_ratio = std::min(report.min_distance_ratio, dist / guaranteed);

      const int dm = basis.multiplicity(m), dn = basis.multiplicity(n);
      const Matrix A =
          Matrix(G.block(m, m)) + basis.eigenvalue(m) * Matrix::Identity(dm, dm);
      const Matrix B =
          Matrix(G.block(n, n)) + basis.eigenvalue(n) * Matrix::Identity(dn, dn);
      const Matrix Y = V.block(m, n);

      // vec(A X - X B) = (I (x) A - B^T (x) I) vec(X), column-major.
      Matrix K = Matrix::Zero(dm * dn, dm * dn);
      for (int c = 0; c < dn; ++c) K.block(c * dm, c * dm, dm, dm) = A;
      for (int c = 0; c < dn; ++c)
        for (int cc = 0; cc < dn; ++cc)
          K.block(c * dm, cc * dm, dm, dm) -= B(cc, c) * Matrix::Identity(dm, dm);
      Vector y(dm * dn);
      for (int c = 0; c < dn; ++c) y.segment(c * dm, dm) = Y.col(c);
      const Vector x = K.partialPivLu().solve(y);
      Matrix X(dm, dn);
      for (int c = 0; c < dn; ++c) X.col(c) = x.segment(c * dm, dm);
      W.block(basis.offset(m), basis.offset(n), dm, dn) = X;

      const double norm_Y = small_block_norm(Y);
      if (norm_Y > 0.0) {
        const double ratio = small_block_norm(X) * dist / (half_pi * norm_Y);
        report.max_solution_ratio = std::max(report.max_solution_ratio, ratio);
      }
    }
  }
  return SylvesterSolution{BlockOperator(G.basis_ptr(), std::move(W), false, false), report};
}

}  // namespace floqgap
