// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/block_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floqgap/errors.hpp"
#include "floqgap/norm_constants.hpp"

namespace floqgap {

void ClassParams::validate() const {
  if (is_infinite()) {
    if (delta < 0.0) throw ValidationError("ClassParams: delta must be >= 0");
    return;
  }
  if (p < 1.0 || delta < 0.0 || !(p + 2.0 * delta > 1.0)) {
    throw ValidationError("ClassParams: need p >= 1, delta >= 0 and p + 2 delta > 1 (p = " +
                          std::to_string(p) + ", delta = " + std::to_string(delta) + ")");
  }
}

BlockOperator::BlockOperator(BasisPtr basis, Matrix data, bool hermitian, bool diagonal)
    : basis_(std::move(basis)), data_(std::move(data)), hermitian_(hermitian), diagonal_(diagonal) {
  if (!basis_) throw ValidationError("BlockOperator: null basis");
  if (data_.rows() != basis_->dim() || data_.cols() != basis_->dim()) {
    throw ValidationError("BlockOperator: matrix is " + std::to_string(data_.rows()) + "x" +
                          std::to_string(data_.cols()) + " but basis dimension is " +
                          std::to_string(basis_->dim()));
  }
}

BlockOperator BlockOperator::zero(BasisPtr basis) {
  const int d = basis->dim();
  return BlockOperator(std::move(basis), Matrix::Zero(d, d), true, true);
}

BlockOperator BlockOperator::identity(BasisPtr basis) {
  const int d = basis->dim();
  return BlockOperator(std::move(basis), Matrix::Identity(d, d), true, true);
}

BlockOperator BlockOperator::block_scalar_diagonal(BasisPtr basis, const Eigen::VectorXd& values) {
  if (values.size() != basis->blocks()) {
    throw ValidationError("block_scalar_diagonal: need one value per block");
  }
  Matrix m = Matrix::Zero(basis->dim(), basis->dim());
  for (int n = 1; n <= basis->blocks(); ++n) {
    const int off = basis->offset(n);
    for (int j = 0; j < basis->multiplicity(n); ++j) m(off + j, off + j) = values[n - 1];
  }
  return BlockOperator(std::move(basis), std::move(m), true, true);
}

double small_block_norm(const Eigen::Ref<const Matrix>& b) {
  const auto rows = b.rows(), cols = b.cols();
  if (rows == 1 && cols == 1) return std::abs(b(0, 0));
  if (rows == 1 || cols == 1) return b.norm();
  if (rows == 2 && cols == 2) {
    // largest eigenvalue of the 2x2 Hermitian PSD matrix B^* B, closed form
    const double x = b.col(0).squaredNorm();
    const double y = b.col(1).squaredNorm();
    const Complex z = b.col(0).dot(b.col(1));
    const double h = 0.5 * (x - y);
    return std::sqrt(0.5 * (x + y) + std::hypot(h, std::abs(z)));
  }
  return b.jacobiSvd().singularValues()(0);
}

double BlockOperator::block_norm(int m, int n) const { return small_block_norm(block(m, n)); }

BlockOperator BlockOperator::adjoint() const {
  return BlockOperator(basis_, data_.adjoint(), hermitian_, diagonal_);
}

BlockOperator operator+(const BlockOperator& a, const BlockOperator& b) {
  if (!same_basis(a, b)) throw ValidationError("BlockOperator: operands use different bases");
  return BlockOperator(a.basis_, a.data_ + b.data_, a.hermitian_ && b.hermitian_,
                       a.diagonal_ && b.diagonal_);
}

BlockOperator operator-(const BlockOperator& a, const BlockOperator& b) {
  if (!same_basis(a, b)) throw ValidationError("BlockOperator: operands use different bases");
  return BlockOperator(a.basis_, a.data_ - b.data_, a.hermitian_ && b.hermitian_,
                       a.diagonal_ && b.diagonal_);
}

BlockOperator operator*(double c, const BlockOperator& a) {
  return BlockOperator(a.basis_, c * a.data_, a.hermitian_, a.diagonal_);
}

BlockOperator operator*(Complex c, const BlockOperator& a) {
  return BlockOperator(a.basis_, c * a.data_, a.hermitian_ && c.imag() == 0.0, a.diagonal_);
}

bool same_basis(const BlockOperator& a, const BlockOperator& b) {
  if (a.basis_ptr() == b.basis_ptr()) return true;
  const SpectralBasis& x = a.basis();
  const SpectralBasis& y = b.basis();
  return x.eigenvalues() == y.eigenvalues() && x.multiplicities() == y.multiplicities() &&
         x.alpha() == y.alpha();
}

BlockOperator hamiltonian_operator(BasisPtr basis) {
  Eigen::VectorXd ev(basis->blocks());
  for (int n = 1; n <= basis->blocks(); ++n) ev[n - 1] = basis->eigenvalue(n);
  return BlockOperator::block_scalar_diagonal(std::move(basis), ev);
}

Eigen::MatrixXd block_norm_table(const BlockOperator& a) {
  const int N = a.blocks();
  Eigen::MatrixXd table(N, N);
  for (int m = 1; m <= N; ++m)
    for (int n = 1; n <= N; ++n) table(m - 1, n - 1) = a.block_norm(m, n);
  return table;
}

double class_norm(const BlockOperator& a, const ClassParams& params) {
  params.validate();
  const int N = a.blocks();
  if (params.is_infinite()) {
    if (!a.diagonal()) {
      throw ValidationError("class_norm: p = inf is admitted only for diagonal operators");
    }
    double sup = 0.0;
    for (int n = 1; n <= N; ++n) {
      sup = std::max(sup, std::pow(static_cast<double>(n), 2.0 * params.delta) * a.block_norm(n, n));
    }
    return sup;
  }
  double sup = 0.0;
  for (int m = 1; m <= N; ++m) {
    for (int n = 1; n <= N; ++n) {
      if (a.diagonal() && m != n) continue;
      const double w = std::pow(bracket(m - n), params.p) *
                       std::pow(static_cast<double>(std::max(m, n)), 2.0 * params.delta);
      sup = std::max(sup, w * a.block_norm(m, n));
    }
  }
  return sup;
}

double shur_holmgren_norm(const BlockOperator& a) {
  const int N = a.blocks();
  Eigen::VectorXd row = Eigen::VectorXd::Zero(N), col = Eigen::VectorXd::Zero(N);
  for (int m = 1; m <= N; ++m) {
    for (int n = 1; n <= N; ++n) {
      const double v = a.block_norm(m, n);
      row[m - 1] += v;
      col[n - 1] += v;
    }
  }
  return std::max(row.maxCoeff(), col.maxCoeff());
}

double spectral_norm(const Matrix& m, bool hermitian) {
  if (m.rows() == 0) return 0.0;
  if (hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(m.adjoint() * m), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double spectral_norm(const BlockOperator& a) { return spectral_norm(a.matrix(), a.hermitian()); }

double max_abs_entry(const BlockOperator& a) { return a.matrix().cwiseAbs().maxCoeff(); }

bool is_hermitian(const BlockOperator& a, double tol) {
  const double scale = std::max(1.0, max_abs_entry(a));
  return (a.matrix() - Matrix(a.matrix().adjoint())).cwiseAbs().maxCoeff() <= tol * scale;
}

bool is_diagonal_structure(const BlockOperator& a, double tol) {
  const int N = a.blocks();
  for (int m = 1; m <= N; ++m)
    for (int n = 1; n <= N; ++n)
      if (m != n && a.block_norm(m, n) > tol) return false;
  return true;
}

BlockOperator diag_part(const BlockOperator& a) {
  Matrix m = Matrix::Zero(a.dim(), a.dim());
  const SpectralBasis& basis = a.basis();
  for (int n = 1; n <= basis.blocks(); ++n) {
    const int off = basis.offset(n), sz = basis.multiplicity(n);
    m.block(off, off, sz, sz) = a.matrix().block(off, off, sz, sz);
  }
  return BlockOperator(a.basis_ptr(), std::move(m), a.hermitian(), true);
}

BlockOperator offdiag_part(const BlockOperator& a) {
  Matrix m = a.matrix();
  const SpectralBasis& basis = a.basis();
  for (int n = 1; n <= basis.blocks(); ++n) {
    const int off = basis.offset(n), sz = basis.multiplicity(n);
    m.block(off, off, sz, sz).setZero();
  }
  return BlockOperator(a.basis_ptr(), std::move(m), a.hermitian(), false);
}

BlockOperator commutator_with_H(const BlockOperator& a) {
  const SpectralBasis& basis = a.basis();
  Matrix m(a.dim(), a.dim());
  for (int r = 1; r <= basis.blocks(); ++r) {
    for (int c = 1; c <= basis.blocks(); ++c) {
      const double factor = basis.eigenvalue(c) - basis.eigenvalue(r);
      m.block(basis.offset(r), basis.offset(c), basis.multiplicity(r), basis.multiplicity(c)) =
          factor * a.block(r, c);
    }
  }
  return BlockOperator(a.basis_ptr(), std::move(m), false, a.diagonal());
}

BlockOperator op_product(const BlockOperator& a, const BlockOperator& b) {
  if (!same_basis(a, b)) throw ValidationError("op_product: operands use different bases");
  return BlockOperator(a.basis_ptr(), a.matrix() * b.matrix(), false, a.diagonal() && b.diagonal());
}

BlockOperator commutator(const BlockOperator& a, const BlockOperator& b) {
  if (!same_basis(a, b)) throw ValidationError("commutator: operands use different bases");
  return BlockOperator(a.basis_ptr(), a.matrix() * b.matrix() - b.matrix() * a.matrix(), false,
                       a.diagonal() && b.diagonal());
}

BoundCheck make_bound_check(double lhs, double rhs, double slack) {
  return BoundCheck{lhs, rhs, lhs <= rhs * (1.0 + slack) + slack, slack};
}

BoundCheck check_product_bound_1(const BlockOperator& a, const BlockOperator& b, double p, int i) {
  const double g = a.basis().gamma();
  const double lhs = class_norm(op_product(a, b), {p - 1.0, (i + 1) * g});
  const double rhs = cp_constant(p) * class_norm(a, {p, i * g}) * class_norm(b, {p, i * g});
  return make_bound_check(lhs, rhs);
}

BoundCheck check_product_bound_2(const BlockOperator& a, const BlockOperator& b, double p, int i) {
  const double g = a.basis().gamma();
  const double lhs = class_norm(op_product(a, b), {p - 1.0, i * g});
  const double rhs =
      cp_constant(p) * class_norm(a, {p, (i - 1) * g}) * class_norm(b, {p - 1.0, i * g});
  return make_bound_check(lhs, rhs);
}

BoundCheck check_product_bound_3(const BlockOperator& a, const BlockOperator& b, double p, int i) {
  const double g = a.basis().gamma();
  const double lhs = class_norm(op_product(a, b), {p - 1.0, (i + 1) * g});
  const double rhs = 2.0 * cp_constant(p) * class_norm(a, {p + 1.0, (i - 1) * g}) *
                     class_norm(b, {p - 1.0, (i + 1) * g});
  return make_bound_check(lhs, rhs);
}

BoundCheck check_commutator_bound(const BlockOperator& a, double p, double delta,
                                  const GapCertificate& cert) {
  const double g = a.basis().gamma();
  const double lhs = class_norm(commutator_with_H(a), {p - 1.0, delta + g});
  const double rhs = cert.C_H * class_norm(a, {p, delta});
  return make_bound_check(lhs, rhs);
}

ShChainCheck check_sh_chain(const BlockOperator& a, double p, double delta) {
  const double sh = shur_holmgren_norm(a);
  ShChainCheck chain;
  chain.op_le_sh = make_bound_check(spectral_norm(a), sh);
  chain.sh_le_class = make_bound_check(sh, sh_constant(p, delta) * class_norm(a, {p, delta}));
  return chain;
}

bool check_elementary_ratio(int n) {
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= n; ++k)
      if (static_cast<double>(m) / k > 2.0 * bracket(m - k)) return false;
  return true;
}

}  // namespace floqgap
