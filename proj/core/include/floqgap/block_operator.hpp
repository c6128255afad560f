// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>

#include "floqgap/spectral_basis.hpp"

namespace floqgap {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// <d> := max{1, |d|}
inline double bracket(long d) {
  const long a = d < 0 ? -d : d;
  return static_cast<double>(a < 1 ? 1 : a);
}

// Weight class parameters (p, delta). p may be infinite, which is admitted
// only for diagonal operators.
struct ClassParams {
  double p = 1.0;
  double delta = 0.0;

  static constexpr double inf = std::numeric_limits<double>::infinity();
  bool is_infinite() const { return std::isinf(p); }

  // p >= 1, delta >= 0, p + 2 delta > 1.
  void validate() const;
};

// A truncated operator stored as a dense matrix laid out block-by-block
// along a spectral basis. Values are immutable; every operation returns a
// new operator.
class BlockOperator {
public:
  BlockOperator(BasisPtr basis, Matrix data, bool hermitian = false, bool diagonal = false);

  static BlockOperator zero(BasisPtr basis);
  static BlockOperator identity(BasisPtr basis);
  // Diagonal operator with scalar value v_n on block n (v real => Hermitian).
  static BlockOperator block_scalar_diagonal(BasisPtr basis, const Eigen::VectorXd& values);

  const SpectralBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Matrix& matrix() const { return data_; }
  int dim() const { return static_cast<int>(data_.rows()); }
  int blocks() const { return basis_->blocks(); }

  bool hermitian() const { return hermitian_; }
  bool diagonal() const { return diagonal_; }

  // Block B_{m,n}, 1-based block indices.
  Eigen::Block<const Matrix> block(int m, int n) const {
    return data_.block(basis_->offset(m), basis_->offset(n), basis_->multiplicity(m),
                       basis_->multiplicity(n));
  }
  // Spectral norm of block B_{m,n}.
  double block_norm(int m, int n) const;

  BlockOperator adjoint() const;

  friend BlockOperator operator+(const BlockOperator& a, const BlockOperator& b);
  friend BlockOperator operator-(const BlockOperator& a, const BlockOperator& b);
  friend BlockOperator operator*(double c, const BlockOperator& a);
  friend BlockOperator operator*(Complex c, const BlockOperator& a);

private:
  BasisPtr basis_;
  Matrix data_;
  bool hermitian_;
  bool diagonal_;
};

bool same_basis(const BlockOperator& a, const BlockOperator& b);

// Spectral norm of a small dense block (closed forms up to 2x2, SVD beyond).
double small_block_norm(const Eigen::Ref<const Matrix>& b);

// H = sum_n E_n P_n assembled on the truncated space.
BlockOperator hamiltonian_operator(BasisPtr basis);

// Matrix of all block spectral norms, indexed [m-1][n-1].
Eigen::MatrixXd block_norm_table(const BlockOperator& a);

// sup_{m,n} <m-n>^p max{m,n}^{2 delta} ||A_{m,n}||; for p = inf the operator
// must be diagonal and the norm reduces to sup_n n^{2 delta} ||A_{n,n}||.
double class_norm(const BlockOperator& a, const ClassParams& params);

// max of the largest block-row sum and the largest block-column sum.
double shur_holmgren_norm(const BlockOperator& a);

// Assembled operator 2-norm.
double spectral_norm(const BlockOperator& a);
double spectral_norm(const Matrix& m, bool hermitian);

double max_abs_entry(const BlockOperator& a);
bool is_hermitian(const BlockOperator& a, double tol = 1e-12);
bool is_diagonal_structure(const BlockOperator& a, double tol = 0.0);

BlockOperator diag_part(const BlockOperator& a);
BlockOperator offdiag_part(const BlockOperator& a);

// [A, H] = AH - HA; block (m,n) picks up the factor (E_n - E_m).
BlockOperator commutator_with_H(const BlockOperator& a);

BlockOperator op_product(const BlockOperator& a, const BlockOperator& b);
BlockOperator commutator(const BlockOperator& a, const BlockOperator& b);

// Two-sided checkable inequality; ok means lhs <= rhs * (1 + slack).
struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
  double slack = 1e-12;
};

BoundCheck make_bound_check(double lhs, double rhs, double slack = 1e-12);

// The three product inequalities, with gamma taken from the shared basis:
//   ||AB||_{p-1,(i+1)g} <= C_p ||A||_{p,ig} ||B||_{p,ig}
//   ||AB||_{p-1,ig}     <= C_p ||A||_{p,(i-1)g} ||B||_{p-1,ig}
//   ||AB||_{p-1,(i+1)g} <= 2 C_p ||A||_{p+1,(i-1)g} ||B||_{p-1,(i+1)g}
BoundCheck check_product_bound_1(const BlockOperator& a, const BlockOperator& b, double p, int i);
BoundCheck check_product_bound_2(const BlockOperator& a, const BlockOperator& b, double p, int i);
BoundCheck check_product_bound_3(const BlockOperator& a, const BlockOperator& b, double p, int i);

// ||[A,H]||_{p-1,delta+gamma} <= C_H ||A||_{p,delta}
BoundCheck check_commutator_bound(const BlockOperator& a, double p, double delta,
                                  const GapCertificate& cert);

// ||A||_2 <= ||A||_SH and ||A||_SH <= sh_constant(p,delta) ||A||_{p,delta}
struct ShChainCheck {
  BoundCheck op_le_sh;
  BoundCheck sh_le_class;
};
ShChainCheck check_sh_chain(const BlockOperator& a, double p, double delta);

// m/k <= 2 <m-k> for all 1 <= m,k <= n, by exhaustive scan.
bool check_elementary_ratio(int n);

}  // namespace floqgap
