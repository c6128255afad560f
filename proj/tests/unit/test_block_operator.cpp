// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "floqgap/errors.hpp"
#include "floqgap/norm_constants.hpp"
#include "floqgap/serialization.hpp"
#include "test_helpers.hpp"

using namespace floqgap;
using floqgap::testing::Rng;

namespace {

BlockOperator single_entry(const BasisPtr& basis, int m, int n, Complex v) {
  Matrix a = Matrix::Zero(basis->dim(), basis->dim());
  a(basis->offset(m), basis->offset(n)) = v;
  return BlockOperator(basis, std::move(a));
}

}  // namespace

TEST_CASE("bracket") {
  CHECK(bracket(0) == 1.0);
  CHECK(bracket(-3) == 3.0);
  CHECK(bracket(1) == 1.0);
  CHECK(bracket(7) == 7.0);
}

TEST_CASE("class norm basics") {
  const auto basis = build_power_basis(0.5, 16);
  const auto id = BlockOperator::identity(basis);
  CHECK(class_norm(id, {3.0, 0.0}) == 1.0);

  const auto a = single_entry(basis, 1, 3, 1.0);
  CHECK(class_norm(a, {2.0, 0.25}) == doctest::Approx(4.0 * std::sqrt(3.0)).epsilon(1e-14));

  // p = inf: sup_n n^{2 delta} ||A_nn||, attained at n = N
  CHECK(class_norm(id, {ClassParams::inf, 0.25}) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(class_norm(a, {ClassParams::inf, 0.25}), ValidationError);
  CHECK_THROWS_AS(class_norm(id, {0.5, 0.1}), ValidationError);  // inadmissible params
}

TEST_CASE("shur-holmgren norm") {
  const auto basis = build_power_basis(0.5, 12);
  CHECK(shur_holmgren_norm(BlockOperator::identity(basis)) == 1.0);

  Matrix tri = Matrix::Zero(basis->dim(), basis->dim());
  for (int i = 0; i < basis->dim(); ++i) {
    tri(i, i) = 1.0;
    if (i + 1 < basis->dim()) {
      tri(i, i + 1) = 1.0;
      tri(i + 1, i) = 1.0;
    }
  }
  CHECK(shur_holmgren_norm(BlockOperator(basis, tri, true)) == doctest::Approx(3.0).epsilon(1e-14));

  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = floqgap::testing::random_in_class(basis, 3.0, 0.25, 1.0, false, rng);
    CHECK(spectral_norm(a) <= shur_holmgren_norm(a) * (1.0 + 1e-12));
  }
}

TEST_CASE("sh chain against the class norm") {
  const auto basis = build_power_basis(0.5, 24);
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = floqgap::testing::random_in_class(basis, 3.0, 0.25, 2.0, false, rng);
    const ShChainCheck chain = check_sh_chain(a, 3.0, 0.25);
    CHECK(chain.op_le_sh.ok);
    CHECK(chain.sh_le_class.ok);
  }
}

TEST_CASE("diag and offdiag split") {
  const auto basis = build_power_basis(0.5, 10, MultiplicityRule::howland);
  Rng rng(3);
  const auto a = floqgap::testing::random_in_class(basis, 3.0, 0.25, 1.0, true, rng);

  const auto d = diag_part(a);
  const auto o = offdiag_part(a);
  CHECK(d.diagonal());
  // exact decomposition, entry for entry
  CHECK((d.matrix() + o.matrix() - a.matrix()).cwiseAbs().maxCoeff() == 0.0);
  // idempotence
  CHECK((offdiag_part(o).matrix() - o.matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(is_hermitian(d));
  CHECK(is_hermitian(o));

  const auto already_diag = diag_part(a);
  const auto split_again = diag_part(already_diag);
  CHECK((split_again.matrix() - already_diag.matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(offdiag_part(already_diag).matrix().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("commutator with H") {
  SpectralBasis raw({1.0, std::sqrt(2.0)}, {1, 1}, 0.5);
  const auto basis = std::make_shared<const SpectralBasis>(raw);
  const auto a = single_entry(basis, 1, 2, 1.0);
  const auto c = commutator_with_H(a);
  CHECK(std::abs(c.matrix()(0, 1) - Complex(std::sqrt(2.0) - 1.0)) < 1e-15);

  // diagonal operators commute with H
  const auto d = BlockOperator::block_scalar_diagonal(basis, Eigen::Vector2d(0.3, -0.7));
  CHECK(commutator_with_H(d).matrix().cwiseAbs().maxCoeff() == 0.0);

  // dense oracle on the assembled matrices
  const auto big = build_power_basis(0.5, 24);
  Rng rng(9);
  const auto x = floqgap::testing::random_in_class(big, 3.0, 0.25, 1.0, false, rng);
  const Matrix h = hamiltonian_operator(big).matrix();
  const Matrix oracle = x.matrix() * h - h * x.matrix();
  CHECK((commutator_with_H(x).matrix() - oracle).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Lemma-style commutator bound with the certified C_H") {
  const auto basis = build_power_basis(0.5, 64);
  const GapCertificate cert = certify_gaps(*basis);
  Rng rng(13);
  for (int rep = 0; rep < 25; ++rep) {
    const auto a = floqgap::testing::random_in_class(basis, 3.0, 0.25, 1.5, false, rng);
    CHECK(check_commutator_bound(a, 3.0, 0.25, cert).ok);
  }
}

TEST_CASE("products") {
  const auto basis = build_power_basis(0.5, 8);
  Rng rng(17);
  const auto a = floqgap::testing::random_in_class(basis, 3.0, 0.25, 1.0, false, rng);
  const auto id = BlockOperator::identity(basis);
  CHECK((op_product(a, id).matrix() - a.matrix()).cwiseAbs().maxCoeff() == 0.0);

  const auto e12 = single_entry(basis, 1, 2, 1.0);
  const auto e23 = single_entry(basis, 2, 3, 1.0);
  const auto prod = op_product(e12, e23);
  CHECK(std::abs(prod.matrix()(basis->offset(1), basis->offset(3)) - Complex(1.0)) == 0.0);
  CHECK(prod.matrix().cwiseAbs().sum() == 1.0);

  CHECK_THROWS_AS(op_product(a, BlockOperator::identity(build_power_basis(0.5, 9))),
                  ValidationError);
}

TEST_CASE("product inequalities on random pairs") {
  Rng rng(23);
  for (double alpha : {0.5, 2.0 / 3.0}) {
    const auto basis = build_power_basis(alpha, 48);
    for (int p : {3, 4}) {
      for (int i : {1, 2}) {
        for (int rep = 0; rep < 10; ++rep) {
          const double g = basis->gamma();
          const auto a1 = floqgap::testing::random_in_class(basis, p, i * g, 1.3, false, rng);
          const auto b1 = floqgap::testing::random_in_class(basis, p, i * g, 0.7, false, rng);
          CHECK(check_product_bound_1(a1, b1, p, i).ok);

          const auto a2 = floqgap::testing::random_in_class(basis, p, (i - 1) * g, 1.0, false, rng);
          const auto b2 = floqgap::testing::random_in_class(basis, p - 1.0, i * g, 1.0, false, rng);
          CHECK(check_product_bound_2(a2, b2, p, i).ok);

          const auto a3 =
              floqgap::testing::random_in_class(basis, p + 1.0, (i - 1) * g, 1.0, false, rng);
          const auto b3 =
              floqgap::testing::random_in_class(basis, p - 1.0, (i + 1) * g, 1.0, false, rng);
          CHECK(check_product_bound_3(a3, b3, p, i).ok);
        }
      }
    }
  }
}

TEST_CASE("elementary ratio inequality") { CHECK(check_elementary_ratio(64)); }

TEST_CASE("small block norms against SVD") {
  Rng rng(29);
  for (int rep = 0; rep < 50; ++rep) {
    Matrix b(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) b(r, c) = floqgap::testing::random_unit_disk(rng);
    const double svd = b.jacobiSvd().singularValues()(0);
    CHECK(small_block_norm(b) == doctest::Approx(svd).epsilon(1e-12));
  }
}

TEST_CASE("operator json round trip") {
  const auto basis = build_power_basis(0.5, 6, MultiplicityRule::howland);
  Rng rng(31);
  const auto a = floqgap::testing::random_in_class(basis, 3.0, 0.25, 1.0, true, rng);
  const Json j = operator_to_json(a);
  const BlockOperator back = operator_from_json(j, basis);
  CHECK((back.matrix() - a.matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.hermitian() == a.hermitian());
}
