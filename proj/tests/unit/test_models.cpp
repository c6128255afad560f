// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "floqgap/errors.hpp"
#include "floqgap/models.hpp"
#include "test_helpers.hpp"

using namespace floqgap;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// cos(theta) cos(w t), the standard driven circle potential
HowlandModel cos_cos_model(int N, double eps) {
  HowlandModel m;
  m.alpha = 0.5;
  m.N = N;
  m.epsilon = eps;
  for (int j : {-1, 1})
    for (int k : {-1, 1}) m.potential.push_back({j, k, Complex(0.25, 0.0)});
  return m;
}

// Quadrature oracle: matrix elements of multiplication by v(.,t) between
// exponential modes via the trapezoid rule, mapped onto the block layout.
Matrix quadrature_multiplication(const HowlandModel& model, double t) {
  const int N = model.N;
  const int dim = 2 * N + 1;
  constexpr int kQuad = 4096;
  const auto mode_index = [&](int m) {
    if (m == 0) return 0;
    return 2 * std::abs(m) - 1 + (m > 0 ? 1 : 0);
  };
  Matrix out = Matrix::Zero(dim, dim);
  std::vector<Complex> v_samples(kQuad);
  const double w = kTwoPi / model.period;
  for (int q = 0; q < kQuad; ++q) {
    const double theta = kTwoPi * q / kQuad;
    Complex v = 0.0;
    for (const auto& c : model.potential) {
      v += c.value * std::exp(Complex(0.0, c.j * theta + c.k * w * t));
    }
    v_samples[q] = v;
  }
  for (int mp = -N; mp <= N; ++mp) {
    for (int m = -N; m <= N; ++m) {
      Complex acc = 0.0;
      for (int q = 0; q < kQuad; ++q) {
        const double theta = kTwoPi * q / kQuad;
        acc += std::exp(Complex(0.0, (m - mp) * theta)) * v_samples[q];
      }
      out(mode_index(mp), mode_index(m)) = model.epsilon * acc / static_cast<double>(kQuad);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("howland block structure for cos(theta) cos(wt)") {
  const HowlandModel model = cos_cos_model(6, 1.0);
  const HowlandOperators ops = build_howland(model);
  REQUIRE(ops.basis->blocks() == 7);
  CHECK(ops.basis->multiplicity(1) == 1);
  CHECK(ops.basis->multiplicity(2) == 2);
  CHECK(ops.basis->eigenvalue(1) == 1.0);

  const BlockOperator v0 = ops.V.evaluate(0.0);  // multiplication by cos(theta)
  // coupling only between neighbor blocks
  for (int m = 1; m <= 7; ++m) {
    for (int n = 1; n <= 7; ++n) {
      const double norm = v0.block_norm(m, n);
      if (std::abs(m - n) == 1) {
        const double expected = (std::min(m, n) == 1) ? 1.0 / std::sqrt(2.0) : 0.5;
        CHECK(norm == doctest::Approx(expected).epsilon(1e-14));
      } else {
        CHECK(norm == 0.0);
      }
    }
  }
}

TEST_CASE("howland assembly against the quadrature oracle") {
  HowlandModel model = cos_cos_model(5, 0.7);
  model.potential.push_back({2, 2, Complex(0.1, 0.05)});
  model.potential.push_back({-2, -2, Complex(0.1, -0.05)});
  const HowlandOperators ops = build_howland(model);
  for (double t : {0.0, 0.9, 3.3}) {
    const Matrix oracle = quadrature_multiplication(model, t);
    const Matrix built = ops.V.evaluate(t).matrix();
    CHECK((built - oracle).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("zero potential, hermiticity, gap certificate") {
  HowlandModel empty;
  empty.alpha = 0.5;
  empty.N = 8;
  empty.epsilon = 0.3;
  const HowlandOperators ops = build_howland(empty);
  CHECK(ops.V.evaluate(1.0).matrix().cwiseAbs().maxCoeff() == 0.0);
  CHECK(ops.certificate.c_H > 0.0);

  const HowlandOperators driven = build_howland(cos_cos_model(8, 0.4));
  for (int g = 0; g < 8; ++g) {
    CHECK(is_hermitian(driven.V.evaluate(kTwoPi * g / 8.0), 1e-14));
  }
}

TEST_CASE("ck decay report") {
  // banded potential: finite class norm for every k, and the
  // integration-by-parts bound holds
  HowlandModel model = cos_cos_model(16, 1.0);
  for (int k : {1, 2, 3}) {
    model.k_smooth = k;
    const CkDecayReport report = verify_ck_decay(model);
    CHECK(report.pass);
    CHECK(report.measured_norm <= report.bound * (1.0 + 1e-12));
  }

  // v = cos(theta) alone: ||v||_{1,0} is set by the 0<->1 block
  HowlandModel static_cos;
  static_cos.alpha = 0.5;
  static_cos.N = 16;
  static_cos.epsilon = 1.0;
  static_cos.k_smooth = 1;
  static_cos.potential = {{1, 0, Complex(0.5, 0.0)}, {-1, 0, Complex(0.5, 0.0)}};
  const CkDecayReport r1 = verify_ck_decay(static_cos);
  CHECK(r1.measured_norm == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r1.pass);
}

TEST_CASE("howland validation") {
  HowlandModel bad = cos_cos_model(4, 1.0);
  bad.potential.push_back({1, 1, Complex(0.3, 0.1)});  // breaks real-valuedness
  CHECK_THROWS_AS(build_howland(bad), ValidationError);

  HowlandModel noshift = cos_cos_model(4, 1.0);
  noshift.shift = 0.0;
  CHECK_THROWS_AS(build_howland(noshift), ValidationError);

  HowlandModel badalpha = cos_cos_model(4, 1.0);
  badalpha.alpha = 1.2;
  CHECK_THROWS_AS(build_howland(badalpha), ValidationError);
}

TEST_CASE("discrete model with constant drive") {
  DiscreteModel m;
  m.alpha = 0.5;
  m.N = 12;
  m.lambda = 2.0;
  m.period = 3.0;
  m.a0 = 1.0;
  const DiscreteOperators ops = build_discrete(m);
  CHECK(ops.kappa == doctest::Approx(3.0).epsilon(1e-15));

  // b(t) = lambda t, phi = 1/lambda
  CHECK(ops.reparam.b(1.7) == doctest::Approx(2.0 * 1.7).epsilon(1e-14));
  CHECK(ops.reparam.b_inverse(2.6) == doctest::Approx(1.3).epsilon(1e-10));
  const BlockOperator v = ops.V.evaluate(0.77);
  // -phi Delta has a single band at |m-n| = 1 with entries 1/lambda
  for (int n = 1; n < 12; ++n) {
    CHECK(v.block_norm(n, n + 1) == doctest::Approx(0.5).epsilon(1e-10));
  }
  CHECK(v.block_norm(1, 3) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ops.phi_residual < 1e-10);
}

TEST_CASE("discrete model with cosine drive") {
  DiscreteModel m;
  m.alpha = 0.5;
  m.N = 16;
  m.lambda = 1.0;
  m.period = kTwoPi;
  m.a0 = 1.0;
  m.a_cos = {0.5};
  const DiscreteOperators ops = build_discrete(m);

  // b(T) = T for a unit-mean drive; b(T/2) = T/2 + 0.5 sin(pi)/w = T/2
  CHECK(ops.reparam.b(kTwoPi) == doctest::Approx(kTwoPi).epsilon(1e-13));
  CHECK(ops.reparam.b(kTwoPi / 2.0) == doctest::Approx(kTwoPi / 2.0).epsilon(1e-13));

  // b and its inverse on a dense grid
  for (int g = 0; g <= 64; ++g) {
    const double t = 3.0 * kTwoPi * g / 64.0;
    CHECK(std::abs(ops.reparam.b(ops.reparam.b_inverse(t)) - t) < 1e-10);
  }
  // strict monotonicity of b
  double prev = ops.reparam.b(0.0);
  for (int g = 1; g <= 256; ++g) {
    const double v = ops.reparam.b(kTwoPi * g / 256.0);
    CHECK(v > prev);
    prev = v;
  }

  // -phi(t) Delta lies in Y(p, 0) for every p, with norm max_t |phi|
  double phi_max = 0.0;
  for (int g = 0; g < 256; ++g) {
    const double t = ops.V.period() * g / 256.0;
    phi_max = std::max(phi_max, 1.0 / ops.reparam.a(ops.reparam.b_inverse(t)));
  }
  for (double p : {1.0, 3.0, 6.0}) {
    CHECK(family_class_norm(ops.V, {p, 0.0}, 256) == doctest::Approx(phi_max).epsilon(1e-8));
  }
  CHECK(ops.phi_residual < 1e-10);
  for (int g = 0; g < 8; ++g) {
    CHECK(is_hermitian(ops.V.evaluate(ops.V.period() * g / 8.0), 1e-12));
  }
}

TEST_CASE("positivity violation") {
  DiscreteModel m;
  m.alpha = 0.5;
  m.N = 8;
  m.a0 = 1.0;
  m.a_cos = {-1.5};
  CHECK_THROWS_AS(build_discrete(m), PositivityViolated);
}
