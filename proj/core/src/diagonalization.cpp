// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/diagonalization.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "floqgap/errors.hpp"
#include "floqgap/norm_constants.hpp"

namespace floqgap {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

}  // namespace

double phi(double x) {
  if (x < 0.0) throw ValidationError("phi: requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x <= 1e-4) {
    // sum_{k=1..20} k x^k / (k+1)!
    double sum = 0.0;
    double xk = 1.0;        // x^k
    double fact = 1.0;      // (k+1)!
    for (int k = 1; k <= 20; ++k) {
      xk *= x;
      fact *= k + 1;
      sum += k * xk / fact;
    }
    return sum;
  }
  return std::exp(x) - std::expm1(x) / x;
}

Matrix exp_i_hermitian(const Matrix& H, double s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  const Vector ph = (Complex(0.0, s) * es.eigenvalues().cast<Complex>().array()).exp().matrix();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix exp_skew_hermitian(const Matrix& W) {
  // W^* = -W, so -iW is Hermitian and e^W = e^{i(-iW)}.
  return exp_i_hermitian(Complex(0.0, -1.0) * W, 1.0);
}

namespace {

// Phi(ad_W) V = sum_{k>=1} k/(k+1)! ad_W^k V; Hermitian for Hermitian V and
// skew-Hermitian W, enforced exactly on the result.
Matrix phi_ad_series(const Matrix& W, const Matrix& V, const BasisPtr& basis,
                     const ClassParams& params, double rel_tol, int cap) {
  Matrix cur = V;
  Matrix sum = Matrix::Zero(V.rows(), V.cols());
  double coeff = 1.0;  // k/(k+1)! tracked iteratively
  double accum_norm = 0.0;
  for (int k = 1; k <= cap; ++k) {
    cur = W * cur - cur * W;
    coeff = (k == 1) ? 0.5
                     : coeff * static_cast<double>(k) /
                           (static_cast<double>(k - 1) * static_cast<double>(k + 1));
    const Matrix term = coeff * cur;
    const double term_norm = class_norm(BlockOperator(basis, term), params);
    if (k > 1 && term_norm <= rel_tol * accum_norm) {
      return 0.5 * (sum + Matrix(sum.adjoint()));
    }
    sum += term;
    accum_norm = class_norm(BlockOperator(basis, sum), params);
    if (term_norm == 0.0 && accum_norm == 0.0) {
      return sum;
    }
  }
  throw SeriesNotConverged("progressive_diagonalize: Phi(ad_W) series cap reached");
}

void note(DiagonalizationState& state, StepRecord& rec, const std::string& name, bool ok,
          bool strict, const std::string& detail) {
  if (ok) {
    rec.bound_checks[name] = "pass";
    return;
  }
  if (strict) throw BoundViolation("progressive_diagonalize: " + name + " failed: " + detail);
  rec.bound_checks[name] = "warn";
  state.warnings.push_back(name + ": " + detail);
}

}  // namespace

DiagonalizationResult progressive_diagonalize(const BlockOperator& Y, const BlockOperator& Z_bar,
                                              double r, int i, const GapCertificate& cert,
                                              const DiagonalizationOptions& options) {
  if (!same_basis(Y, Z_bar)) {
    throw ValidationError("progressive_diagonalize: operands use different bases");
  }
  if (!Y.diagonal()) throw ValidationError("progressive_diagonalize: Y must be diagonal");
  if (!(r > 2.0)) throw ValidationError("progressive_diagonalize: requires r > 2");
  if (i < 1) throw ValidationError("progressive_diagonalize: requires i >= 1");
  if (!is_hermitian(Y) || !is_hermitian(Z_bar)) {
    throw ValidationError("progressive_diagonalize: Y and Zbar must be Hermitian");
  }

  const BasisPtr basis = Y.basis_ptr();
  const double g = basis->gamma();
  const ClassParams v_params{r, i * g};
  const ClassParams w_params{r + 1.0, (i - 1) * g};
  const ClassParams inf_gamma{ClassParams::inf, g};

  DiagonalizationState state;
  state.M = cert.c_H / (2.0 * kPi * cp_constant(r + 1.0));

  const double norm_Y = class_norm(Y, inf_gamma);
  const double norm_Zbar = class_norm(Z_bar, v_params);
  const double smallness_lhs = norm_Y + norm_Zbar;
  const double smallness_rhs = cert.c_H / (4.0 * kPi * cp_constant(r + 1.0));
  state.smallness_ok = smallness_lhs <= smallness_rhs * (1.0 + 1e-12);
  if (!state.smallness_ok) {
    const std::string msg = "||Y|| + ||Zbar|| = " + fmt(smallness_lhs) + " exceeds c_H/(4 pi C_{r+1}) = " +
                            fmt(smallness_rhs);
    if (options.strict) throw SmallnessViolated("progressive_diagonalize: " + msg);
    state.warnings.push_back("smallness: " + msg);
  }

  BlockOperator G = Y + diag_part(Z_bar);
  BlockOperator V = offdiag_part(Z_bar);
  Matrix U = Matrix::Identity(basis->dim(), basis->dim());

  SylvesterOptions syl;
  syl.divisor_floor = options.divisor_floor;
  syl.strict = options.strict;

  const Matrix H0 = hamiltonian_operator(basis).matrix() + Y.matrix() + Z_bar.matrix();

  for (int s = 1; s <= options.max_steps + 1; ++s) {
    const double norm_V = class_norm(V, v_params);
    const double x = norm_V / state.M;
    state.x_history.push_back(x);

    StepRecord rec;
    rec.s = s;
    rec.x = x;
    rec.norm_V = norm_V;
    rec.norm_G = class_norm(G, inf_gamma);

    // Quadratic contraction, comparing against the previous step.
    if (s >= 2) {
      const double prev = state.x_history[static_cast<size_t>(s - 2)];
      note(state, rec, "x_quadratic", x <= prev * prev * (1.0 + 1e-9) + 1e-300, options.strict,
           "x_" + std::to_string(s) + " = " + fmt(x) + " > x_" + std::to_string(s - 1) + "^2 = " +
               fmt(prev * prev));
    }
    // Recorded here; the strict-mode enforcement with its own error type
    // lives in sylvester_solve.
    note(state, rec, "eq_G", rec.norm_G <= cert.c_H / 6.0 * (1.0 + 1e-12), /*strict=*/false,
         "||G_s||_{inf,gamma} = " + fmt(rec.norm_G) + " > c_H/6 = " + fmt(cert.c_H / 6.0));

    if (norm_V < options.tol || x < options.x_floor) {
      state.converged = true;
      state.records.push_back(std::move(rec));
      break;
    }
    if (s > options.max_steps) {
      state.records.push_back(std::move(rec));
      throw NoConvergenceError("progressive_diagonalize: " + std::to_string(options.max_steps) +
                               " steps exceeded, ||V|| = " + fmt(norm_V));
    }

    SylvesterSolution sol = sylvester_solve(G, V, cert, syl);
    rec.norm_W = class_norm(sol.W, w_params);
    note(state, rec, "small_divisors", sol.report.min_distance_ratio >= 1.0 - 1e-12,
         options.strict, "distance ratio " + fmt(sol.report.min_distance_ratio));
    note(state, rec, "ws_bound",
         rec.norm_W <= (kPi / cert.c_H) * norm_V * (1.0 + 1e-12), options.strict,
         "||W||_{r+1,(i-1)gamma} = " + fmt(rec.norm_W) + " > (pi/c_H)||V|| = " +
             fmt(kPi / cert.c_H * norm_V));

    const Matrix update =
        phi_ad_series(sol.W.matrix(), V.matrix(), basis, v_params, options.series_tol,
                      options.series_cap);
    const BlockOperator update_op(basis, update, true, false);

    const Matrix eW = exp_skew_hermitian(sol.W.matrix());
    if (options.debug_crosscheck) {
      const Matrix Hs = hamiltonian_operator(basis).matrix() + G.matrix() + V.matrix();
      const Matrix dense = eW * Hs * eW.adjoint();
      const Matrix series = hamiltonian_operator(basis).matrix() + G.matrix() + update;
      const double dev = (dense - series).cwiseAbs().maxCoeff();
      note(state, rec, "series_crosscheck", dev <= 1e-10 * std::max(1.0, max_abs_entry(G)),
           options.strict, "series vs dense conjugation deviation " + fmt(dev));
    }

    G = G + diag_part(update_op);
    V = offdiag_part(update_op);
    U = eW * U;
    state.records.push_back(std::move(rec));
    state.steps = s;
  }

  BlockOperator Uop(basis, std::move(U), false, false);
  BlockOperator A(basis, G.matrix(), true, true);

  // Final certificates.
  const Matrix conj = Uop.matrix() * H0 * Uop.matrix().adjoint();
  const BlockOperator conj_op(basis, conj, true, false);
  const BlockOperator off = offdiag_part(conj_op);
  state.final_offdiag_class_norm = class_norm(off, v_params);
  state.final_offdiag_spectral_norm = spectral_norm(off);
  state.unitarity_defect = spectral_norm(
      Matrix(Uop.matrix().adjoint() * Uop.matrix() - Matrix::Identity(basis->dim(), basis->dim())),
      true);
  state.norm_A = class_norm(A, inf_gamma);
  state.norm_A_rhs = 2.0 * (norm_Y + norm_Zbar);

  StepRecord final_rec;
  final_rec.s = state.steps + 1;
  note(state, final_rec, "final_offdiag", state.final_offdiag_class_norm < 10.0 * options.tol,
       options.strict,
       "offdiag(U (H+Y+Zbar) U^*) class norm " + fmt(state.final_offdiag_class_norm));
  note(state, final_rec, "norm_A",
       state.norm_A <= state.norm_A_rhs * (1.0 + 1e-12), options.strict,
       "||A||_{inf,gamma} = " + fmt(state.norm_A) + " > " + fmt(state.norm_A_rhs));
  note(state, final_rec, "unitarity", state.unitarity_defect < 1e-11, options.strict,
       "||U^*U - I|| = " + fmt(state.unitarity_defect));
  if (!state.records.empty()) {
    for (auto& [k, v] : final_rec.bound_checks) state.records.back().bound_checks[k] = v;
  }

  return DiagonalizationResult{std::move(Uop), std::move(A), std::move(state)};
}

ConjugationResult conjugate_family(const BlockOperator& U, const TimePeriodicOperator& X, double r,
                                   int i, int norm_grid) {
  std::map<int, BlockOperator> coeffs;
  for (const auto& [k, op] : X.coefficients()) {
    coeffs.emplace(k, BlockOperator(op.basis_ptr(),
                                    U.matrix() * op.matrix() * U.matrix().adjoint(), false, false));
  }
  TimePeriodicOperator out(X.period(), std::move(coeffs), X.hermitian_family());
  const double g = X.basis().gamma();
  const ClassParams params{r - 1.0, (i + 1) * g};
  const double lhs = family_class_norm(out, params, norm_grid);
  const double rhs = std::exp(2.0 * cp_constant(r) / cp_constant(r + 1.0)) *
                     family_class_norm(X, params, norm_grid);
  return ConjugationResult{std::move(out), make_bound_check(lhs, rhs)};
}

void UnitaryFamily::append_step(TimePeriodicOperator F, BlockOperator U) {
  factors_.push_back(Factor{std::move(F), std::move(U)});
}

BlockOperator UnitaryFamily::evaluate(double t) const {
  Matrix J = Matrix::Identity(basis_->dim(), basis_->dim());
  for (const auto& f : factors_) {
    // (U e^{iF})^* = e^{-iF} U^*
    J = J * exp_i_hermitian(f.F.evaluate(t).matrix(), -1.0) * f.U.matrix().adjoint();
  }
  return BlockOperator(basis_, std::move(J), false, false);
}

namespace {

template <typename Fn>
auto with_step_context(int i, Fn&& fn) {
  const std::string ctx = "reduce_floquet step " + std::to_string(i) + ": ";
  try {
    return fn();
  } catch (const SmallnessViolated& e) {
    throw SmallnessViolated(ctx + e.what());
  } catch (const GapConditionViolated& e) {
    throw GapConditionViolated(ctx + e.what());
  } catch (const SmallDivisorError& e) {
    throw SmallDivisorError(ctx + e.what());
  } catch (const SeriesNotConverged& e) {
    throw SeriesNotConverged(ctx + e.what());
  } catch (const NoConvergenceError& e) {
    throw NoConvergenceError(ctx + e.what());
  } catch (const BoundViolation& e) {
    throw BoundViolation(ctx + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(ctx + e.what());
  }
}

}  // namespace

PipelineResult reduce_floquet(const TimePeriodicOperator& V, double p, int q,
                              const GapCertificate& cert, const PipelineOptions& options) {
  if (!(p > 2.0)) throw ValidationError("reduce_floquet: requires p > 2");
  if (q <= 0) q = static_cast<int>(std::ceil(p - 2.0));
  if (q < 1 || !(static_cast<double>(q) < p - 1.0)) {
    throw ValidationError("reduce_floquet: requires a natural q with 1 <= q < p-1 (q = " +
                          std::to_string(q) + ", p = " + std::to_string(p) + ")");
  }
  const BasisPtr basis = V.basis_ptr();
  const double g = basis->gamma();
  const double T = V.period();

  PipelineResult result{UnitaryFamily(basis, T), BlockOperator::zero(basis),
                        TimePeriodicOperator::zero(T, basis), q};
  result.epsilon_used = family_class_norm(V, {p, g}, options.aa.norm_grid);
  result.epsilon_threshold = epsilon_threshold(p, q, T, cert.c_H, cert.C_H);
  if (result.epsilon_used > result.epsilon_threshold) {
    const std::string msg = "||V||_{p,gamma} = " + fmt(result.epsilon_used) +
                            " exceeds the admissible threshold " + fmt(result.epsilon_threshold);
    if (options.strict) throw SmallnessViolated("reduce_floquet: " + msg);
    result.warnings.push_back(msg);
  }

  BlockOperator A = BlockOperator::zero(basis);
  TimePeriodicOperator B = V;

  for (int i = 1; i <= q; ++i) {
    const double r = p - i + 1.0;
    PipelineStep step;
    step.i = i;
    step.r = r;
    step.norm_A_prev = class_norm(A, {ClassParams::inf, g});
    step.norm_B_prev = family_class_norm(B, {r, i * g}, options.aa.norm_grid);
    step.step_threshold = cert.c_H / (4.0 * kPi * cp_constant(r + 1.0));
    const bool step_ok = step.norm_A_prev + step.norm_B_prev <= step.step_threshold * (1.0 + 1e-12);
    step.checks["step_smallness"] = step_ok ? "pass" : (options.strict ? "fail" : "warn");
    if (!step_ok && options.strict) {
      throw SmallnessViolated("reduce_floquet step " + std::to_string(i) +
                              ": ||A_{i-1}|| + ||B_{i-1}|| = " +
                              fmt(step.norm_A_prev + step.norm_B_prev) + " exceeds " +
                              fmt(step.step_threshold));
    }

    const AntiAdiabaticResult aa = with_step_context(
        i, [&] { return anti_adiabatic_transform(A, B, r, i, cert, options.aa); });
    step.aa_bound_rhs = aa.bound_rhs;
    step.aa_achieved = aa.achieved_norm;
    step.checks["aa_bound"] = aa.bound_ok ? "pass" : "warn";
    if (!aa.bound_ok && options.strict && !aa.bound_within_1pct) {
      throw BoundViolation("reduce_floquet step " + std::to_string(i) +
                           ": transformed norm exceeds its certified bound by more than 1%");
    }

    DiagonalizationOptions diag = options.diag;
    diag.strict = options.strict;
    const DiagonalizationResult pd =
        with_step_context(i, [&] { return progressive_diagonalize(A, aa.Z_bar, r, i, cert, diag); });
    step.diag_steps = pd.state.steps;

    const ConjugationResult conj =
        conjugate_family(pd.U, aa.Z_diamond, r, i, options.aa.norm_grid);
    step.checks["conjugation_bound"] = conj.bound.ok ? "pass" : "warn";
    if (!conj.bound.ok && options.strict) {
      throw BoundViolation("reduce_floquet step " + std::to_string(i) +
                           ": conjugated family exceeds exp(2 C_r/C_{r+1}) bound");
    }

    const BlockOperator A_next = pd.A;
    step.norm_A = class_norm(A_next, {ClassParams::inf, g});
    step.bound_A_rhs = 2.0 * (step.norm_A_prev + step.norm_B_prev);
    step.checks["novy_diag"] =
        step.norm_A <= step.bound_A_rhs * (1.0 + 1e-12) ? "pass" : (options.strict ? "fail" : "warn");
    if (step.norm_A > step.bound_A_rhs * (1.0 + 1e-12) && options.strict) {
      throw BoundViolation("reduce_floquet step " + std::to_string(i) + ": ||A_i|| = " +
                           fmt(step.norm_A) + " exceeds 2(||A_{i-1}||+||B_{i-1}||) = " +
                           fmt(step.bound_A_rhs));
    }

    const double Cr = cp_constant(r);
    const double Cr1 = cp_constant(r + 1.0);
    step.norm_B = family_class_norm(conj.family, {r - 1.0, (i + 1) * g}, options.aa.norm_grid);
    step.bound_B_rhs = std::exp(2.0 * Cr / Cr1) / (2.0 * Cr) *
                       std::expm1(4.0 * Cr * T * step.norm_B_prev) *
                       (cert.C_H + 4.0 * step.norm_A_prev + 2.0 * Cr * step.norm_B_prev);
    step.checks["norm_B_bound"] =
        step.norm_B <= step.bound_B_rhs * (1.0 + 1e-12) ? "pass" : (options.strict ? "fail" : "warn");
    if (step.norm_B > step.bound_B_rhs * (1.0 + 1e-12) && options.strict) {
      throw BoundViolation("reduce_floquet step " + std::to_string(i) + ": ||B_i|| = " +
                           fmt(step.norm_B) + " exceeds its composed bound " + fmt(step.bound_B_rhs));
    }

    result.J.append_step(aa.F, pd.U);
    for (const auto& w : pd.state.warnings) {
      result.warnings.push_back("step " + std::to_string(i) + ": " + w);
    }
    A = A_next;
    B = conj.family;
    result.per_step.push_back(std::move(step));
  }

  result.A = A;
  result.B = B;
  return result;
}

double epsilon_threshold(double p, int q, double T, double c_H, double C_H) {
  if (!(p > 2.0)) throw ValidationError("epsilon_threshold: requires p > 2");
  if (q < 1 || !(static_cast<double>(q) < p - 1.0)) {
    throw ValidationError("epsilon_threshold: requires 1 <= q < p-1");
  }
  if (!(T > 0.0) || !(c_H > 0.0) || !(C_H > 0.0)) {
    throw ValidationError("epsilon_threshold: T, c_H, C_H must be positive");
  }

  const auto phi_step = [&](int j, double y) {
    const double Ca = cp_constant(p - j + 1.0);
    const double Cb = cp_constant(p - j + 2.0);
    return std::exp(2.0 * Ca / Cb) / (2.0 * Ca) * std::expm1(4.0 * Ca * T * y) *
           (C_H + c_H / (kPi * Cb) + (2.0 * Ca - 4.0) * y);
  };
  const auto F_fn = [&](int i, double y) {
    double value = std::pow(2.0, i - 1) * y;
    double composed = y;
    for (int j = 1; j <= i - 1; ++j) {
      composed = phi_step(j, composed);
      value += std::pow(2.0, i - 1 - j) * composed;
    }
    return value;
  };

  double eps = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= q; ++i) {
    const double target = c_H / (4.0 * kPi * cp_constant(p - i + 2.0));
    if (i == 1) {
      // F_1 is the identity, so the inverse is exact.
      eps = std::min(eps, target);
      continue;
    }
    // F_i is continuous, strictly increasing, F_i(0) = 0, so a root exists.
    double hi = 1.0;
    int guard = 0;
    while (F_fn(i, hi) < target && guard++ < 2000) hi *= 2.0;
    double lo = 0.0;
    while (hi - lo > 1e-12 * hi) {
      const double mid = 0.5 * (lo + hi);
      (F_fn(i, mid) < target ? lo : hi) = mid;
    }
    eps = std::min(eps, 0.5 * (lo + hi));
  }
  return eps;
}

}  // namespace floqgap
