// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/serialization.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include "floqgap/errors.hpp"

namespace floqgap {

Json basis_to_json(const SpectralBasis& basis) {
  Json j;
  j["alpha"] = basis.alpha();
  j["gamma"] = basis.gamma();
  j["eigenvalues"] = basis.eigenvalues();
  j["multiplicities"] = basis.multiplicities();
  return j;
}

BasisPtr basis_from_json(const Json& j) {
  try {
    return std::make_shared<const SpectralBasis>(j.at("eigenvalues").get<std::vector<double>>(),
                                                 j.at("multiplicities").get<std::vector<int>>(),
                                                 j.at("alpha").get<double>());
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("basis_from_json: ") + e.what());
  }
}

Json operator_to_json(const BlockOperator& op, const std::string& basis_ref) {
  Json j;
  j["basis_ref"] = basis_ref;
  Json blocks = Json::array();
  const SpectralBasis& basis = op.basis();
  for (int m = 1; m <= basis.blocks(); ++m) {
    for (int n = 1; n <= basis.blocks(); ++n) {
      if (op.block_norm(m, n) == 0.0) continue;
      const Matrix blk = op.block(m, n);
      Json re = Json::array(), im = Json::array();
      for (int r = 0; r < blk.rows(); ++r) {
        Json re_row = Json::array(), im_row = Json::array();
        for (int c = 0; c < blk.cols(); ++c) {
          re_row.push_back(blk(r, c).real());
          im_row.push_back(blk(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
      }
      blocks.push_back(Json{{"m", m}, {"n", n}, {"re", std::move(re)}, {"im", std::move(im)}});
    }
  }
  j["blocks"] = std::move(blocks);
  j["hermitian"] = op.hermitian();
  j["diagonal"] = op.diagonal();
  return j;
}

BlockOperator operator_from_json(const Json& j, BasisPtr basis) {
  try {
    Matrix data = Matrix::Zero(basis->dim(), basis->dim());
    for (const auto& blk : j.at("blocks")) {
      const int m = blk.at("m").get<int>();
      const int n = blk.at("n").get<int>();
      if (m < 1 || m > basis->blocks() || n < 1 || n > basis->blocks()) {
        throw ValidationError("operator_from_json: block index out of range");
      }
      const auto re = blk.at("re").get<std::vector<std::vector<double>>>();
      const auto im = blk.at("im").get<std::vector<std::vector<double>>>();
      const int dm = basis->multiplicity(m), dn = basis->multiplicity(n);
      if (static_cast<int>(re.size()) != dm || static_cast<int>(im.size()) != dm) {
        throw ValidationError("operator_from_json: block shape mismatch");
      }
      for (int r = 0; r < dm; ++r) {
        if (static_cast<int>(re[r].size()) != dn || static_cast<int>(im[r].size()) != dn) {
          throw ValidationError("operator_from_json: block shape mismatch");
        }
        for (int c = 0; c < dn; ++c) {
          data(basis->offset(m) + r, basis->offset(n) + c) = Complex(re[r][c], im[r][c]);
        }
      }
    }
    const bool hermitian = j.value("hermitian", false);
    const bool diagonal = j.value("diagonal", false);
    BlockOperator op(std::move(basis), std::move(data), hermitian, diagonal);
    if (hermitian && !is_hermitian(op)) {
      throw ValidationError("operator_from_json: hermitian flag contradicts the data");
    }
    if (diagonal && !is_diagonal_structure(op)) {
      throw ValidationError("operator_from_json: diagonal flag contradicts the data");
    }
    return op;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("operator_from_json: ") + e.what());
  }
}

Json family_to_json(const TimePeriodicOperator& z, const std::string& basis_ref) {
  Json j;
  j["period"] = z.period();
  Json harmonics = Json::array();
  for (const auto& [k, op] : z.coefficients()) {
    harmonics.push_back(Json{{"k", k}, {"operator", operator_to_json(op, basis_ref)}});
  }
  j["harmonics"] = std::move(harmonics);
  j["hermitian_family"] = z.hermitian_family();
  return j;
}

TimePeriodicOperator family_from_json(const Json& j, BasisPtr basis) {
  try {
    std::map<int, BlockOperator> coeffs;
    for (const auto& h : j.at("harmonics")) {
      coeffs.emplace(h.at("k").get<int>(), operator_from_json(h.at("operator"), basis));
    }
    return TimePeriodicOperator(j.at("period").get<double>(), std::move(coeffs),
                                j.value("hermitian_family", false));
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("family_from_json: ") + e.what());
  }
}

Json certificate_to_json(const GapCertificate& cert) {
  return Json{{"c_H", cert.c_H}, {"C_H", cert.C_H}, {"verified_up_to", cert.verified_up_to}};
}

Json norm_entry(double p, double delta, double value) {
  Json j;
  j["p"] = std::isinf(p) ? Json("inf") : Json(p);
  j["delta"] = delta;
  j["value"] = value;
  return j;
}

Json bound_check_to_json(const BoundCheck& check) {
  return Json{{"measured", check.lhs}, {"bound", check.rhs}, {"pass", check.ok}};
}

Json step_record_to_json(const StepRecord& rec) {
  Json j;
  j["s"] = rec.s;
  j["x_s"] = rec.x;
  j["norm_G"] = rec.norm_G;
  j["norm_V"] = rec.norm_V;
  j["norm_W"] = rec.norm_W;
  Json checks;
  for (const auto& [name, verdict] : rec.bound_checks) checks[name] = verdict;
  j["bound_checks"] = std::move(checks);
  return j;
}

Json pipeline_step_to_json(const PipelineStep& step) {
  Json j;
  j["i"] = step.i;
  j["r"] = step.r;
  j["norm_A_prev"] = step.norm_A_prev;
  j["norm_B_prev"] = step.norm_B_prev;
  j["step_threshold"] = step.step_threshold;
  j["norm_A"] = Json{{"measured", step.norm_A}, {"bound", step.bound_A_rhs}};
  j["norm_B"] = Json{{"measured", step.norm_B}, {"bound", step.bound_B_rhs}};
  j["antiadiabatic"] = Json{{"measured", step.aa_achieved}, {"bound", step.aa_bound_rhs}};
  j["diag_steps"] = step.diag_steps;
  Json checks;
  for (const auto& [name, verdict] : step.checks) checks[name] = verdict;
  j["checks"] = std::move(checks);
  return j;
}

Json trace_to_json(const EnergyTrace& trace) {
  Json j;
  j["times"] = trace.times;
  j["values"] = trace.values;
  j["psi_norm_drift"] = trace.psi_norm_drift;
  j["unitarity_drift"] = trace.unitarity_drift;
  j["steps_per_period"] = trace.steps_per_period;
  if (!trace.config_ref.empty()) j["config_ref"] = trace.config_ref;
  return j;
}

Json fit_to_json(const ExponentFit& fit) {
  Json j;
  j["sigma_fit"] = fit.sigma_fit;
  j["ci"] = fit.ci_halfwidth;
  j["window"] = Json{{"t_lo", fit.window_lo}, {"t_hi", fit.window_hi}};
  j["method"] = fit.method == FitMethod::envelope_lsq ? "envelope_lsq" : "tail_lsq";
  return j;
}

void write_trace_csv(std::ostream& os, const EnergyTrace& trace) {
  os << "t,energy,norm_drift\n";
  char buf[128];
  for (size_t i = 0; i < trace.times.size(); ++i) {
    const double drift = i < trace.norm_drifts.size() ? trace.norm_drifts[i] : 0.0;
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", trace.times[i], trace.values[i], drift);
    os << buf;
  }
}

EnergyTrace read_trace_csv(std::istream& is) {
  EnergyTrace trace;
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("read_trace_csv: empty file");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    double vals[3] = {0.0, 0.0, 0.0};
    int col = 0;
    while (std::getline(ls, cell, ',') && col < 3) {
      try {
        vals[col] = std::stod(cell);
      } catch (const std::exception&) {
        throw ValidationError("read_trace_csv: bad number '" + cell + "'");
      }
      ++col;
    }
    if (col < 2) throw ValidationError("read_trace_csv: need at least t,energy columns");
    trace.times.push_back(vals[0]);
    trace.values.push_back(vals[1]);
    trace.norm_drifts.push_back(vals[2]);
    trace.psi_norm_drift = std::max(trace.psi_norm_drift, std::abs(vals[2]));
  }
  return trace;
}

}  // namespace floqgap
