// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

#include "floqgap/antiadiabatic.hpp"
#include "floqgap/diagonalization.hpp"
#include "floqgap/errors.hpp"
#include "floqgap/evolution.hpp"
#include "floqgap/norm_constants.hpp"
#include "floqgap/toml_lite.hpp"

namespace floqgap {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ValidationError("config: " + field + ": " + what);
}

double get_number(const Json& j, const std::string& field, const std::string& key, double dflt) {
  if (!j.contains(key)) return dflt;
  const auto& v = j.at(key);
  if (!v.is_number()) field_error(field + "." + key, "expected a number");
  return v.get<double>();
}

long get_integer(const Json& j, const std::string& field, const std::string& key, long dflt) {
  if (!j.contains(key)) return dflt;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) field_error(field + "." + key, "expected an integer");
  return v.get<long>();
}

bool get_bool(const Json& j, const std::string& field, const std::string& key, bool dflt) {
  if (!j.contains(key)) return dflt;
  const auto& v = j.at(key);
  if (!v.is_boolean()) field_error(field + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::string get_string(const Json& j, const std::string& field, const std::string& key,
                       const std::string& dflt) {
  if (!j.contains(key)) return dflt;
  const auto& v = j.at(key);
  if (!v.is_string()) field_error(field + "." + key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  ExperimentConfig cfg;
  if (!j.is_object()) throw ValidationError("config: top level must be a table");
  cfg.spec_version = static_cast<int>(get_integer(j, "", "spec_version", 1));
  if (cfg.spec_version != 1) field_error("spec_version", "unsupported version");

  if (!j.contains("model") || !j.at("model").is_object()) {
    field_error("model", "missing section");
  }
  const Json& m = j.at("model");
  cfg.model_kind = get_string(m, "model", "model", "");
  if (cfg.model_kind != "howland" && cfg.model_kind != "discrete") {
    field_error("model.model", "must be \"howland\" or \"discrete\"");
  }

  const double alpha = get_number(m, "model", "alpha", 0.5);
  if (!(alpha > 0.0 && alpha < 1.0)) field_error("model.alpha", "must lie in (0,1)");
  const int N = static_cast<int>(get_integer(m, "model", "N", 256));

  if (cfg.model_kind == "howland") {
    cfg.howland.alpha = alpha;
    cfg.howland.N = N;
    cfg.howland.epsilon = get_number(m, "model", "epsilon", 0.0);
    cfg.howland.k_smooth = static_cast<int>(get_integer(m, "model", "k_smooth", 3));
    cfg.howland.shift = get_number(m, "model", "shift", 1.0);
    cfg.howland.period = get_number(m, "model", "period", cfg.howland.period);
    if (m.contains("potential")) {
      if (!m.at("potential").is_array()) {
        field_error("model.potential", "expected an array of [j, k, re, im] rows");
      }
      for (const auto& row : m.at("potential")) {
        if (!row.is_array() || row.size() < 3 || row.size() > 4) {
          field_error("model.potential", "rows must be [j, k, re] or [j, k, re, im]");
        }
        PotentialCoeff c;
        c.j = row.at(0).get<int>();
        c.k = row.at(1).get<int>();
        c.value = Complex(row.at(2).get<double>(),
                          row.size() == 4 ? row.at(3).get<double>() : 0.0);
        cfg.howland.potential.push_back(c);
      }
    }
    cfg.howland.validate();
  } else {
    cfg.discrete.alpha = alpha;
    cfg.discrete.N = N;
    cfg.discrete.lambda = get_number(m, "model", "lambda", 1.0);
    cfg.discrete.period = get_number(m, "model", "period", cfg.discrete.period);
    cfg.discrete.a0 = get_number(m, "model", "a0", 1.0);
    if (m.contains("a_cos")) cfg.discrete.a_cos = m.at("a_cos").get<std::vector<double>>();
    if (m.contains("a_sin")) cfg.discrete.a_sin = m.at("a_sin").get<std::vector<double>>();
    cfg.discrete.phi_max_harmonics =
        static_cast<int>(get_integer(m, "model", "phi_max_harmonics", 64));
    cfg.discrete.phi_residual_tol = get_number(m, "model", "phi_residual_tol", 1e-10);
    cfg.discrete.validate();
  }

  const Json pipe = j.contains("pipeline") ? j.at("pipeline") : Json::object();
  cfg.pipeline.p = get_number(pipe, "pipeline", "p", 3.5);
  if (!(cfg.pipeline.p > 2.0)) field_error("pipeline.p", "must satisfy p > 2");
  cfg.pipeline.q = static_cast<int>(get_integer(pipe, "pipeline", "q", 0));
  cfg.pipeline.tol = get_number(pipe, "pipeline", "tol", 1e-12);
  if (!(cfg.pipeline.tol > 0.0)) field_error("pipeline.tol", "must be positive");
  cfg.pipeline.strict = get_bool(pipe, "pipeline", "strict", true);
  cfg.pipeline.commuting = get_bool(pipe, "pipeline", "commuting", false);
  if (cfg.pipeline.q != 0 &&
      (cfg.pipeline.q < 1 || !(static_cast<double>(cfg.pipeline.q) < cfg.pipeline.p - 1.0))) {
    field_error("pipeline.q", "must be a natural number with 1 <= q < p-1");
  }

  const Json evo = j.contains("evolution") ? j.at("evolution") : Json::object();
  cfg.evolution.n_periods = get_integer(evo, "evolution", "n_periods", 1000);
  if (cfg.evolution.n_periods < 1) field_error("evolution.n_periods", "must be >= 1");
  cfg.evolution.steps_per_period =
      static_cast<int>(get_integer(evo, "evolution", "steps_per_period", 64));
  if (cfg.evolution.steps_per_period < 1) {
    field_error("evolution.steps_per_period", "must be >= 1");
  }
  cfg.evolution.psi0 = get_string(evo, "evolution", "psi0", "ground");
  cfg.evolution.gaussian_center = get_number(evo, "evolution", "gaussian_center", 1.0);
  cfg.evolution.gaussian_width = get_number(evo, "evolution", "gaussian_width", 2.0);
  cfg.evolution.seed = static_cast<std::uint64_t>(get_integer(evo, "evolution", "seed", 0));
  cfg.evolution.intra_period_sampling =
      get_bool(evo, "evolution", "intra_period_sampling", false);
  cfg.evolution.samples_per_period =
      static_cast<int>(get_integer(evo, "evolution", "samples_per_period", 8));
  cfg.evolution.window_fraction = get_number(evo, "evolution", "window_fraction", -1.0);
  cfg.evolution.fit_method = get_string(evo, "evolution", "fit_method", "envelope_lsq");
  if (cfg.evolution.fit_method != "envelope_lsq" && cfg.evolution.fit_method != "tail_lsq") {
    field_error("evolution.fit_method", "must be envelope_lsq or tail_lsq");
  }

  const Json out = j.contains("output") ? j.at("output") : Json::object();
  cfg.output.dir = get_string(out, "output", "dir", ".");
  if (out.contains("formats")) cfg.output.formats = out.at("formats").get<std::vector<std::string>>();
  cfg.output.emit_gnuplot = get_bool(out, "output", "emit_gnuplot", false);
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  return from_json(load_config_file(path));
}

Json ExperimentConfig::echo() const {
  Json j;
  j["spec_version"] = spec_version;
  Json m;
  m["model"] = model_kind;
  if (model_kind == "howland") {
    m["alpha"] = howland.alpha;
    m["N"] = howland.N;
    m["epsilon"] = howland.epsilon;
    m["k_smooth"] = howland.k_smooth;
    m["shift"] = howland.shift;
    m["period"] = howland.period;
    Json pot = Json::array();
    for (const auto& c : howland.potential) {
      pot.push_back(Json::array({c.j, c.k, c.value.real(), c.value.imag()}));
    }
    m["potential"] = std::move(pot);
  } else {
    m["alpha"] = discrete.alpha;
    m["N"] = discrete.N;
    m["lambda"] = discrete.lambda;
    m["period"] = discrete.period;
    m["a0"] = discrete.a0;
    m["a_cos"] = discrete.a_cos;
    m["a_sin"] = discrete.a_sin;
  }
  j["model"] = std::move(m);
  j["pipeline"] = Json{{"p", pipeline.p},     {"q", pipeline.q},
                       {"tol", pipeline.tol}, {"strict", pipeline.strict},
                       {"commuting", pipeline.commuting}};
  j["evolution"] = Json{{"n_periods", evolution.n_periods},
                        {"steps_per_period", evolution.steps_per_period},
                        {"psi0", evolution.psi0},
                        {"gaussian_center", evolution.gaussian_center},
                        {"gaussian_width", evolution.gaussian_width},
                        {"seed", evolution.seed},
                        {"intra_period_sampling", evolution.intra_period_sampling},
                        {"samples_per_period", evolution.samples_per_period},
                        {"window_fraction", evolution.window_fraction},
                        {"fit_method", evolution.fit_method}};
  j["output"] = Json{{"dir", output.dir},
                     {"formats", output.formats},
                     {"emit_gnuplot", output.emit_gnuplot}};
  return j;
}

BuiltModel build_model(const ExperimentConfig& config) {
  if (config.model_kind == "howland") {
    HowlandOperators ops = build_howland(config.howland);
    Json meta;
    meta["shift"] = config.howland.shift;
    meta["zero_time_average"] = config.howland.zero_time_average();
    meta["dim"] = ops.basis->dim();
    return BuiltModel{ops.basis, std::move(ops.V), ops.certificate, std::move(meta)};
  }
  DiscreteOperators ops = build_discrete(config.discrete);
  Json meta;
  meta["kappa"] = ops.kappa;
  meta["phi_period"] = ops.V.period();
  meta["phi_harmonics"] = ops.phi_harmonics;
  meta["phi_residual"] = ops.phi_residual;
  meta["dim"] = ops.basis->dim();
  return BuiltModel{ops.basis, std::move(ops.V), ops.certificate, std::move(meta)};
}

Vector make_initial_state(const ExperimentConfig& config, const SpectralBasis& basis) {
  const std::string& spec = config.evolution.psi0;
  if (spec == "ground") return make_ground_state(basis);
  if (spec == "gaussian") {
    return make_gaussian_state(basis, config.evolution.gaussian_center,
                               config.evolution.gaussian_width);
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw ValidationError("config: evolution.psi0: cannot open '" + path + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw ValidationError("config: evolution.psi0: " + std::string(e.what()));
    }
    const auto re = j.at("re").get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
    if (static_cast<int>(re.size()) != basis.dim() || im.size() != re.size()) {
      throw ValidationError("config: evolution.psi0: vector length must equal basis dimension");
    }
    Vector psi(basis.dim());
    for (int i = 0; i < basis.dim(); ++i) psi[i] = Complex(re[i], im[i]);
    const double n = psi.norm();
    if (!(n > 0.0)) throw ValidationError("config: evolution.psi0: zero vector");
    return psi / n;
  }
  throw ValidationError("config: evolution.psi0: unknown spec '" + spec + "'");
}

namespace {

int pipeline_q(const ExperimentConfig& config) {
  return config.pipeline.q > 0 ? config.pipeline.q
                               : static_cast<int>(std::ceil(config.pipeline.p - 2.0));
}

double model_epsilon_threshold(const ExperimentConfig& config, const BuiltModel& model) {
  return epsilon_threshold(config.pipeline.p, pipeline_q(config), model.V.period(),
                           model.certificate.c_H, model.certificate.C_H);
}

}  // namespace

CommandOutcome cmd_certify_gaps(const ExperimentConfig& config) {
  const BuiltModel model = build_model(config);
  CommandOutcome out;
  out.report["certificate"] = certificate_to_json(model.certificate);
  out.report["basis"] = basis_to_json(*model.basis);
  out.report["model"] = model.metadata;
  return out;
}

CommandOutcome cmd_norms(const ExperimentConfig& config) {
  const BuiltModel model = build_model(config);
  const double g = model.basis->gamma();
  const double p = config.pipeline.p;

  CommandOutcome out;
  Json& r = out.report;
  r["config"] = config.echo();
  r["c_H"] = model.certificate.c_H;
  r["C_H"] = model.certificate.C_H;
  const double norm_pg = family_class_norm(model.V, {p, g});
  r["norm_p_gamma"] = norm_entry(p, g, norm_pg);
  r["norms"] = Json::array({norm_entry(p, g, norm_pg),
                            norm_entry(p, 0.0, family_class_norm(model.V, {p, 0.0}))});

  const BlockOperator v0 = model.V.evaluate(0.0);
  const ShChainCheck sh = check_sh_chain(v0, p, g);
  r["sh_bound_ok"] = sh.op_le_sh.ok && sh.sh_le_class.ok;
  r["sh_chain"] = Json{{"op_le_sh", bound_check_to_json(sh.op_le_sh)},
                       {"sh_le_class", bound_check_to_json(sh.sh_le_class)}};
  r["sh_constant"] = sh_constant(p, g);
  r["cp_constant"] = cp_constant(p);
  r["commutator_bound"] =
      bound_check_to_json(check_commutator_bound(v0, p, g, model.certificate));
  r["product_bound_1"] = bound_check_to_json(check_product_bound_1(v0, v0, p, 1));
  r["elementary_ratio_ok"] = check_elementary_ratio(model.basis->blocks());

  const double threshold = model_epsilon_threshold(config, model);
  r["epsilon_threshold"] = threshold;
  r["epsilon_used"] = norm_pg;
  if (config.pipeline.strict && norm_pg > threshold) {
    r["refusal"] = "perturbation norm exceeds the admissible threshold in strict mode";
    out.exit_code = kExitBoundViolation;
  }
  return out;
}

CommandOutcome cmd_threshold(const ExperimentConfig& config) {
  const BuiltModel model = build_model(config);
  CommandOutcome out;
  const int q = pipeline_q(config);
  out.report["p"] = config.pipeline.p;
  out.report["q"] = q;
  out.report["T"] = model.V.period();
  out.report["c_H"] = model.certificate.c_H;
  out.report["C_H"] = model.certificate.C_H;
  out.report["epsilon_threshold"] = model_epsilon_threshold(config, model);
  out.report["epsilon_used"] =
      family_class_norm(model.V, {config.pipeline.p, model.basis->gamma()});
  return out;
}

CommandOutcome cmd_antiadiabatic(const ExperimentConfig& config) {
  const BuiltModel model = build_model(config);
  const BlockOperator Y = BlockOperator::zero(model.basis);
  AntiAdiabaticOptions opts;
  opts.tol = config.pipeline.tol;
  const AntiAdiabaticResult res =
      config.pipeline.commuting
          ? anti_adiabatic_commuting(Y, model.V, config.pipeline.p + 1.0, model.certificate, opts)
          : anti_adiabatic_transform(Y, model.V, config.pipeline.p, 1, model.certificate, opts);

  CommandOutcome out;
  Json& r = out.report;
  r["config"] = config.echo();
  r["series_terms_used"] = res.series_terms_used;
  r["harmonic_cutoff"] = res.harmonic_cutoff;
  r["discarded_energy"] = res.discarded_energy;
  r["input_norm"] = res.input_norm;
  r["bound"] = Json{{"measured", res.achieved_norm},
                    {"bound", res.bound_rhs},
                    {"pass", res.bound_ok},
                    {"slack", res.bound_rhs - res.achieved_norm}};
  if (!res.bound_ok) out.exit_code = kExitBoundViolation;
  return out;
}

CommandOutcome cmd_diagonalize(const ExperimentConfig& config) {
  const BuiltModel model = build_model(config);
  const BlockOperator Y = BlockOperator::zero(model.basis);
  const BlockOperator Zbar = time_average(model.V);
  DiagonalizationOptions opts;
  opts.tol = config.pipeline.tol;
  opts.strict = config.pipeline.strict;
  const DiagonalizationResult res =
      progressive_diagonalize(Y, Zbar, config.pipeline.p, 1, model.certificate, opts);

  CommandOutcome out;
  Json& r = out.report;
  r["config"] = config.echo();
  r["steps"] = res.state.steps;
  r["M"] = res.state.M;
  r["x_history"] = res.state.x_history;
  Json steps = Json::array();
  for (const auto& rec : res.state.records) steps.push_back(step_record_to_json(rec));
  r["per_step"] = std::move(steps);
  r["final_offdiag_class_norm"] = res.state.final_offdiag_class_norm;
  r["unitarity_defect"] = res.state.unitarity_defect;
  r["norm_A"] = Json{{"measured", res.state.norm_A}, {"bound", res.state.norm_A_rhs}};
  r["warnings"] = res.state.warnings;
  if (!res.state.warnings.empty()) out.exit_code = kExitBoundViolation;
  return out;
}

CommandOutcome cmd_reduce(const ExperimentConfig& config, const std::string& out_dir) {
  const BuiltModel model = build_model(config);
  PipelineOptions opts;
  opts.strict = config.pipeline.strict;
  opts.diag.tol = config.pipeline.tol;
  opts.diag.strict = config.pipeline.strict;
  opts.aa.tol = config.pipeline.tol;
  const PipelineResult res =
      reduce_floquet(model.V, config.pipeline.p, pipeline_q(config), model.certificate, opts);

  CommandOutcome out;
  Json& r = out.report;
  r["config"] = config.echo();
  r["q"] = res.q;
  r["epsilon_used"] = res.epsilon_used;
  r["epsilon_threshold"] = res.epsilon_threshold;
  Json steps = Json::array();
  for (const auto& s : res.per_step) steps.push_back(pipeline_step_to_json(s));
  r["per_step"] = std::move(steps);
  r["warnings"] = res.warnings;

  std::filesystem::create_directories(out_dir);
  const std::string a_path = out_dir + "/reduce_A.json";
  const std::string b_path = out_dir + "/reduce_B.json";
  {
    Json doc;
    doc["basis"] = basis_to_json(*model.basis);
    doc["operator"] = operator_to_json(res.A);
    std::ofstream(a_path) << doc.dump(2) << "\n";
  }
  {
    Json doc;
    doc["basis"] = basis_to_json(*model.basis);
    doc["family"] = family_to_json(res.B);
    std::ofstream(b_path) << doc.dump(2) << "\n";
  }
  r["files"] = Json{{"A", a_path}, {"B", b_path}};

  bool all_pass = res.warnings.empty();
  for (const auto& s : res.per_step) {
    for (const auto& [name, verdict] : s.checks) {
      if (verdict != "pass") all_pass = false;
    }
  }
  if (!all_pass) out.exit_code = kExitBoundViolation;
  return out;
}

CommandOutcome cmd_evolve(const ExperimentConfig& config, const std::string& out_dir) {
  const BuiltModel model = build_model(config);
  const Vector psi0 = make_initial_state(config, *model.basis);

  PropagationOptions popts;
  popts.steps_per_period = config.evolution.steps_per_period;
  popts.intra_period_sampling = config.evolution.intra_period_sampling;
  popts.samples_per_period = config.evolution.samples_per_period;

  EnergyTrace trace = propagate(model.V, psi0, config.evolution.n_periods, popts);
  trace.config_ref = config.model_kind;

  const FitMethod method = config.evolution.fit_method == "tail_lsq" ? FitMethod::tail_lsq
                                                                     : FitMethod::envelope_lsq;
  const ExponentFit fit = fit_exponent(trace, config.evolution.window_fraction, method);
  const TrivialBound bound = trivial_bound(model.V, psi0);
  const double trace_slope = fit_linear_slope(trace, config.evolution.window_fraction);

  double sigma_theory = std::numeric_limits<double>::quiet_NaN();
  bool sigma_ok = true;
  try {
    sigma_theory = theoretical_sigma(model.basis->alpha(), config.pipeline.p);
    sigma_ok = fit.sigma_fit <= sigma_theory + 0.1;
  } catch (const BoundVacuous&) {
    // vacuous regime: no sigma comparison
  }
  bool bound_ok = true;
  for (size_t i = 0; i < trace.times.size(); ++i) {
    if (trace.values[i] > bound(trace.times[i]) + bound.v_sup + 1e-9) {
      bound_ok = false;
      break;
    }
  }
  const bool pass = sigma_ok && bound_ok;

  CommandOutcome out;
  Json& r = out.report;
  r["config"] = config.echo();
  r["model"] = model.metadata;
  r["sigma_fit"] = fit.sigma_fit;
  r["ci"] = fit.ci_halfwidth;
  if (std::isfinite(sigma_theory)) r["sigma_theory"] = sigma_theory;
  r["trivial_slope"] = bound.slope_per_period;
  r["trivial_intercept"] = bound.intercept;
  r["v_sup"] = bound.v_sup;
  r["trace_slope"] = trace_slope;
  r["fit"] = fit_to_json(fit);
  r["psi_norm_drift"] = trace.psi_norm_drift;
  r["unitarity_drift"] = trace.unitarity_drift;
  r["pass"] = pass;

  std::filesystem::create_directories(out_dir);
  const std::string csv_path = out_dir + "/trace.csv";
  {
    std::ofstream os(csv_path);
    write_trace_csv(os, trace);
  }
  const std::string json_path = out_dir + "/trace.json";
  {
    Json doc = trace_to_json(trace);
    doc["config"] = config.echo();
    std::ofstream(json_path) << doc.dump(2) << "\n";
  }
  r["files"] = Json{{"csv", csv_path}, {"json", json_path}};
  if (config.output.emit_gnuplot) {
    const std::string gp_path = out_dir + "/trace.gp";
    std::ofstream gp(gp_path);
    gp << "set logscale xy\n"
       << "set xlabel 'periods'\n"
       << "set ylabel '<H>'\n"
       << "set datafile separator ','\n"
       << "plot 'trace.csv' using 1:2 every ::1 with lines title 'energy', \\\n"
       << "     " << bound.intercept + bound.v_sup << " + " << bound.slope_per_period
       << " * x with lines title 'trivial bound'\n";
    r["files"]["gnuplot"] = gp_path;
  }

  if (!pass) out.exit_code = kExitBoundViolation;
  return out;
}

CommandOutcome cmd_fit(const std::string& trace_csv, double window_fraction,
                       const std::string& method) {
  std::ifstream in(trace_csv);
  if (!in) throw ValidationError("cmd_fit: cannot open '" + trace_csv + "'");
  const EnergyTrace trace = read_trace_csv(in);
  const FitMethod m = method == "tail_lsq" ? FitMethod::tail_lsq : FitMethod::envelope_lsq;
  const ExponentFit fit = fit_exponent(trace, window_fraction, m);
  CommandOutcome out;
  out.report = fit_to_json(fit);
  out.report["source"] = trace_csv;
  return out;
}

CommandOutcome run_guarded(const std::function<CommandOutcome()>& fn) {
  const auto error_report = [](const char* kind, const std::string& what, int code) {
    CommandOutcome out;
    out.report["error"] = Json{{"kind", kind}, {"what", what}};
    out.exit_code = code;
    return out;
  };
  try {
    return fn();
  } catch (const ValidationError& e) {
    return error_report("validation", e.what(), kExitValidation);
  } catch (const BoundVacuous& e) {
    return error_report("bound_vacuous", e.what(), kExitValidation);
  } catch (const SmallnessViolated& e) {
    return error_report("smallness_violated", e.what(), kExitBoundViolation);
  } catch (const GapConditionViolated& e) {
    return error_report("gap_condition_violated", e.what(), kExitBoundViolation);
  } catch (const BoundViolation& e) {
    return error_report("bound_violation", e.what(), kExitBoundViolation);
  } catch (const SmallDivisorError& e) {
    return error_report("small_divisor", e.what(), kExitNumerical);
  } catch (const SeriesNotConverged& e) {
    return error_report("series_not_converged", e.what(), kExitNumerical);
  } catch (const NoConvergenceError& e) {
    return error_report("no_convergence", e.what(), kExitNumerical);
  } catch (const StepUnstable& e) {
    return error_report("step_unstable", e.what(), kExitNumerical);
  } catch (const PositivityViolated& e) {
    return error_report("positivity_violated", e.what(), kExitNumerical);
  } catch (const DegenerateTrace& e) {
    return error_report("degenerate_trace", e.what(), kExitNumerical);
  } catch (const Error& e) {
    return error_report("error", e.what(), kExitNumerical);
  }
}

}  // namespace floqgap
