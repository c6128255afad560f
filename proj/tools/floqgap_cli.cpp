// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line harness: builds models from a TOML/JSON config, runs the
// norm calculus, the reduction pipeline, and long-time evolutions, and
// writes machine-readable reports.

#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "floqgap/errors.hpp"
#include "floqgap/experiment.hpp"
#include "floqgap/toml_lite.hpp"

namespace {

using floqgap::CommandOutcome;
using floqgap::ExperimentConfig;
using floqgap::Json;

struct GlobalArgs {
  std::string config_path;
  std::string out_dir;
  bool strict = false;
  bool permissive = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string sweep;
  bool emit_gnuplot = false;
};

void add_common_flags(CLI::App* cmd, GlobalArgs& args, bool needs_config = true) {
  auto* opt = cmd->add_option("--config", args.config_path, "experiment config (TOML or JSON)");
  if (needs_config) opt->required();
  cmd->add_option("--out", args.out_dir, "output directory (overrides output.dir)");
  cmd->add_flag("--strict", args.strict, "enforce all certified bounds");
  cmd->add_flag("--permissive", args.permissive, "downgrade bound failures to warnings");
  cmd->add_option("--seed", args.seed, "seed echoed into outputs")->each([&](const std::string&) {
    args.seed_set = true;
  });
  cmd->add_option("--sweep", args.sweep, "fan out over KEY=V1,V2,... (dotted config key)");
  cmd->add_flag("--emit-gnuplot", args.emit_gnuplot, "write a gnuplot script next to the CSV");
}

// Applies "a.b.c=value" onto the raw config tree.
void apply_key(Json& tree, const std::string& dotted, const std::string& value) {
  Json* node = &tree;
  size_t start = 0;
  while (true) {
    const size_t dot = dotted.find('.', start);
    const std::string part = dotted.substr(start, dot == std::string::npos ? dot : dot - start);
    if (part.empty()) throw floqgap::ValidationError("sweep: empty key segment in '" + dotted + "'");
    if (dot == std::string::npos) {
      try {
        (*node)[part] = Json::parse(value);
      } catch (const Json::exception&) {
        (*node)[part] = value;  // plain string
      }
      return;
    }
    if (!node->contains(part)) (*node)[part] = Json::object();
    node = &(*node)[part];
    start = dot + 1;
  }
}

Json load_tree(const GlobalArgs& args) {
  Json tree = floqgap::load_config_file(args.config_path);
  if (args.strict && args.permissive) {
    throw floqgap::ValidationError("--strict and --permissive are mutually exclusive");
  }
  if (args.strict) apply_key(tree, "pipeline.strict", "true");
  if (args.permissive) apply_key(tree, "pipeline.strict", "false");
  if (args.seed_set) apply_key(tree, "evolution.seed", std::to_string(args.seed));
  if (args.emit_gnuplot) apply_key(tree, "output.emit_gnuplot", "true");
  if (!args.out_dir.empty()) apply_key(tree, "output.dir", "\"" + args.out_dir + "\"");
  return tree;
}

using Runner = std::function<CommandOutcome(const ExperimentConfig&)>;

int run_command(const GlobalArgs& args, const Runner& runner) {
  const CommandOutcome outcome = floqgap::run_guarded([&]() -> CommandOutcome {
    Json tree = load_tree(args);

    if (args.sweep.empty()) {
      return runner(ExperimentConfig::from_json(tree));
    }

    const size_t eq = args.sweep.find('=');
    if (eq == std::string::npos) {
      throw floqgap::ValidationError("--sweep expects KEY=V1,V2,...");
    }
    const std::string key = args.sweep.substr(0, eq);
    std::vector<std::string> values;
    std::string rest = args.sweep.substr(eq + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
      const size_t comma = rest.find(',', pos);
      values.push_back(rest.substr(pos, comma == std::string::npos ? comma : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (values.empty()) throw floqgap::ValidationError("--sweep has no values");

    // One worker per sweep value; results merged in config order.
    std::vector<CommandOutcome> results(values.size());
    std::vector<std::thread> workers;
    workers.reserve(values.size());
    for (size_t i = 0; i < values.size(); ++i) {
      workers.emplace_back([&, i] {
        results[i] = floqgap::run_guarded([&]() -> CommandOutcome {
          Json local = tree;
          apply_key(local, key, values[i]);
          return runner(ExperimentConfig::from_json(local));
        });
      });
    }
    for (auto& w : workers) w.join();

    CommandOutcome merged;
    merged.report["sweep"] = key;
    Json runs = Json::array();
    for (size_t i = 0; i < values.size(); ++i) {
      Json entry;
      entry["value"] = values[i];
      entry["exit_code"] = results[i].exit_code;
      entry["report"] = results[i].report;
      runs.push_back(std::move(entry));
      merged.exit_code = std::max(merged.exit_code, results[i].exit_code);
    }
    merged.report["runs"] = std::move(runs);
    return merged;
  });

  std::cout << outcome.report.dump(2) << "\n";
  return outcome.exit_code;
}

std::string out_dir_of(const GlobalArgs& args, const ExperimentConfig& cfg) {
  return args.out_dir.empty() ? cfg.output.dir : args.out_dir;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-class calculus and energy-growth experiments for periodically driven "
               "Hamiltonians with shrinking spectral gaps"};
  app.require_subcommand(1);

  GlobalArgs norms_args, certify_args, aa_args, diag_args, reduce_args, evolve_args, thr_args;
  add_common_flags(app.add_subcommand("norms", "class norms, certificates, inequality checks"),
                   norms_args);
  add_common_flags(app.add_subcommand("certify-gaps", "gap-condition certificate for the model"),
                   certify_args);
  add_common_flags(app.add_subcommand("antiadiabatic", "one anti-adiabatic transform"), aa_args);
  add_common_flags(app.add_subcommand("diagonalize", "progressive diagonalization of H + Zbar"),
                   diag_args);
  add_common_flags(app.add_subcommand("reduce", "full q-step reduction pipeline"), reduce_args);
  add_common_flags(app.add_subcommand("evolve", "long-time propagation and exponent fit"),
                   evolve_args);
  add_common_flags(app.add_subcommand("threshold", "admissible perturbation size"), thr_args);

  GlobalArgs fit_args;
  std::string fit_trace;
  double fit_window = -1.0;
  std::string fit_method = "envelope_lsq";
  auto* fit_cmd = app.add_subcommand("fit", "exponent fit of an existing trace CSV");
  fit_cmd->add_option("--trace", fit_trace, "trace CSV file")->required();
  fit_cmd->add_option("--window-fraction", fit_window, "fraction of the log-time span to fit");
  fit_cmd->add_option("--method", fit_method, "envelope_lsq or tail_lsq");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("norms")) {
    return run_command(norms_args, [](const ExperimentConfig& c) { return floqgap::cmd_norms(c); });
  }
  if (app.got_subcommand("certify-gaps")) {
    return run_command(certify_args,
                       [](const ExperimentConfig& c) { return floqgap::cmd_certify_gaps(c); });
  }
  if (app.got_subcommand("antiadiabatic")) {
    return run_command(aa_args,
                       [](const ExperimentConfig& c) { return floqgap::cmd_antiadiabatic(c); });
  }
  if (app.got_subcommand("diagonalize")) {
    return run_command(diag_args,
                       [](const ExperimentConfig& c) { return floqgap::cmd_diagonalize(c); });
  }
  if (app.got_subcommand("reduce")) {
    return run_command(reduce_args, [&](const ExperimentConfig& c) {
      return floqgap::cmd_reduce(c, out_dir_of(reduce_args, c));
    });
  }
  if (app.got_subcommand("evolve")) {
    return run_command(evolve_args, [&](const ExperimentConfig& c) {
      return floqgap::cmd_evolve(c, out_dir_of(evolve_args, c));
    });
  }
  if (app.got_subcommand("threshold")) {
    return run_command(thr_args,
                       [](const ExperimentConfig& c) { return floqgap::cmd_threshold(c); });
  }
  if (app.got_subcommand("fit")) {
    const CommandOutcome outcome = floqgap::run_guarded(
        [&] { return floqgap::cmd_fit(fit_trace, fit_window, fit_method); });
    std::cout << outcome.report.dump(2) << "\n";
    return outcome.exit_code;
  }
  return 1;
}
