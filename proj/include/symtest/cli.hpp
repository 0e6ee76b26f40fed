// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// Command-line surface. Subcommands: beta, curve, samples, validate,
// branching, dmax. Exit codes: 0 success, 1 statistical validation failure,
// 2 flag errors, 3 size-guard errors, 4 unwritable output path.

#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symtest/hypothesis.hpp"
#include "symtest/irreps.hpp"
#include "symtest/protocol.hpp"
#include "symtest/rational.hpp"
#include "symtest/svg.hpp"

namespace symtest::cli {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitFlagError = 2;
constexpr int kExitSizeGuard = 3;
constexpr int kExitUnwritable = 4;
constexpr int kExitInternal = 5;

namespace detail {

// Outputs are staged in memory and written in one shot, so a failing
// command never leaves a partial file behind.
inline int emit(const std::string& content, const std::optional<std::string>& path,
                std::ostream& out, std::ostream& err) {
  if (!path) {
    out << content;
    return kExitOk;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << *path << "' for writing\n";
    return kExitUnwritable;
  }
  file << content;
  if (!file.good()) {
    err << "error: failed writing '" << *path << "'\n";
    return kExitUnwritable;
  }
  return kExitOk;
}

inline Rational parse_unit_interval(const std::string& text, const char* what, bool allow_zero) {
  Rational v = parse_rational(text);
  if (v > 1 || v < 0 || (!allow_zero && v == 0))
    throw CLI::ValidationError(std::string(what) + " must lie in " +
                               (allow_zero ? "[0, 1]" : "(0, 1]"));
  return v;
}

}  // namespace detail

struct CommonArgs {
  std::string subgroup = "identity";
  int n = 1;
};

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal symmetry tests for black-box qubit unitaries"};
  app.require_subcommand(1);

  // --- beta ---------------------------------------------------------------
  auto* beta_cmd = app.add_subcommand("beta", "Optimal type-II error for given queries");
  CommonArgs beta_args;
  std::string beta_eps = "0";
  std::string beta_method = "analytic";
  bool beta_allow_large = false;
  beta_cmd->add_option("--subgroup", beta_args.subgroup, "identity|z|t")
      ->required()
      ->check(CLI::IsMember({"identity", "z", "t"}));
  beta_cmd->add_option("--n", beta_args.n, "number of queries")->required()->check(CLI::NonNegativeNumber);
  beta_cmd->add_option("--eps", beta_eps, "type-I tolerance in [0,1], exact decimal or p/q");
  beta_cmd->add_option("--method", beta_method)->check(CLI::IsMember({"analytic", "numeric"}));
  beta_cmd->add_flag("--allow-large", beta_allow_large, "enable Weingarten n = 5, 6");

  // --- curve --------------------------------------------------------------
  auto* curve_cmd = app.add_subcommand("curve", "Error-decay table (CSV) or plot (SVG)");
  int curve_n_max = 0;
  std::string curve_format = "csv";
  std::optional<std::string> curve_output;
  curve_cmd->add_option("--n-max", curve_n_max, "largest query count")->required();
  curve_cmd->add_option("--format", curve_format)->check(CLI::IsMember({"csv", "svg"}));
  curve_cmd->add_option("--output,-o", curve_output, "output path (stdout when absent)");

  // --- samples ------------------------------------------------------------
  auto* samples_cmd = app.add_subcommand("samples", "Smallest n with beta <= delta");
  std::string samples_subgroup;
  std::string samples_delta;
  bool samples_use_tables = false;
  samples_cmd->add_option("--subgroup", samples_subgroup)->required()
      ->check(CLI::IsMember({"identity", "z", "t"}));
  samples_cmd->add_option("--delta", samples_delta, "target type-II error in (0,1]")->required();
  samples_cmd->add_flag("--use-tables", samples_use_tables,
                        "evaluate via branching tables instead of closed forms");

  // --- validate -----------------------------------------------------------
  auto* validate_cmd = app.add_subcommand(
      "validate", "Cross-check analytic, numeric and simulated errors");
  CommonArgs validate_args;
  std::int64_t validate_shots = 100000;
  std::uint64_t validate_seed = 12345, validate_stream = 0;
  std::string validate_mode = "exact";
  std::optional<std::string> validate_output, validate_protocol_out;
  validate_cmd->add_option("--subgroup", validate_args.subgroup)->required()
      ->check(CLI::IsMember({"identity", "z", "t"}));
  validate_cmd->add_option("--n", validate_args.n)->required()->check(CLI::PositiveNumber);
  validate_cmd->add_option("--shots", validate_shots, "alternative-hypothesis shots");
  validate_cmd->add_option("--seed", validate_seed);
  validate_cmd->add_option("--stream", validate_stream);
  validate_cmd->add_option("--mode", validate_mode, "numeric cross-check route")
      ->check(CLI::IsMember({"exact", "mc"}));
  validate_cmd->add_option("--output,-o", validate_output);
  validate_cmd->add_option("--export-protocol", validate_protocol_out,
                           "also dump the constructed protocol as JSON");

  // --- branching ----------------------------------------------------------
  auto* branching_cmd = app.add_subcommand("branching", "Dump the branching table as JSON");
  CommonArgs branching_args;
  std::string branching_format = "json";
  std::optional<std::string> branching_output;
  branching_cmd->add_option("--subgroup", branching_args.subgroup)->required()
      ->check(CLI::IsMember({"identity", "z", "t"}));
  branching_cmd->add_option("--n", branching_args.n)->required()->check(CLI::NonNegativeNumber);
  branching_cmd->add_option("--format", branching_format)->check(CLI::IsMember({"json"}));
  branching_cmd->add_option("--output,-o", branching_output);

  // --- dmax ---------------------------------------------------------------
  auto* dmax_cmd = app.add_subcommand("dmax", "exp(Dmax) between subgroup and Haar operators");
  CommonArgs dmax_args;
  std::string dmax_method = "analytic";
  bool dmax_allow_large = false;
  dmax_cmd->add_option("--subgroup", dmax_args.subgroup)->required()
      ->check(CLI::IsMember({"identity", "z", "t"}));
  dmax_cmd->add_option("--n", dmax_args.n)->required()->check(CLI::NonNegativeNumber);
  dmax_cmd->add_option("--method", dmax_method)
      ->check(CLI::IsMember({"analytic", "numeric", "both"}));
  dmax_cmd->add_flag("--allow-large", dmax_allow_large, "enable Weingarten n = 5, 6");

  std::reverse(args.begin(), args.end());  // CLI11 consumes back-to-front
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    const int code = app.exit(e, msg, msg);
    (code == 0 ? out : err) << msg.str();
    return code == 0 ? kExitOk : kExitFlagError;
  }

  try {
    if (app.got_subcommand(beta_cmd)) {
      const SubgroupKind sub = subgroup_from_name(beta_args.subgroup);
      const ErrorBudget eps(detail::parse_unit_interval(beta_eps, "--eps", true));
      if (beta_method == "analytic") {
        const Rational beta = beta_optimal_analytic(sub, beta_args.n, eps);
        out << rational_str(beta) << " = " << decimal12(beta) << "\n";
      } else {
        const double beta =
            beta_optimal_numeric(sub, beta_args.n, static_cast<double>(eps.epsilon),
                                 beta_allow_large);
        out << "numeric = " << decimal12(beta) << "\n";
      }
      return kExitOk;
    }

    if (app.got_subcommand(curve_cmd)) {
      if (curve_n_max < 1) throw CLI::ValidationError("--n-max must be at least 1");
      std::vector<CurveSeries> series{{"identity", "#1f77b4", {}},
                                      {"z", "#d62728", {}},
                                      {"t", "#2ca02c", {}}};
      std::ostringstream csv;
      csv << "n,beta_identity,beta_z,beta_t\n";
      for (int n = 1; n <= curve_n_max; ++n) {
        const Rational bi = closed_form_beta0(trivial_subgroup(), n);
        const Rational bz = closed_form_beta0(torus_subgroup(), n);
        const Rational bt = closed_form_beta0(orthogonal_subgroup(), n);
        csv << n << "," << decimal12(bi) << "," << decimal12(bz) << "," << decimal12(bt) << "\n";
        series[0].values.push_back(static_cast<double>(bi));
        series[1].values.push_back(static_cast<double>(bz));
        series[2].values.push_back(static_cast<double>(bt));
      }
      const std::string content =
          curve_format == "svg" ? render_curve_svg(series, curve_n_max) : csv.str();
      return detail::emit(content, curve_output, out, err);
    }

    if (app.got_subcommand(samples_cmd)) {
      const SubgroupKind sub = subgroup_from_name(samples_subgroup);
      const Rational delta = detail::parse_unit_interval(samples_delta, "--delta", false);
      const auto result = sample_complexity(sub, delta, samples_use_tables);
      out << "n*=" << result.n_star << ", beta=" << rational_str(result.beta_at_n_star) << "\n";
      return kExitOk;
    }

    if (app.got_subcommand(validate_cmd)) {
      const SubgroupKind sub = subgroup_from_name(validate_args.subgroup);
      const RngStream rng{validate_seed, validate_stream};
      const auto mode = validate_mode == "mc" ? ValidationMode::MonteCarlo : ValidationMode::Exact;
      const auto report = cross_validate(sub, validate_args.n, mode,
                                         mode == ValidationMode::MonteCarlo ? validate_shots : 0,
                                         rng);

      const auto protocol = build_optimal_protocol(sub, validate_args.n);
      const auto sim = simulate(protocol, 10000, validate_shots, rng);
      const double beta = static_cast<double>(protocol.target_beta);
      const bool sim_pass = sim.type1_worst <= 1e-9 &&
                            std::abs(sim.type2_mean - beta) <= 4.0 * sim.type2_stderr + 1e-12;

      nlohmann::json j = to_json(report);
      j["simulation"] = to_json(sim);
      j["simulation"]["target_beta"] = beta;
      j["simulation"]["pass"] = sim_pass;
      j["pass"] = report.pass && sim_pass;

      if (validate_protocol_out) {
        const int code =
            detail::emit(protocol_to_json(protocol).dump(2) + "\n", validate_protocol_out, out, err);
        if (code != kExitOk) return code;
      }
      const int code = detail::emit(j.dump(2) + "\n", validate_output, out, err);
      if (code != kExitOk) return code;
      return j["pass"].get<bool>() ? kExitOk : kExitValidationFailed;
    }

    if (app.got_subcommand(branching_cmd)) {
      const SubgroupKind sub = subgroup_from_name(branching_args.subgroup);
      const auto table = branching_table(sub, branching_args.n);
      return detail::emit(to_json(table).dump(2) + "\n", branching_output, out, err);
    }

    if (app.got_subcommand(dmax_cmd)) {
      const SubgroupKind sub = subgroup_from_name(dmax_args.subgroup);
      if (dmax_method == "analytic" || dmax_method == "both") {
        const Rational v = dmax_analytic(sub, dmax_args.n);
        out << "exp(Dmax) = " << rational_str(v) << " = " << decimal12(v) << "\n";
      }
      if (dmax_method == "numeric" || dmax_method == "both") {
        const HermitianOperator rho0 = subgroup_performance_operator(sub, dmax_args.n);
        const HermitianOperator rho =
            performance_operator_exact(unitary_group(2), dmax_args.n, dmax_allow_large).op;
        out << "exp(Dmax) numeric = " << decimal12(std::exp(dmax_numeric(rho0, rho))) << "\n";
      }
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFlagError;
  } catch (const SizeGuardError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSizeGuard;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFlagError;
  } catch (const Error& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitFlagError;
}

}  // namespace symtest::cli
