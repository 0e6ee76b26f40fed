// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
// its measured runtime; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "symtest/hypothesis.hpp"
#include "symtest/irreps.hpp"
#include "symtest/protocol.hpp"

using namespace symtest;

namespace {

struct Criterion {
  std::string name;
  double time_limit_s;
  std::function<bool(std::string&)> body;
};

const std::vector<SubgroupKind> kSubgroups{trivial_subgroup(), torus_subgroup(),
                                           orthogonal_subgroup()};

bool closed_form_reproduction(std::string& detail) {
  for (const auto& subgroup : kSubgroups) {
    for (int n = 1; n <= 30; ++n) {
      if (optimal_type2_error(branching_table(subgroup, n)).beta0 != closed_form_beta0(subgroup, n)) {
        detail = subgroup_name(subgroup) + " diverges at n=" + std::to_string(n);
        return false;
      }
    }
  }
  detail = "exact rational match for identity/Z/T, n = 1..30";
  return true;
}

bool t_symmetry_plateau(std::string& detail) {
  for (int k = 1; k <= 14; ++k) {
    const auto even = closed_form_beta0(orthogonal_subgroup(), 2 * k);
    const auto odd = closed_form_beta0(orthogonal_subgroup(), 2 * k + 1);
    const auto table_odd = optimal_type2_error(branching_table(orthogonal_subgroup(), 2 * k + 1)).beta0;
    if (even != odd || table_odd != odd) {
      detail = "plateau breaks at k=" + std::to_string(k);
      return false;
    }
  }
  detail = "beta(2k+1) = beta(2k) exactly for k = 1..14";
  return true;
}

bool numeric_dmax_cross_validation(std::string& detail) {
  double worst = 0.0;
  for (const auto& subgroup : kSubgroups) {
    for (int n = 1; n <= 3; ++n) {
      const auto report = cross_validate(subgroup, n, ValidationMode::Exact);
      worst = std::max(worst, report.discrepancy);
      if (!report.pass) {
        detail = subgroup_name(subgroup) + " n=" + std::to_string(n) +
                 " discrepancy " + std::to_string(report.discrepancy);
        return false;
      }
    }
  }
  char buffer[80];
  std::snprintf(buffer, sizeof(buffer), "max |analytic - numeric| = %.2e (tolerance 1e-8)",
                worst);
  detail = buffer;
  return true;
}

bool monte_carlo_cross_validation(std::string& detail) {
  for (int n = 1; n <= 2; ++n) {
    const auto report = cross_validate(trivial_subgroup(), n, ValidationMode::MonteCarlo, 100000,
                                       RngStream{20260809, 0});
    if (!report.pass) {
      detail = "identity n=" + std::to_string(n) + " off by " +
               std::to_string(report.discrepancy) + " > " + std::to_string(report.tolerance);
      return false;
    }
  }
  detail = "identity n = 1, 2 within 4 sigma at 1e5 Haar shots, fixed seed";
  return true;
}

bool protocol_simulation(std::string& detail) {
  double worst_type1 = 0.0, worst_pull = 0.0;
  for (const auto& subgroup : kSubgroups) {
    for (int n = 1; n <= 4; ++n) {
      const auto protocol = build_optimal_protocol(subgroup, n);
      const auto report = simulate(protocol, 10000, 100000,
                                   RngStream{20260809, static_cast<std::uint64_t>(n)});
      const double beta = static_cast<double>(protocol.target_beta);
      worst_type1 = std::max(worst_type1, report.type1_worst);
      if (report.type1_worst > 1e-9) {
        detail = subgroup_name(subgroup) + " n=" + std::to_string(n) + " type-I " +
                 std::to_string(report.type1_worst);
        return false;
      }
      const double margin = 4.0 * report.type2_stderr + 1e-12;
      if (std::abs(report.type2_mean - beta) > margin) {
        detail = subgroup_name(subgroup) + " n=" + std::to_string(n) + " type-II " +
                 std::to_string(report.type2_mean) + " vs " + std::to_string(beta);
        return false;
      }
      if (report.type2_stderr > 0)
        worst_pull = std::max(worst_pull,
                              std::abs(report.type2_mean - beta) / report.type2_stderr);
    }
  }
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer),
                "worst type-I %.2e, worst type-II pull %.2f sigma (12 protocols)", worst_type1,
                worst_pull);
  detail = buffer;
  return true;
}

bool ancilla_free_verdicts(std::string& detail) {
  for (int n = 1; n <= 6; ++n) {
    if (reference_free_verdict(trivial_subgroup(), n)) {
      detail = "identity unexpectedly reference-free at n=" + std::to_string(n);
      return false;
    }
    if (!reference_free_verdict(torus_subgroup(), n) ||
        !reference_free_verdict(orthogonal_subgroup(), n)) {
      detail = "Z/T unexpectedly needs a reference at n=" + std::to_string(n);
      return false;
    }
  }
  for (int n = 1; n <= 5; ++n) {
    for (const auto& subgroup : kSubgroups) {
      const auto protocol = build_optimal_protocol(subgroup, n);
      if (protocol.reference_free != reference_free_verdict(subgroup, n)) {
        detail = "constructed flag mismatch at " + subgroup_name(subgroup) +
                 " n=" + std::to_string(n);
        return false;
      }
    }
  }
  detail = "reference-free for Z/T (n <= 6), reference-bound for identity (n = 1..6)";
  return true;
}

bool scaling_exponents(std::string& detail) {
  const std::vector<double> grid{1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  const double identity = scaling_fit(trivial_subgroup(), grid);
  const double z = scaling_fit(torus_subgroup(), grid);
  const double t = scaling_fit(orthogonal_subgroup(), grid);
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer), "slopes: identity %.4f (1/3), Z %.4f (1/2), T %.4f (1/2)",
                identity, z, t);
  detail = buffer;
  return std::abs(identity - 1.0 / 3.0) <= 0.03 && std::abs(z - 0.5) <= 0.03 &&
         std::abs(t - 0.5) <= 0.03;
}

bool growth_exponent(std::string& detail) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int n = 64; n <= 512; ++n) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(static_cast<double>(sum_dim_squared(n)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  char buffer[80];
  std::snprintf(buffer, sizeof(buffer), "slope %.4f in [2.7, 3.0]", slope);
  detail = buffer;
  return slope >= 2.7 && slope <= 3.0;
}

bool linear_epsilon_law(std::string& detail) {
  const std::vector<Rational> eps_grid{Rational(0), Rational(1, 4), Rational(1, 2),
                                       Rational(3, 4), Rational(1)};
  for (const auto& subgroup : kSubgroups) {
    for (int n = 0; n <= 10; ++n) {
      const Rational base = beta_optimal_analytic(subgroup, n);
      for (const auto& eps : eps_grid) {
        if (beta_optimal_analytic(subgroup, n, ErrorBudget(eps)) != (1 - eps) * base) {
          detail = "law breaks at " + subgroup_name(subgroup) + " n=" + std::to_string(n);
          return false;
        }
      }
    }
  }
  detail = "beta(eps) = (1 - eps) beta(0) exactly on the eps grid, n <= 10";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"C1 closed-form reproduction", 1.0, closed_form_reproduction},
      {"C2 T-symmetry plateau", 1.0, t_symmetry_plateau},
      {"C3 numeric Dmax cross-validation", 30.0, numeric_dmax_cross_validation},
      {"C4 Monte Carlo cross-validation", 60.0, monte_carlo_cross_validation},
      {"C5 protocol simulation", 300.0, protocol_simulation},
      {"C6 ancilla-free verdicts", 30.0, ancilla_free_verdicts},
      {"C7 sample-complexity scaling", 1.0, scaling_exponents},
      {"C8 growth exponent", 1.0, growth_exponent},
      {"C9 linear epsilon law", 30.0, linear_epsilon_law},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criterion.time_limit_s) {
      ok = false;
      detail += " [exceeded " + std::to_string(criterion.time_limit_s) + " s budget]";
    }
    std::printf("[%s] %s — %s (%.2f s)\n", ok ? "PASS" : "FAIL", criterion.name.c_str(),
                detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!ok) ++failures;
  }

  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
