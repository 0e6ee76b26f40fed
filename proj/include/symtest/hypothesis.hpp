// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// Headline quantities of the symmetry test: optimal type-II error beta as a
// function of the query count and type-I tolerance, the max-relative entropy
// between performance operators (exact and numeric, cross-validated), sample
// complexity and its scaling exponents.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symtest/errors.hpp"
#include "symtest/group_integrals.hpp"
#include "symtest/irreps.hpp"
#include "symtest/linalg.hpp"
#include "symtest/rational.hpp"
#include "symtest/rng.hpp"

namespace symtest {

// Type-I tolerance epsilon in [0, 1], kept exact so the linear epsilon law
// can be asserted as a rational identity.
struct ErrorBudget {
  Rational epsilon = 0;

  ErrorBudget() = default;
  explicit ErrorBudget(Rational e) : epsilon(std::move(e)) {
    if (epsilon < 0 || epsilon > 1) throw RangeError("type-I tolerance must lie in [0, 1]");
  }
  explicit ErrorBudget(double e) : ErrorBudget(Rational(e)) {}
};

/// exp(Dmax) between the subgroup and Haar performance operators, evaluated
/// exactly from the branching table.
inline Rational dmax_analytic(const SubgroupKind& subgroup, int n) {
  return optimal_type2_error(branching_table(subgroup, n)).exp_dmax;
}

/// Optimal type-II error (1 - eps) * beta0, exact.
inline Rational beta_optimal_analytic(const SubgroupKind& subgroup, int n,
                                      const ErrorBudget& eps = ErrorBudget{}) {
  return (Rational(1) - eps.epsilon) * optimal_type2_error(branching_table(subgroup, n)).beta0;
}

/// Exact performance operator of the symmetry subgroup itself. The trivial
/// subgroup is the point mass at the identity, so its operator is the rank-one
/// Choi projector; torus and O(2) use the exact integration paths.
inline HermitianOperator subgroup_performance_operator(const SubgroupKind& subgroup, int n) {
  if (subgroup.d != 2) throw DimensionError("numeric path supports d = 2 only");
  switch (subgroup.family) {
    case SubgroupFamily::Trivial: {
      const CVec v = choi_vec(tensor_power(CMat::Identity(2, 2), n));
      return HermitianOperator::symmetrized(v * v.adjoint());
    }
    case SubgroupFamily::Torus:
      return performance_operator_exact(torus_group(2), n).op;
    case SubgroupFamily::Orthogonal:
      return performance_operator_exact(orthogonal2_group(), n).op;
  }
  throw DimensionError("unknown subgroup");
}

/// Optimal type-II error through the numeric route:
/// (1 - eps) * exp(-dmax(rho_subgroup, rho_haar)) over exactly integrated
/// operators. Agrees with the analytic value to 1e-8 on supported sizes.
inline double beta_optimal_numeric(const SubgroupKind& subgroup, int n, double eps = 0.0,
                                   bool allow_large_weingarten = false) {
  if (eps < 0.0 || eps > 1.0) throw RangeError("type-I tolerance must lie in [0, 1]");
  if ((Eigen::Index(1) << (2 * n)) > 4096)
    throw SizeGuardError("numeric beta limited to 4^n <= 4096");
  const HermitianOperator rho0 = subgroup_performance_operator(subgroup, n);
  const HermitianOperator rho =
      performance_operator_exact(unitary_group(2), n, allow_large_weingarten).op;
  return (1.0 - eps) * std::exp(-dmax_numeric(rho0, rho));
}

struct SampleComplexityResult {
  Rational delta;
  long long n_star = 0;
  Rational beta_at_n_star;
};

/// Smallest query count whose optimal type-II error is at most delta.
/// Increasing search over the closed forms; a flag swaps in the branching
/// tables as a slow cross-check.
inline SampleComplexityResult sample_complexity(const SubgroupKind& subgroup,
                                                const Rational& delta,
                                                bool use_tables = false) {
  if (delta <= 0 || delta > 1) throw RangeError("delta must lie in (0, 1]");
  constexpr long long kMaxQueries = 1000000;
  if (delta < closed_form_beta0(subgroup, kMaxQueries))
    throw RangeError("delta below the supported query range (n <= 1e6)");
  auto beta_at = [&](long long n) {
    return use_tables ? optimal_type2_error(branching_table(subgroup, static_cast<int>(n))).beta0
                      : closed_form_beta0(subgroup, static_cast<int>(n));
  };
  if (delta == 1) return {delta, 0, Rational(1)};
  for (long long n = 1; n <= kMaxQueries; ++n) {
    Rational beta = beta_at(n);
    if (beta <= delta) return {delta, n, std::move(beta)};
  }
  throw RangeError("delta below the supported query range (n <= 1e6)");
}

inline SampleComplexityResult sample_complexity(const SubgroupKind& subgroup, double delta,
                                                bool use_tables = false) {
  return sample_complexity(subgroup, Rational(delta), use_tables);
}

/// Least-squares slope of log n*(delta) against log(1/delta) over the grid;
/// grids must be decreasing with at least 4 values in (0, 1e-2].
inline double scaling_fit(const SubgroupKind& subgroup, const std::vector<double>& delta_grid) {
  if (delta_grid.size() < 4) throw RangeError("scaling fit needs at least 4 grid points");
  for (size_t i = 0; i < delta_grid.size(); ++i) {
    if (delta_grid[i] <= 0.0 || delta_grid[i] > 1e-2)
      throw RangeError("grid values must lie in (0, 1e-2]");
    if (i > 0 && delta_grid[i] >= delta_grid[i - 1]) throw RangeError("grid must be decreasing");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(delta_grid.size());
  for (double delta : delta_grid) {
    const double x = std::log(1.0 / delta);
    const double y = std::log(static_cast<double>(sample_complexity(subgroup, delta).n_star));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw RangeError("degenerate grid");
  return (m * sxy - sx * sy) / denom;
}

enum class ValidationMode { Exact, MonteCarlo };

struct CrossValidationReport {
  SubgroupKind subgroup;
  int n = 0;
  Rational analytic;
  double numeric = 0.0;
  std::string method;
  std::optional<double> stderr_beta;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::int64_t shots = 0;
  RngStream rng;
};

inline nlohmann::json to_json(const CrossValidationReport& r) {
  nlohmann::json j{{"subgroup", subgroup_name(r.subgroup)},
                   {"n", r.n},
                   {"eps", 0.0},
                   {"analytic", {{"rational", rational_str(r.analytic)},
                                 {"value", static_cast<double>(r.analytic)}}},
                   {"numeric", r.numeric},
                   {"method", r.method},
                   {"discrepancy", r.discrepancy},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass}};
  j["stderr"] = r.stderr_beta ? nlohmann::json(*r.stderr_beta) : nlohmann::json();
  if (r.method == "monte_carlo") {
    j["shots"] = r.shots;
    j["seed"] = r.rng.seed;
    j["stream"] = r.rng.stream;
  }
  return j;
}

/// Pits the branching-table value against the numeric max-relative entropy
/// over independently built performance operators. Exact mode demands 1e-8
/// agreement; Monte Carlo mode compares within 4 standard errors propagated
/// through the Dmax functional.
inline CrossValidationReport cross_validate(const SubgroupKind& subgroup, int n,
                                            ValidationMode mode, std::int64_t shots = 0,
                                            RngStream rng = {}) {
  if ((Eigen::Index(1) << (2 * n)) > 4096)
    throw SizeGuardError("cross validation limited to 4^n <= 4096");

  CrossValidationReport report;
  report.subgroup = subgroup;
  report.n = n;
  report.analytic = beta_optimal_analytic(subgroup, n);
  report.rng = rng;

  const HermitianOperator rho0 = subgroup_performance_operator(subgroup, n);

  if (mode == ValidationMode::Exact) {
    report.method = "exact";
    report.numeric = beta_optimal_numeric(subgroup, n);
    report.tolerance = 1e-8;
  } else {
    if (shots < 10000) throw RangeError("Monte Carlo validation needs at least 1e4 shots");
    report.method = "monte_carlo";
    report.shots = shots;
    const PerformanceOperator mc = performance_operator_mc(unitary_group(2), n, shots, rng);
    const double dmax = dmax_numeric(rho0, mc.op);
    report.numeric = std::exp(-dmax);

    // Delta method: with z the optimizer of the Rayleigh quotient
    // z^dag rho0 z / z^dag Q z, first order in the Monte Carlo noise gives
    // d(exp Dmax) = -expDmax * z^dag dQ z, and z^dag X_k z is a scalar per
    // shot; its sample variance yields the error bar on beta directly.
    const auto qsys = hermitian_eig(mc.op);
    const double qmax = qsys.values.maxCoeff();
    CMat inv_sqrt = CMat::Zero(mc.op.side(), mc.op.side());
    for (Eigen::Index i = 0; i < qsys.values.size(); ++i) {
      if (qsys.values(i) > kDefaultRankTol * qmax) {
        const CVec v = qsys.vectors.col(i);
        inv_sqrt += v * v.adjoint() / std::sqrt(qsys.values(i));
      }
    }
    const auto msys =
        hermitian_eig(HermitianOperator::symmetrized(inv_sqrt * rho0.matrix() * inv_sqrt));
    const CVec z = inv_sqrt * msys.vectors.col(msys.values.size() - 1);

    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t k = 0; k < shots; ++k) {
      CounterRng shot = shot_rng(rng, static_cast<std::uint64_t>(k));
      const CMat u = haar_sample(unitary_group(2), shot);
      const CVec f = choi_vec(tensor_power(u, n));
      const double s = std::norm(z.dot(f));
      sum += s;
      sum_sq += s * s;
    }
    const double s_count = static_cast<double>(shots);
    const double variance = std::max(0.0, sum_sq / s_count - (sum / s_count) * (sum / s_count));
    // stderr(exp Dmax) = expDmax * std(s)/sqrt(S), so on beta = 1/expDmax the
    // bar is std(s)/(sqrt(S) * expDmax).
    const double exp_dmax = std::exp(dmax);
    report.stderr_beta = std::sqrt(variance / s_count) / exp_dmax;
    report.tolerance = 4.0 * *report.stderr_beta + 1e-12;
  }

  report.discrepancy = std::abs(static_cast<double>(report.analytic) - report.numeric);
  report.pass = report.discrepancy <= report.tolerance;
  return report;
}

}  // namespace symtest
