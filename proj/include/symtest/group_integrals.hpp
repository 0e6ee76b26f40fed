// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// Integration over the groups of interest: Haar samplers for U(d), U(1)^d
// and O(2); exact performance operators E|f(g)>><<f(g)| via phase matching
// (torus), eigenbasis integrals (O(2)) and Weingarten calculus (U(d)); and a
// seed-reproducible Monte Carlo estimator with per-entry error bars.

#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "symtest/errors.hpp"
#include "symtest/linalg.hpp"
#include "symtest/rational.hpp"
#include "symtest/rng.hpp"
#include "symtest/symmetric_group.hpp"

namespace symtest {

struct GroupSpec {
  enum class Family { UnitaryFull, Torus, Orthogonal2 };
  Family family = Family::UnitaryFull;
  int d = 2;
};

inline GroupSpec unitary_group(int d) {
  if (d < 2) throw RangeError("U(d) sampling needs d >= 2");
  return {GroupSpec::Family::UnitaryFull, d};
}
inline GroupSpec torus_group(int d) {
  if (d < 1) throw RangeError("torus needs d >= 1");
  return {GroupSpec::Family::Torus, d};
}
inline GroupSpec orthogonal2_group() { return {GroupSpec::Family::Orthogonal2, 2}; }

/// Haar sample. U(d) uses QR of a complex Ginibre matrix with the R-diagonal
/// phases folded back in, the torus draws independent uniform phases, and
/// O(2) composes a uniform rotation with a fair-coin reflection.
inline CMat haar_sample(const GroupSpec& group, CounterRng& rng) {
  switch (group.family) {
    case GroupSpec::Family::UnitaryFull: {
      const int d = group.d;
      Eigen::MatrixXcd z(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          z(i, j) = cplx(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0);
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
      Eigen::MatrixXcd q = qr.householderQ();
      const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int j = 0; j < d; ++j) {
        const cplx diag = r(j, j);
        q.col(j) *= std::abs(diag) > 0 ? diag / std::abs(diag) : cplx(1.0);
      }
      CMat u = q;
      if (max_abs(CMat(u.adjoint() * u) - CMat::Identity(d, d)) > 1e-12)
        throw ConvergenceError("QR produced a non-unitary sample");
      return u;
    }
    case GroupSpec::Family::Torus: {
      CMat u = CMat::Zero(group.d, group.d);
      for (int j = 0; j < group.d; ++j) u(j, j) = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
      return u;
    }
    case GroupSpec::Family::Orthogonal2: {
      const double theta = rng.uniform(0.0, 2.0 * M_PI);
      const bool reflect = rng.bernoulli(0.5);
      CMat u(2, 2);
      const double c = std::cos(theta), s = std::sin(theta);
      if (reflect)
        u << c, s, s, -c;
      else
        u << c, -s, s, c;
      return u;
    }
  }
  throw RangeError("unknown group");
}

inline CMat haar_sample(const GroupSpec& group, RngStream stream) {
  CounterRng rng(stream);
  return haar_sample(group, rng);
}

enum class IntegrationMethod { ExactTorus, ExactO2, Weingarten, MonteCarlo, AnalyticBlocks };

inline std::string method_name(IntegrationMethod m) {
  switch (m) {
    case IntegrationMethod::ExactTorus: return "exact_torus";
    case IntegrationMethod::ExactO2: return "exact_o2";
    case IntegrationMethod::Weingarten: return "weingarten";
    case IntegrationMethod::MonteCarlo: return "monte_carlo";
    case IntegrationMethod::AnalyticBlocks: return "analytic_blocks";
  }
  return "?";
}

// E_{g ~ mu} |f(g)>><<f(g)| as a dense Hermitian matrix of side d^{2n},
// tagged with its construction route; stderr_max present for Monte Carlo.
struct PerformanceOperator {
  HermitianOperator op;
  IntegrationMethod method;
  std::optional<double> stderr_max;
  int n = 0;
  int d = 2;
};

/// Worker cap for Monte Carlo fan-out; SYMTEST_THREADS, default 1.
inline int env_thread_cap() {
  if (const char* env = std::getenv("SYMTEST_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

/// Exact Weingarten function of U(d) on S_n, as the map permutation -> value.
/// Computed through the character expansion
///   Wg(pi) = (1/n!^2) sum_shape f_shape^2 chi_shape(pi) / s_shape(1^d)
/// restricted to shapes of depth <= d; this is precisely the group-algebra
/// pseudo-inverse of the Gram matrix G(sigma,tau) = d^{cycles(sigma tau^-1)}.
inline std::map<Permutation, Rational> weingarten_matrix(int n, int d) {
  if (n < 1) throw RangeError("Weingarten needs n >= 1");
  if (n > 6) throw SizeGuardError("Weingarten moments supported up to n = 6");
  const BigInt nfact = factorial(n);

  struct ShapeData {
    Partition shape;
    BigInt dim;
    Rational schur;
  };
  std::vector<ShapeData> shapes;
  for (const auto& shape : partitions(n)) {
    Rational s = schur_at_unit(shape, d);
    if (s == 0) continue;
    shapes.push_back({shape, standard_tableaux_count(shape), s});
  }

  std::map<Partition, Rational> by_class;
  std::map<Permutation, Rational> out;
  for (const auto& perm : all_permutations(n)) {
    const Partition type = cycle_type(perm);
    auto it = by_class.find(type);
    if (it == by_class.end()) {
      Rational value = 0;
      for (const auto& s : shapes)
        value += Rational(s.dim * s.dim * sn_character(s.shape, type)) * (Rational(1) / s.schur);
      value /= Rational(nfact * nfact);
      it = by_class.emplace(type, value).first;
    }
    out.emplace(perm, it->second);
  }
  return out;
}

namespace detail {

inline Eigen::Index checked_choi_side(int d, int n) {
  Eigen::Index side = 1;
  for (int i = 0; i < 2 * n; ++i) {
    side *= d;
    if (side > kMaxSide) throw SizeGuardError("performance operator side exceeds 2^14");
  }
  return side;
}

// Digits of index in base d, most significant factor first.
inline void unpack_index(Eigen::Index idx, int d, int n, std::vector<int>& digits) {
  digits.resize(n);
  for (int a = n - 1; a >= 0; --a) {
    digits[a] = static_cast<int>(idx % d);
    idx /= d;
  }
}

inline void validate_exact(const CMat& m, int d, int n) {
  Eigen::Index dn = 1;
  for (int i = 0; i < n; ++i) dn *= d;
  const double trace = m.trace().real();
  if (std::abs(trace - static_cast<double>(dn)) > 1e-12 * static_cast<double>(dn) + 1e-12)
    throw ConsistencyError("performance operator trace " + std::to_string(trace) +
                           " deviates from d^n");
}

// E over U(1)^d of |g^{(x)n}>><<...|: the entry ((I,J),(K,L)) survives iff
// I = J, K = L and the per-mode occupation exponents of I and K agree.
inline CMat torus_performance(int d, int n) {
  const Eigen::Index side = checked_choi_side(d, n);
  Eigen::Index dn = 1;
  for (int i = 0; i < n; ++i) dn *= d;
  std::vector<std::vector<int>> occupation(dn);
  std::vector<int> digits;
  for (Eigen::Index i = 0; i < dn; ++i) {
    unpack_index(i, d, n, digits);
    std::vector<int> occ(d, 0);
    for (int a = 0; a < n; ++a) ++occ[digits[a]];
    occupation[i] = std::move(occ);
  }
  CMat rho = CMat::Zero(side, side);
  for (Eigen::Index i = 0; i < dn; ++i)
    for (Eigen::Index k = 0; k < dn; ++k)
      if (occupation[i] == occupation[k]) rho(i * dn + i, k * dn + k) = 1.0;
  return rho;
}

// E over O(2), evaluated in the rotation eigenbasis e_j = (|0> + (-1)^j i|1>)/sqrt(2):
// rotations are diagonal phases e^{-i theta nu(I)} with nu = (#e0 - #e1), and
// reflections swap e0 <-> e1 with opposite phases, so both halves reduce to
// integer phase matching. The result is conjugated back to the computational
// basis by W^{(x)n} (x) conj(W^{(x)n}).
inline CMat o2_performance(int n) {
  const Eigen::Index side = checked_choi_side(2, n);
  const Eigen::Index dn = side >> n;
  std::vector<int> nu(dn);
  std::vector<Eigen::Index> complement(dn);
  for (Eigen::Index i = 0; i < dn; ++i) {
    int ones = 0;
    for (int a = 0; a < n; ++a) ones += static_cast<int>((i >> a) & 1);
    nu[i] = n - 2 * ones;
    complement[i] = (dn - 1) ^ i;
  }
  CMat rho_e = CMat::Zero(side, side);
  for (Eigen::Index i = 0; i < dn; ++i) {
    for (Eigen::Index k = 0; k < dn; ++k) {
      if (nu[i] == nu[k]) {
        rho_e(i * dn + i, k * dn + k) += 0.5;                                      // rotations
        rho_e(complement[i] * dn + i, complement[k] * dn + k) += 0.5;              // reflections
      }
    }
  }
  CMat w(2, 2);
  w << cplx(1, 0) / std::sqrt(2.0), cplx(1, 0) / std::sqrt(2.0),
       cplx(0, 1) / std::sqrt(2.0), cplx(0, -1) / std::sqrt(2.0);
  const CMat wn = tensor_power(w, n);
  const CMat basis = kron(wn, wn.conjugate());
  return basis * rho_e * basis.adjoint();
}

// Haar moments of U(d) over n tensor factors:
// rho = sum_{sigma,tau} Wg(tau sigma^-1) P_sigma (x) P_tau with
// P_sigma[I,K] = prod_a delta(i_a, k_sigma(a)).
inline CMat weingarten_performance(int d, int n) {
  const Eigen::Index side = checked_choi_side(d, n);
  Eigen::Index dn = 1;
  for (int i = 0; i < n; ++i) dn *= d;
  if (n == 0) return CMat::Identity(1, 1);
  const auto wg = weingarten_matrix(n, d);
  const auto perms = all_permutations(n);

  // Index maps K -> I with i_a = k_{sigma(a)}.
  std::vector<std::vector<Eigen::Index>> maps(perms.size(), std::vector<Eigen::Index>(dn));
  std::vector<int> digits(n), permuted(n);
  for (size_t s = 0; s < perms.size(); ++s) {
    for (Eigen::Index k = 0; k < dn; ++k) {
      unpack_index(k, d, n, digits);
      for (int a = 0; a < n; ++a) permuted[a] = digits[perms[s][a]];
      Eigen::Index idx = 0;
      for (int a = 0; a < n; ++a) idx = idx * d + permuted[a];
      maps[s][k] = idx;
    }
  }

  CMat rho = CMat::Zero(side, side);
  for (size_t s = 0; s < perms.size(); ++s) {
    for (size_t t = 0; t < perms.size(); ++t) {
      const Permutation product = compose(perms[t], inverse(perms[s]));
      const double weight = static_cast<double>(wg.at(product));
      if (weight == 0.0) continue;
      for (Eigen::Index k = 0; k < dn; ++k) {
        const Eigen::Index i = maps[s][k];
        for (Eigen::Index l = 0; l < dn; ++l)
          rho(i * dn + maps[t][l], k * dn + l) += weight;
      }
    }
  }
  return rho;
}

}  // namespace detail

/// Exact performance operator for the group's Haar measure. The Weingarten
/// path assembles (n!)^2 permutation pairs and is capped at n = 4 unless
/// allow_large_weingarten opens n = 5, 6.
inline PerformanceOperator performance_operator_exact(const GroupSpec& group, int n,
                                                      bool allow_large_weingarten = false) {
  if (n < 0) throw RangeError("tensor power must be nonnegative");
  CMat rho;
  IntegrationMethod method;
  switch (group.family) {
    case GroupSpec::Family::Torus:
      rho = detail::torus_performance(group.d, n);
      method = IntegrationMethod::ExactTorus;
      break;
    case GroupSpec::Family::Orthogonal2:
      rho = detail::o2_performance(n);
      method = IntegrationMethod::ExactO2;
      break;
    case GroupSpec::Family::UnitaryFull: {
      const Eigen::Index side = detail::checked_choi_side(group.d, n);
      if (side > 4096) throw SizeGuardError("Weingarten path limited to side 4096");
      if (n > (allow_large_weingarten ? 6 : 4))
        throw SizeGuardError("Weingarten moment assembly beyond n = 4 requires the explicit flag");
      rho = detail::weingarten_performance(group.d, n);
      method = IntegrationMethod::Weingarten;
      break;
    }
    default:
      throw RangeError("unsupported group");
  }
  detail::validate_exact(rho, group.d, n);
  return PerformanceOperator{HermitianOperator::symmetrized(rho), method, std::nullopt, n, group.d};
}

/// Monte Carlo estimate of the performance operator over `shots` i.i.d. Haar
/// samples. Shot k draws from substream k, so the estimate depends only on
/// (seed, stream, shots); workers (capped by SYMTEST_THREADS) change the
/// floating-point reduction order at most.
inline PerformanceOperator performance_operator_mc(const GroupSpec& group, int n,
                                                   std::int64_t shots, RngStream stream) {
  if (shots < 100) throw RangeError("Monte Carlo needs at least 100 shots");
  const Eigen::Index side = detail::checked_choi_side(group.d, n);

  const int workers = std::min<std::int64_t>(env_thread_cap(), shots);
  std::vector<CMat> sums(workers, CMat::Zero(side, side));
  std::vector<Eigen::MatrixXd> sq_sums(workers, Eigen::MatrixXd::Zero(side, side));

  auto run_range = [&](int worker, std::int64_t begin, std::int64_t end) {
    Eigen::VectorXd abs2(side);
    for (std::int64_t k = begin; k < end; ++k) {
      CounterRng rng = shot_rng(stream, static_cast<std::uint64_t>(k));
      const CMat u = haar_sample(group, rng);
      const CVec v = choi_vec(tensor_power(u, n));
      sums[worker].noalias() += v * v.adjoint();
      abs2 = v.cwiseAbs2();
      sq_sums[worker].noalias() += abs2 * abs2.transpose();
    }
  };

  if (workers == 1) {
    run_range(0, 0, shots);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (shots + workers - 1) / workers;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(run_range, w, w * chunk, std::min<std::int64_t>(shots, (w + 1) * chunk));
    for (auto& t : pool) t.join();
  }

  CMat mean = CMat::Zero(side, side);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(side, side);
  for (int w = 0; w < workers; ++w) {
    mean += sums[w];
    second += sq_sums[w];
  }
  const double s = static_cast<double>(shots);
  mean /= s;
  second /= s;

  // Per-entry standard error of the mean; the max is the reported bar.
  const Eigen::MatrixXd variance = (second - mean.cwiseAbs2()).cwiseMax(0.0) / s;
  const double stderr_max = variance.size() ? std::sqrt(variance.maxCoeff()) : 0.0;

  return PerformanceOperator{HermitianOperator::symmetrized(mean), IntegrationMethod::MonteCarlo,
                             stderr_max, n, group.d};
}

}  // namespace symtest
