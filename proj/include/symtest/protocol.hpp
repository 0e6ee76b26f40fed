// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// Construction of the optimal parallel test: an input state on system (x)
// reference plus a decision operator T0, built in the Schur basis from the
// branching data, together with a seeded simulator measuring both error
// kinds. The identity test needs a reference system pairing irrep-internal
// indices; the torus and O(2) tests embed reference-free. For O(2) at odd n
// the error plateau beta(2k+1) = beta(2k) lets the even-(n-1) protocol run
// with one idle query, which keeps the construction reference-free there too.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "symtest/errors.hpp"
#include "symtest/group_integrals.hpp"
#include "symtest/hypothesis.hpp"
#include "symtest/irreps.hpp"
#include "symtest/linalg.hpp"
#include "symtest/rational.hpp"
#include "symtest/rng.hpp"
#include "symtest/schur_basis.hpp"

namespace symtest {

struct ParallelProtocol {
  int n = 0;
  SubgroupKind subgroup;
  PureState input;                      // on system (x) reference
  Eigen::Index reference_dim = 1;       // 1 when reference-free
  HermitianOperator tester;             // T0 with 0 <= T0 <= I
  std::optional<CVec> tester_factor;    // set when T0 = v v^dag
  bool reference_free = false;
  Rational target_beta;
  std::optional<SubgroupIrrepLabel> eta;  // subgroup irrep behind the construction
};

namespace detail {

// Zero-eigenvector of J_y inside one integer-spin block, in the descending
// twoM column convention of SchurBlock. Exists iff two_j is even.
inline CVec jy_zero_vector(int two_j) {
  const int dim = two_j + 1;
  CMat jy = CMat::Zero(dim, dim);
  auto two_m = [&](int c) { return two_j - 2 * c; };
  for (int c = 1; c < dim; ++c) {
    // raising: m -> m + 1 moves column c to column c - 1
    const double amp =
        std::sqrt((two_j * (two_j + 2) - two_m(c) * (two_m(c) + 2)) / 4.0);
    jy(c - 1, c) += cplx(0.0, -0.5) * amp;  // from J_+ / (2i)
    jy(c, c - 1) += cplx(0.0, +0.5) * amp;  // from -J_- / (2i)
  }
  const auto sys = hermitian_eig(HermitianOperator::symmetrized(jy));
  for (Eigen::Index i = 0; i < sys.values.size(); ++i)
    if (std::abs(sys.values(i)) < 0.25) return sys.vectors.col(i);
  throw ConsistencyError("no zero weight in an odd-dimensional spin block");
}

// (-1)^{popcount} diagonal action of the basis reflection on a system vector.
inline CVec apply_reflection(const CVec& v, int n) {
  CVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    int ones = 0;
    for (int a = 0; a < n; ++a) ones += static_cast<int>((i >> a) & 1);
    out(i) = (ones % 2 ? -1.0 : 1.0) * v(i);
  }
  return out;
}

inline const SchurBlock& first_copy(const SchurBasis& basis, int two_j) {
  for (const auto& block : basis.blocks)
    if (block.lambda.two_j() == two_j && block.copy == 0) return block;
  throw ConsistencyError("missing irrep block in Schur basis");
}

inline ParallelProtocol accept_all(const SubgroupKind& subgroup, int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  CVec psi = CVec::Zero(dim);
  psi(0) = 1.0;
  return ParallelProtocol{n,
                          subgroup,
                          PureState(psi),
                          1,
                          HermitianOperator(CMat::Identity(dim, dim)),
                          std::nullopt,
                          true,
                          Rational(1),
                          std::nullopt};
}

// Appends one idle query: the new qubit enters in |0> and the tester ignores
// it. Acceptance probabilities are untouched, so the error pair carries over.
inline ParallelProtocol extend_with_idle_query(const ParallelProtocol& base) {
  const int n = base.n + 1;
  const Eigen::Index ref = base.reference_dim;
  const Eigen::Index old_sys = Eigen::Index(1) << base.n;
  CVec psi = CVec::Zero(old_sys * 2 * ref);
  for (Eigen::Index i = 0; i < old_sys; ++i)
    for (Eigen::Index r = 0; r < ref; ++r)
      psi((i * 2 + 0) * ref + r) = base.input.amplitudes()(i * ref + r);

  const Eigen::Index old_side = base.tester.side();
  CMat t0 = CMat::Zero(old_side * 2, old_side * 2);
  for (Eigen::Index i = 0; i < old_sys; ++i)
    for (Eigen::Index r = 0; r < ref; ++r)
      for (Eigen::Index k = 0; k < old_sys; ++k)
        for (Eigen::Index s = 0; s < ref; ++s)
          for (int b = 0; b < 2; ++b)
            t0((i * 2 + b) * ref + r, (k * 2 + b) * ref + s) =
                base.tester.matrix()(i * ref + r, k * ref + s);

  return ParallelProtocol{n,
                          base.subgroup,
                          PureState(psi),
                          ref,
                          HermitianOperator(std::move(t0)),
                          std::nullopt,
                          base.reference_free,
                          base.target_beta,
                          base.eta};
}

}  // namespace detail

/// Whether the optimal test runs without a reference system: always for the
/// torus and O(2) symmetries, never for the identity test (whose optimal
/// input entangles irrep-internal indices with a reference).
inline bool reference_free_verdict(const SubgroupKind& subgroup, int n) {
  if (n < 1) throw RangeError("verdict defined for n >= 1");
  if (subgroup.family == SubgroupFamily::Trivial) return false;
  const int even_n = (subgroup.family == SubgroupFamily::Orthogonal && n % 2 == 1) ? n - 1 : n;
  if (even_n == 0) return true;  // one idle query on top of the trivial test
  const BranchingTable table = branching_table(subgroup, even_n);
  return ancilla_free_condition(table, optimal_type2_error(table).argmax_eta);
}

/// Builds the optimal parallel protocol for 1 <= n <= 5. The input state
/// distributes weight p_lambda = d_lambda n_{eta,lambda} / sum d n across the
/// irreps reached by the optimal subgroup irrep eta; T0 projects onto it.
inline ParallelProtocol build_optimal_protocol(const SubgroupKind& subgroup, int n) {
  if (n < 1 || n > 5) throw RangeError("protocol construction supports 1 <= n <= 5");
  if (subgroup.d != 2) throw DimensionError("protocol construction requires d = 2");

  const Rational target = closed_form_beta0(subgroup, n);

  if (subgroup.family == SubgroupFamily::Orthogonal && n % 2 == 1) {
    ParallelProtocol base = n == 1 ? detail::accept_all(subgroup, 0)
                                   : build_optimal_protocol(subgroup, n - 1);
    base.subgroup = subgroup;
    ParallelProtocol extended = detail::extend_with_idle_query(base);
    if (extended.target_beta != target)
      throw ConsistencyError("plateau extension does not reach the optimal error");
    return extended;
  }

  const BranchingTable table = branching_table(subgroup, n);
  const BetaResult optimum = optimal_type2_error(table);
  if (optimum.beta0 != target)
    throw ConsistencyError("branching-table optimum disagrees with the closed form");

  const SchurBasis basis = schur_basis(n);
  const Eigen::Index sys_dim = Eigen::Index(1) << n;
  const size_t eta_idx = table.eta_index(optimum.argmax_eta);

  BigInt weight_total = 0;
  for (size_t l = 0; l < table.lambdas.size(); ++l)
    weight_total += BigInt(table.lambdas[l].dim) * table.mults[eta_idx][l];

  ParallelProtocol out{n,
                       subgroup,
                       PureState(CVec::Unit(1, 0)),  // placeholder
                       1,
                       HermitianOperator(CMat::Identity(1, 1)),
                       std::nullopt,
                       false,
                       optimum.beta0,
                       optimum.argmax_eta};

  switch (subgroup.family) {
    case SubgroupFamily::Trivial: {
      // psi = sum_lambda sqrt(d_lambda / S) sum_v |lambda, v, copy 0> |v>_ref
      const Eigen::Index ref_dim = sys_dim;
      CVec psi = CVec::Zero(sys_dim * ref_dim);
      for (const auto& entry : table.lambdas) {
        const auto& block = detail::first_copy(basis, entry.lambda.two_j());
        const double scale =
            std::sqrt(static_cast<double>(entry.dim) / static_cast<double>(weight_total));
        for (Eigen::Index v = 0; v < block.vectors.cols(); ++v)
          for (Eigen::Index i = 0; i < sys_dim; ++i)
            psi(i * ref_dim + v) += scale * block.vectors(i, v);
      }
      out.reference_dim = ref_dim;
      out.input = PureState(psi);
      out.reference_free = false;
      break;
    }
    case SubgroupFamily::Torus: {
      const auto& weight = std::get<TorusWeight>(optimum.argmax_eta);
      const int two_m = 2 * weight.w[0] - n;
      CVec psi = CVec::Zero(sys_dim);
      for (size_t l = 0; l < table.lambdas.size(); ++l) {
        if (table.mults[eta_idx][l] == 0) continue;
        const auto& entry = table.lambdas[l];
        const auto& block = detail::first_copy(basis, entry.lambda.two_j());
        const int column = (entry.lambda.two_j() - two_m) / 2;
        const double scale =
            std::sqrt(static_cast<double>(entry.dim) / static_cast<double>(weight_total));
        psi += scale * block.vectors.col(column);
      }
      out.input = PureState(psi);
      out.reference_free = true;
      break;
    }
    case SubgroupFamily::Orthogonal: {
      // even n; argmax is the reflection-symmetric one-dimensional type
      CVec psi = CVec::Zero(sys_dim);
      for (size_t l = 0; l < table.lambdas.size(); ++l) {
        if (table.mults[eta_idx][l] == 0) continue;
        const auto& entry = table.lambdas[l];
        const auto& block = detail::first_copy(basis, entry.lambda.two_j());
        const CVec embedded = block.vectors * detail::jy_zero_vector(entry.lambda.two_j());
        const cplx parity = embedded.dot(detail::apply_reflection(embedded, n));
        if (std::abs(parity - cplx(1.0)) > 1e-8)
          throw ConsistencyError("rotation-invariant vector has the wrong reflection parity");
        const double scale =
            std::sqrt(static_cast<double>(entry.dim) / static_cast<double>(weight_total));
        psi += scale * embedded;
      }
      out.input = PureState(psi);
      out.reference_free = true;
      break;
    }
  }

  if (std::abs(out.input.amplitudes().norm() - 1.0) > 1e-10)
    throw ConsistencyError("Schur embedding failed to produce a unit state");
  const CVec& amp = out.input.amplitudes();
  out.tester = HermitianOperator::symmetrized(amp * amp.adjoint());
  out.tester_factor = amp;
  if (out.reference_free != reference_free_verdict(subgroup, n))
    throw ConsistencyError("reference flag disagrees with the branching criterion");
  return out;
}

struct SimulationReport {
  double type1_worst = 0.0;
  double type2_mean = 0.0;
  double type2_stderr = 0.0;
  std::int64_t shots_null = 0;
  std::int64_t shots_alt = 0;
  RngStream rng;
};

inline nlohmann::json to_json(const SimulationReport& r) {
  return {{"type1_worst", r.type1_worst}, {"type2_mean", r.type2_mean},
          {"type2_stderr", r.type2_stderr}, {"shots_null", r.shots_null},
          {"shots_alt", r.shots_alt},       {"seed", r.rng.seed},
          {"stream", r.rng.stream}};
}

namespace detail {

inline double acceptance(const ParallelProtocol& protocol, const CMat& u) {
  const Eigen::Index sys_dim = Eigen::Index(1) << protocol.n;
  const Eigen::Index ref = protocol.reference_dim;
  const CMat f = tensor_power(u, protocol.n);
  const Eigen::Map<const CMat> psi(protocol.input.amplitudes().data(), sys_dim, ref);
  CMat moved = f * psi;
  const Eigen::Map<const CVec> w(moved.data(), sys_dim * ref);
  if (protocol.tester_factor) return std::norm(protocol.tester_factor->dot(w));
  return (w.adjoint() * protocol.tester.matrix() * w)(0, 0).real();
}

inline std::vector<CMat> extremal_elements(const SubgroupKind& subgroup) {
  std::vector<CMat> out;
  out.push_back(CMat::Identity(2, 2));
  if (subgroup.family == SubgroupFamily::Torus) {
    for (int k = 0; k < 8; ++k) {
      CMat g = CMat::Zero(2, 2);
      g(0, 0) = std::polar(1.0, 2.0 * M_PI * k / 8);
      g(1, 1) = std::polar(1.0, -2.0 * M_PI * k / 8);
      out.push_back(g);
    }
  } else if (subgroup.family == SubgroupFamily::Orthogonal) {
    for (int k = 0; k < 4; ++k) {
      const double t = M_PI * k / 2.0;
      CMat rot(2, 2), refl(2, 2);
      rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
      refl << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
      out.push_back(rot);
      out.push_back(refl);
    }
  }
  return out;
}

inline CMat null_sample(const SubgroupKind& subgroup, CounterRng& rng) {
  switch (subgroup.family) {
    case SubgroupFamily::Trivial: return CMat::Identity(2, 2);
    case SubgroupFamily::Torus: return haar_sample(torus_group(2), rng);
    case SubgroupFamily::Orthogonal: return haar_sample(orthogonal2_group(), rng);
  }
  throw DimensionError("unknown subgroup");
}

}  // namespace detail

/// Samples the worst-case type-I error over the subgroup (plus deterministic
/// extremal elements) and the mean type-II error over Haar-random U(2).
/// Shot k draws from substream k; SYMTEST_THREADS fans the loops out.
inline SimulationReport simulate(const ParallelProtocol& protocol, std::int64_t shots_null,
                                 std::int64_t shots_alt, RngStream stream) {
  if (shots_null < 100 || shots_alt < 100) throw RangeError("simulation needs >= 100 shots");

  SimulationReport report;
  report.shots_null = shots_null;
  report.shots_alt = shots_alt;
  report.rng = stream;

  constexpr std::uint64_t kNullDomain = 0x1000000000000000ULL;
  constexpr std::uint64_t kAltDomain = 0x2000000000000000ULL;

  const int workers = static_cast<int>(
      std::min<std::int64_t>(env_thread_cap(), std::max(shots_null, shots_alt)));
  std::vector<double> worst(workers, 0.0);
  std::vector<double> sums(workers, 0.0), sq_sums(workers, 0.0);

  auto run_range = [&](int worker, std::int64_t begin, std::int64_t end) {
    for (std::int64_t k = begin; k < end; ++k) {
      if (k < shots_null) {
        CounterRng rng = shot_rng(stream, kNullDomain + static_cast<std::uint64_t>(k));
        const double acc = detail::acceptance(protocol, detail::null_sample(protocol.subgroup, rng));
        worst[worker] = std::max(worst[worker], 1.0 - acc);
      }
      if (k < shots_alt) {
        CounterRng rng = shot_rng(stream, kAltDomain + static_cast<std::uint64_t>(k));
        const double acc = detail::acceptance(protocol, haar_sample(unitary_group(2), rng));
        sums[worker] += acc;
        sq_sums[worker] += acc * acc;
      }
    }
  };

  const std::int64_t total = std::max(shots_null, shots_alt);
  if (workers <= 1) {
    run_range(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    const std::int64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(run_range, w, w * chunk, std::min(total, (w + 1) * chunk));
    for (auto& t : pool) t.join();
  }

  double type1 = 0.0, sum = 0.0, sum_sq = 0.0;
  for (int w = 0; w < workers; ++w) {
    type1 = std::max(type1, worst[w]);
    sum += sums[w];
    sum_sq += sq_sums[w];
  }
  for (const CMat& g : detail::extremal_elements(protocol.subgroup))
    type1 = std::max(type1, 1.0 - detail::acceptance(protocol, g));

  const double s = static_cast<double>(shots_alt);
  report.type1_worst = type1;
  report.type2_mean = sum / s;
  const double variance = std::max(0.0, (sum_sq - sum * sum / s) / (s - 1.0));
  report.type2_stderr = std::sqrt(variance / s);
  return report;
}

inline nlohmann::json complex_to_json(const cplx& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

/// Binary-free JSON export: complex numbers as [re, im] pairs.
inline nlohmann::json protocol_to_json(const ParallelProtocol& p) {
  nlohmann::json state = nlohmann::json::array();
  for (Eigen::Index i = 0; i < p.input.dim(); ++i)
    state.push_back(complex_to_json(p.input.amplitudes()(i)));

  nlohmann::json tester_rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < p.tester.side(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < p.tester.side(); ++j)
      row.push_back(complex_to_json(p.tester.matrix()(i, j)));
    tester_rows.push_back(std::move(row));
  }

  nlohmann::json factor;
  if (p.tester_factor) {
    factor = nlohmann::json::array();
    for (Eigen::Index i = 0; i < p.tester_factor->size(); ++i)
      factor.push_back(complex_to_json((*p.tester_factor)(i)));
  }

  return {{"n", p.n},
          {"subgroup", subgroup_name(p.subgroup)},
          {"reference_free", p.reference_free},
          {"reference_dim", p.reference_dim},
          {"target_beta", {{"rational", rational_str(p.target_beta)},
                           {"value", static_cast<double>(p.target_beta)}}},
          {"eta", p.eta ? to_json(*p.eta) : nlohmann::json()},
          {"input_state", state},
          {"tester", {{"side", p.tester.side()},
                      {"rank_one_factor", factor},
                      {"entries", tester_rows}}}};
}

}  // namespace symtest
