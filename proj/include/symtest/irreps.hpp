// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// Exact combinatorics of U(2) irreducible representations appearing in the
// n-fold tensor power of the defining representation, their restriction to
// the subgroups {I}, U(1)^2 and O(2), and the resulting optimal type-II
// error of the symmetry test.

#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <complex>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "symtest/errors.hpp"
#include "symtest/rational.hpp"

namespace symtest {

// Young pair (row1 >= row2 >= 0) labelling a U(2) irrep inside the n-fold
// tensor power; two_j = row1 - row2 is twice the spin, kept integral so all
// arithmetic stays exact.
struct IrrepLabel {
  int row1 = 0;
  int row2 = 0;

  int two_j() const { return row1 - row2; }
  int level() const { return row1 + row2; }  // the tensor power n
  int dim() const { return two_j() + 1; }

  auto operator<=>(const IrrepLabel&) const = default;
};

inline IrrepLabel irrep_from_two_j(int n, int two_j) {
  if (two_j < 0 || two_j > n || (n - two_j) % 2 != 0)
    throw DimensionError("two_j=" + std::to_string(two_j) +
                         " is not a valid spin label at level " + std::to_string(n));
  return IrrepLabel{(n + two_j) / 2, (n - two_j) / 2};
}

enum class SubgroupFamily { Trivial, Torus, Orthogonal };

// The symmetry candidate G0 inside U(d): the single identity element,
// the diagonal subgroup U(1)^d, or O(d). Exact branching is implemented
// for d = 2 only; larger d is supported just for diagram/dimension counting.
struct SubgroupKind {
  SubgroupFamily family = SubgroupFamily::Trivial;
  int d = 2;
};

inline SubgroupKind trivial_subgroup(int d = 2) { return {SubgroupFamily::Trivial, d}; }
inline SubgroupKind torus_subgroup(int d = 2) { return {SubgroupFamily::Torus, d}; }
inline SubgroupKind orthogonal_subgroup(int d = 2) { return {SubgroupFamily::Orthogonal, d}; }

inline std::string subgroup_name(const SubgroupKind& s) {
  switch (s.family) {
    case SubgroupFamily::Trivial: return "trivial";
    case SubgroupFamily::Torus: return "torus";
    case SubgroupFamily::Orthogonal: return "orthogonal";
  }
  return "?";
}

// --- Subgroup irrep labels -------------------------------------------------

struct TrivialRep {
  auto operator<=>(const TrivialRep&) const = default;
};

// U(1)^d weight: occupation exponents, entries >= 0 summing to the level n.
struct TorusWeight {
  std::vector<int> w;
  auto operator<=>(const TorusWeight&) const = default;
};

// One-dimensional O(2) irreps: parity +1 is the reflection-symmetric type,
// parity -1 the antisymmetric one. Present only at even level.
struct O2OneDim {
  int parity = +1;
  auto operator<=>(const O2OneDim&) const = default;
};

// Two-dimensional O(2) irrep with rotation weight w > 0, w = n (mod 2).
struct O2TwoDim {
  int w = 1;
  auto operator<=>(const O2TwoDim&) const = default;
};

using SubgroupIrrepLabel = std::variant<TrivialRep, TorusWeight, O2OneDim, O2TwoDim>;

inline int subgroup_irrep_dim(const SubgroupIrrepLabel& eta) {
  return std::holds_alternative<O2TwoDim>(eta) ? 2 : 1;
}

// Canonical order: TrivialRep < TorusWeight (lexicographic) < O2OneDim(+1)
// < O2OneDim(-1) < O2TwoDim (ascending w). Used for argmax tie-breaks.
inline bool label_less(const SubgroupIrrepLabel& a, const SubgroupIrrepLabel& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (const auto* ta = std::get_if<TorusWeight>(&a))
    return ta->w < std::get<TorusWeight>(b).w;
  if (const auto* oa = std::get_if<O2OneDim>(&a))
    return oa->parity > std::get<O2OneDim>(b).parity;  // +1 before -1
  if (const auto* wa = std::get_if<O2TwoDim>(&a))
    return wa->w < std::get<O2TwoDim>(b).w;
  return false;
}

inline std::string label_str(const SubgroupIrrepLabel& eta) {
  struct Visitor {
    std::string operator()(const TrivialRep&) const { return "trivial"; }
    std::string operator()(const TorusWeight& t) const {
      std::string s = "weight(";
      for (size_t i = 0; i < t.w.size(); ++i) s += (i ? "," : "") + std::to_string(t.w[i]);
      return s + ")";
    }
    std::string operator()(const O2OneDim& o) const {
      return o.parity > 0 ? "o2_one_dim(+)" : "o2_one_dim(-)";
    }
    std::string operator()(const O2TwoDim& o) const {
      return "o2_two_dim(" + std::to_string(o.w) + ")";
    }
  };
  return std::visit(Visitor{}, eta);
}

// --- Decomposition of the tensor power --------------------------------------

struct LambdaEntry {
  IrrepLabel lambda;
  long long dim = 1;  // d_lambda = two_j + 1
  BigInt mult;        // multiplicity n_lambda in the tensor power
};

/// All U(2) irreps with nonzero multiplicity in the n-fold tensor power of
/// the qubit defining representation, ascending in two_j.
/// Multiplicities are Catalan-triangle differences of binomials.
inline std::vector<LambdaEntry> u2_irrep_decomposition(int n) {
  if (n < 0) throw RangeError("tensor power must be nonnegative");
  std::vector<LambdaEntry> out;
  for (int two_j = n % 2; two_j <= n; two_j += 2) {
    const long k = (n - two_j) / 2;
    BigInt mult = binomial(n, k) - binomial(n, k - 1);
    out.push_back({irrep_from_two_j(n, two_j), two_j + 1, std::move(mult)});
  }
  return out;
}

/// Sum of squared irrep dimensions over the decomposition of the n-fold
/// tensor power; grows like n^3/6 for qubits.
inline BigInt sum_dim_squared(int n) {
  if (n < 0) throw RangeError("tensor power must be nonnegative");
  BigInt total = 0;
  for (int two_j = n % 2; two_j <= n; two_j += 2) {
    BigInt d = two_j + 1;
    total += d * d;
  }
  return total;
}

// --- Branching tables --------------------------------------------------------

// The full restriction data (eta, lambda) -> n_{eta,lambda} for one subgroup
// at one tensor power. Everything downstream (optimal error, protocol
// construction) reads off this table.
struct BranchingTable {
  int n = 0;
  SubgroupKind subgroup;
  std::vector<LambdaEntry> lambdas;      // ascending two_j
  std::vector<SubgroupIrrepLabel> etas;  // canonical order
  std::vector<std::vector<int>> mults;   // mults[e][l] = n_{eta,lambda}

  int multiplicity(const SubgroupIrrepLabel& eta, const IrrepLabel& lambda) const {
    const auto e = eta_index(eta);
    for (size_t l = 0; l < lambdas.size(); ++l)
      if (lambdas[l].lambda == lambda) return mults[e][l];
    return 0;
  }

  size_t eta_index(const SubgroupIrrepLabel& eta) const {
    for (size_t e = 0; e < etas.size(); ++e)
      if (etas[e] == eta) return e;
    throw DimensionError("subgroup irrep " + label_str(eta) + " not present in table");
  }
};

/// Restriction multiplicities of every tensor-power irrep to the subgroup,
/// for qubits (d = 2).
///
/// Trivial: the unique eta absorbs the full irrep, n_{eta,lambda} = d_lambda.
/// Torus:   weight (a, n-a) appears once in lambda iff |2a-n| <= two_j.
/// O(2):    the two-dimensional irrep of weight w appears once iff
///          0 < w <= two_j; at even n the zero-weight line carries the
///          symmetric (row2 even) or antisymmetric (row2 odd) 1-dim type.
inline BranchingTable branching_table(const SubgroupKind& subgroup, int n) {
  if (subgroup.d != 2)
    throw DimensionError("exact branching is implemented for d = 2 only (got d = " +
                         std::to_string(subgroup.d) + ")");
  if (n < 0) throw RangeError("tensor power must be nonnegative");

  BranchingTable table;
  table.n = n;
  table.subgroup = subgroup;
  table.lambdas = u2_irrep_decomposition(n);
  const size_t nl = table.lambdas.size();

  auto add_eta = [&](SubgroupIrrepLabel eta) {
    table.etas.push_back(std::move(eta));
    table.mults.emplace_back(nl, 0);
    return table.mults.size() - 1;
  };

  switch (subgroup.family) {
    case SubgroupFamily::Trivial: {
      const size_t e = add_eta(TrivialRep{});
      for (size_t l = 0; l < nl; ++l)
        table.mults[e][l] = static_cast<int>(table.lambdas[l].dim);
      break;
    }
    case SubgroupFamily::Torus: {
      for (int a = 0; a <= n; ++a) {
        const size_t e = add_eta(TorusWeight{{a, n - a}});
        for (size_t l = 0; l < nl; ++l)
          if (std::abs(2 * a - n) <= table.lambdas[l].lambda.two_j()) table.mults[e][l] = 1;
      }
      break;
    }
    case SubgroupFamily::Orthogonal: {
      if (n % 2 == 0) {
        const size_t plus = add_eta(O2OneDim{+1});
        const size_t minus = add_eta(O2OneDim{-1});
        for (size_t l = 0; l < nl; ++l) {
          const size_t e = table.lambdas[l].lambda.row2 % 2 == 0 ? plus : minus;
          table.mults[e][l] = 1;
        }
      }
      for (int w = 2 - n % 2; w <= n; w += 2) {
        if (w <= 0) continue;
        const size_t e = add_eta(O2TwoDim{w});
        for (size_t l = 0; l < nl; ++l)
          if (w <= table.lambdas[l].lambda.two_j()) table.mults[e][l] = 1;
      }
      break;
    }
  }
  return table;
}

// --- Character quadrature oracle ---------------------------------------------

namespace detail {

// Character of the U(2) irrep (row1, row2) as a symmetric function of the
// two eigenvalues: the weight sum  sum_{a=row2}^{row1} x^a y^{n-a}.
inline std::complex<double> u2_character(const IrrepLabel& lambda, std::complex<double> x,
                                         std::complex<double> y) {
  std::complex<double> total = 0.0;
  const int n = lambda.level();
  for (int a = lambda.row2; a <= lambda.row1; ++a)
    total += std::pow(x, a) * std::pow(y, n - a);
  return total;
}

}  // namespace detail

/// Numerical branching multiplicity from character orthogonality, integrating
/// chi_lambda * conj(chi_eta) over the subgroup with a uniform angle grid.
/// The grid sums are exact for trigonometric polynomials of the degrees that
/// occur, so the result sits within 1e-8 of the true integer; anything else
/// signals an inconsistency and throws.
inline double branching_oracle(const SubgroupKind& subgroup, const SubgroupIrrepLabel& eta,
                               const IrrepLabel& lambda, int n, int quadrature_points) {
  if (subgroup.d != 2) throw DimensionError("branching oracle requires d = 2");
  if (lambda.level() != n || lambda.row2 < 0 || lambda.row1 < lambda.row2)
    throw DimensionError("irrep label does not belong to tensor power " + std::to_string(n));

  const double two_pi = 2.0 * M_PI;
  double value = 0.0;

  switch (subgroup.family) {
    case SubgroupFamily::Trivial: {
      if (!std::holds_alternative<TrivialRep>(eta))
        throw DimensionError("trivial subgroup has only the trivial irrep");
      value = static_cast<double>(lambda.dim());  // chi_lambda(e) * 1
      break;
    }
    case SubgroupFamily::Torus: {
      const auto* weight = std::get_if<TorusWeight>(&eta);
      if (weight == nullptr || weight->w.size() != 2)
        throw DimensionError("torus subgroup expects a length-2 weight label");
      const int q = quadrature_points;
      if (q < 4 * (n + 1)) throw RangeError("quadrature grid too coarse");
      std::complex<double> acc = 0.0;
      for (int p = 0; p < q; ++p) {
        for (int r = 0; r < q; ++r) {
          const double t1 = two_pi * p / q, t2 = two_pi * r / q;
          const auto chi_l = detail::u2_character(lambda, std::polar(1.0, t1), std::polar(1.0, t2));
          const auto chi_e = std::polar(1.0, weight->w[0] * t1 + weight->w[1] * t2);
          acc += chi_l * std::conj(chi_e);
        }
      }
      value = (acc / static_cast<double>(q) / static_cast<double>(q)).real();
      break;
    }
    case SubgroupFamily::Orthogonal: {
      const int q = quadrature_points;
      if (q < 4 * (n + 1)) throw RangeError("quadrature grid too coarse");
      // Rotation half: eigenvalues e^{i theta}, e^{-i theta}.
      // Reflection half: eigenvalues +1, -1 for every reflection.
      std::complex<double> rot = 0.0, refl = 0.0;
      for (int p = 0; p < q; ++p) {
        const double t = two_pi * p / q;
        const auto chi_rot = detail::u2_character(lambda, std::polar(1.0, t), std::polar(1.0, -t));
        const auto chi_refl = detail::u2_character(lambda, 1.0, -1.0);
        std::complex<double> eta_rot, eta_refl;
        if (const auto* one = std::get_if<O2OneDim>(&eta)) {
          eta_rot = 1.0;
          eta_refl = static_cast<double>(one->parity);
        } else if (const auto* two = std::get_if<O2TwoDim>(&eta)) {
          eta_rot = 2.0 * std::cos(two->w * t);
          eta_refl = 0.0;
        } else {
          throw DimensionError("orthogonal subgroup expects an O(2) irrep label");
        }
        rot += chi_rot * std::conj(eta_rot);
        refl += chi_refl * std::conj(eta_refl);
      }
      value = 0.5 * (rot.real() + refl.real()) / q;
      break;
    }
  }

  const double nearest = std::round(value);
  if (std::abs(value - nearest) > 1e-8)
    throw ConsistencyError("character quadrature returned non-integer multiplicity " +
                           std::to_string(value));
  return value;
}

// --- Theorem-2 value and the ancilla-free criterion ---------------------------

struct BetaResult {
  Rational beta0;      // optimal type-II error at zero type-I tolerance
  Rational exp_dmax;   // 1 / beta0
  SubgroupIrrepLabel argmax_eta;
  bool ancilla_free = false;
};

/// True iff d_eta * n_{eta,lambda} <= n_lambda for every lambda on which eta
/// appears; exactly then the optimal strategy at eta embeds without a
/// reference system.
inline bool ancilla_free_condition(const BranchingTable& table, const SubgroupIrrepLabel& eta) {
  const size_t e = table.eta_index(eta);
  const BigInt d_eta = subgroup_irrep_dim(eta);
  for (size_t l = 0; l < table.lambdas.size(); ++l) {
    if (table.mults[e][l] == 0) continue;
    if (d_eta * table.mults[e][l] > table.lambdas[l].mult) return false;
  }
  return true;
}

/// Optimal type-II error from the branching table:
/// exp(Dmax) = max_eta (1/d_eta) * sum_lambda d_lambda * n_{eta,lambda},
/// exact rational arithmetic throughout. Ties break toward the canonically
/// smallest eta.
inline BetaResult optimal_type2_error(const BranchingTable& table) {
  if (table.etas.empty()) throw DimensionError("empty branching table");
  Rational best = -1;
  size_t best_e = 0;
  for (size_t e = 0; e < table.etas.size(); ++e) {
    BigInt weighted = 0;
    for (size_t l = 0; l < table.lambdas.size(); ++l)
      weighted += BigInt(table.lambdas[l].dim) * table.mults[e][l];
    Rational value(weighted, BigInt(subgroup_irrep_dim(table.etas[e])));
    const bool improves =
        value > best ||
        (value == best && label_less(table.etas[e], table.etas[best_e]));
    if (improves) {
      best = value;
      best_e = e;
    }
  }
  BetaResult result;
  result.exp_dmax = best;
  result.beta0 = Rational(1) / best;
  result.argmax_eta = table.etas[best_e];
  result.ancilla_free = ancilla_free_condition(table, result.argmax_eta);
  return result;
}

/// Closed-form beta0 for qubits:
///   trivial     6/((n+1)(n+2)(n+3))
///   torus       4/(n+2)^2 (n even),     4/((n+1)(n+3)) (n odd)
///   orthogonal  8/((n+2)(n+4)) (n even), 8/((n+1)(n+3)) (n odd)
inline Rational closed_form_beta0(const SubgroupKind& subgroup, int n) {
  if (subgroup.d != 2)
    throw DimensionError("closed forms are implemented for d = 2 only");
  if (n < 0) throw RangeError("tensor power must be nonnegative");
  const BigInt m = n;
  switch (subgroup.family) {
    case SubgroupFamily::Trivial:
      return Rational(6, (m + 1) * (m + 2) * (m + 3));
    case SubgroupFamily::Torus:
      return n % 2 == 0 ? Rational(4, (m + 2) * (m + 2))
                        : Rational(4, (m + 1) * (m + 3));
    case SubgroupFamily::Orthogonal:
      return n % 2 == 0 ? Rational(8, (m + 2) * (m + 4))
                        : Rational(8, (m + 1) * (m + 3));
  }
  throw DimensionError("unknown subgroup");
}

// --- Young diagrams for general d ---------------------------------------------

/// All non-increasing nonnegative d-vectors summing to n, in descending
/// lexicographic order.
inline std::vector<std::vector<int>> young_diagrams(int n, int d) {
  if (n < 0 || d < 1) throw RangeError("need n >= 0 and d >= 1");
  std::vector<std::vector<int>> out;
  std::vector<int> current(d, 0);
  auto recurse = [&](auto&& self, int pos, int remaining, int cap) -> void {
    if (pos == d) {
      if (remaining == 0) out.push_back(current);
      return;
    }
    const int slots = d - pos;
    for (int v = std::min(remaining, cap); v * slots >= remaining && v >= 0; --v) {
      current[pos] = v;
      self(self, pos + 1, remaining - v, v);
    }
    current[pos] = 0;
  };
  recurse(recurse, 0, n, n);
  return out;
}

/// Weyl dimension of the U(d) irrep with the given diagram:
/// prod_{i<j} (j - i + lam_i - lam_j) / (j - i), exact integer arithmetic.
inline BigInt weyl_dimension(const std::vector<int>& diagram, int d) {
  if (d < 1) throw RangeError("need d >= 1");
  if (static_cast<int>(diagram.size()) > d)
    throw DimensionError("diagram depth exceeds d");
  std::vector<int> lam(diagram);
  lam.resize(d, 0);
  for (int i = 0; i < d; ++i) {
    if (lam[i] < 0 || (i + 1 < d && lam[i] < lam[i + 1]))
      throw DimensionError("invalid Young diagram");
  }
  BigInt num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      num *= j - i + lam[i] - lam[j];
      den *= j - i;
    }
  }
  BigInt dim = num / den;
  if (dim * den != num) throw ConsistencyError("Weyl product not integral");
  return dim;
}

// --- JSON ----------------------------------------------------------------------

inline nlohmann::json bigint_to_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::int64_t>::max()))
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline nlohmann::json to_json(const SubgroupIrrepLabel& eta) {
  struct Visitor {
    nlohmann::json operator()(const TrivialRep&) const { return {{"kind", "trivial"}}; }
    nlohmann::json operator()(const TorusWeight& t) const {
      return {{"kind", "weight"}, {"components", t.w}};
    }
    nlohmann::json operator()(const O2OneDim& o) const {
      return {{"kind", "o2_one_dim"}, {"parity", o.parity}};
    }
    nlohmann::json operator()(const O2TwoDim& o) const {
      return {{"kind", "o2_two_dim"}, {"weight", o.w}};
    }
  };
  return std::visit(Visitor{}, eta);
}

inline SubgroupIrrepLabel subgroup_irrep_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "trivial") return TrivialRep{};
  if (kind == "weight") return TorusWeight{j.at("components").get<std::vector<int>>()};
  if (kind == "o2_one_dim") return O2OneDim{j.at("parity").get<int>()};
  if (kind == "o2_two_dim") return O2TwoDim{j.at("weight").get<int>()};
  throw DimensionError("unknown subgroup irrep kind '" + kind + "'");
}

inline nlohmann::json to_json(const BranchingTable& table) {
  nlohmann::json lambdas = nlohmann::json::array();
  for (const auto& entry : table.lambdas) {
    lambdas.push_back({{"row1", entry.lambda.row1},
                       {"row2", entry.lambda.row2},
                       {"dim", entry.dim},
                       {"mult", bigint_to_json(entry.mult)}});
  }
  nlohmann::json entries = nlohmann::json::array();
  for (size_t e = 0; e < table.etas.size(); ++e) {
    for (size_t l = 0; l < table.lambdas.size(); ++l) {
      if (table.mults[e][l] == 0) continue;  // omitted pairs mean zero
      entries.push_back({{"eta", to_json(table.etas[e])},
                         {"lambda",
                          {{"row1", table.lambdas[l].lambda.row1},
                           {"row2", table.lambdas[l].lambda.row2}}},
                         {"mult", table.mults[e][l]}});
    }
  }
  return {{"n", table.n},
          {"subgroup", subgroup_name(table.subgroup)},
          {"lambdas", lambdas},
          {"entries", entries}};
}

inline SubgroupKind subgroup_from_name(const std::string& name) {
  if (name == "trivial" || name == "identity") return trivial_subgroup();
  if (name == "torus" || name == "z") return torus_subgroup();
  if (name == "orthogonal" || name == "t") return orthogonal_subgroup();
  throw RangeError("unknown subgroup '" + name + "'");
}

}  // namespace symtest
