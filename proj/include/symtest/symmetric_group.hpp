// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// Small-n symmetric group combinatorics backing the exact Haar-moment
// (Weingarten) calculus: partitions, hook products, irreducible characters
// via the Murnaghan-Nakayama rule, and permutation bookkeeping.

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "symtest/errors.hpp"
#include "symtest/rational.hpp"

namespace symtest {

using Partition = std::vector<int>;     // weakly decreasing positive parts
using Permutation = std::vector<int>;   // one-line notation on {0,...,n-1}

/// All partitions of n, descending lexicographic ((n) first, (1,...,1) last).
inline std::vector<Partition> partitions(int n) {
  if (n < 0) throw RangeError("partitions of a negative integer");
  std::vector<Partition> out;
  Partition current;
  auto recurse = [&](auto&& self, int remaining, int cap) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = std::min(remaining, cap); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  recurse(recurse, n, n);
  return out;
}

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt hook_product(const Partition& shape) {
  const int rows = static_cast<int>(shape.size());
  BigInt prod = 1;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < shape[i]; ++j) {
      int below = 0;
      for (int r = i + 1; r < rows; ++r)
        if (shape[r] > j) ++below;
      prod *= shape[i] - j + below;
    }
  }
  return prod;
}

/// Number of standard Young tableaux of the shape (irrep dimension of S_n).
inline BigInt standard_tableaux_count(const Partition& shape) {
  const int n = std::accumulate(shape.begin(), shape.end(), 0);
  return factorial(n) / hook_product(shape);
}

/// Schur polynomial at d ones, s_shape(1^d) = prod (d + j - i) / hook(i,j);
/// zero when the shape is deeper than d.
inline Rational schur_at_unit(const Partition& shape, int d) {
  if (static_cast<int>(shape.size()) > d) return 0;
  const int rows = static_cast<int>(shape.size());
  BigInt num = 1;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < shape[i]; ++j) num *= d + j - i;
  return Rational(num, hook_product(shape));
}

namespace detail {

// Murnaghan-Nakayama on beta-numbers: removing a border strip of length k
// moves one beta-number down by k; the sign counts the beta-numbers jumped.
inline long long mn_character(std::vector<int> beta, const Partition& cycle, size_t next) {
  if (next == cycle.size()) return 1;
  const int k = cycle[next];
  long long total = 0;
  for (size_t i = 0; i < beta.size(); ++i) {
    const int target = beta[i] - k;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int jumped = 0;
    for (int b : beta)
      if (b > target && b < beta[i]) ++jumped;
    std::vector<int> reduced(beta);
    reduced[i] = target;
    std::sort(reduced.begin(), reduced.end(), std::greater<int>());
    const long long sign = jumped % 2 == 0 ? 1 : -1;
    total += sign * mn_character(reduced, cycle, next + 1);
  }
  return total;
}

}  // namespace detail

/// Irreducible character of S_n: shape indexes the irrep, cycle the class.
inline long long sn_character(const Partition& shape, const Partition& cycle) {
  const int n = std::accumulate(shape.begin(), shape.end(), 0);
  if (n != std::accumulate(cycle.begin(), cycle.end(), 0))
    throw DimensionError("shape and cycle type must partition the same n");
  std::vector<int> beta(shape.size());
  for (size_t i = 0; i < shape.size(); ++i)
    beta[i] = shape[i] + static_cast<int>(shape.size() - 1 - i);
  // Process long cycles first; fewer branches in the recursion.
  Partition sorted_cycle(cycle);
  std::sort(sorted_cycle.begin(), sorted_cycle.end(), std::greater<int>());
  return detail::mn_character(beta, sorted_cycle, 0);
}

/// All n! permutations in lexicographic one-line order.
inline std::vector<Permutation> all_permutations(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline Permutation inverse(const Permutation& p) {
  Permutation inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

// (a o b)(i) = a[b[i]]
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

inline Partition cycle_type(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  Partition type;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<int>());
  return type;
}

inline int cycle_count(const Permutation& p) {
  return static_cast<int>(cycle_type(p).size());
}

}  // namespace symtest
