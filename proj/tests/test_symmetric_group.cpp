// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "symtest/symmetric_group.hpp"

using namespace symtest;

TEST_CASE("partitions") {
  CHECK(partitions(4).size() == 5);
  CHECK(partitions(6).size() == 11);
  CHECK(partitions(4).front() == Partition{4});
  CHECK(partitions(4).back() == Partition{1, 1, 1, 1});
}

TEST_CASE("hook products and tableau counts") {
  CHECK(hook_product({2, 1}) == 3);
  CHECK(standard_tableaux_count({2, 1}) == 2);
  CHECK(standard_tableaux_count({2, 2}) == 2);
  CHECK(standard_tableaux_count({3, 1}) == 3);
  CHECK(standard_tableaux_count({5}) == 1);

  // sum of squares = n!
  for (int n = 1; n <= 6; ++n) {
    BigInt total = 0;
    for (const auto& shape : partitions(n)) {
      const BigInt f = standard_tableaux_count(shape);
      total += f * f;
    }
    CHECK(total == factorial(n));
  }
}

TEST_CASE("Schur polynomial at unit arguments") {
  CHECK(schur_at_unit({1, 1}, 2) == 1);
  CHECK(schur_at_unit({2}, 2) == 3);
  CHECK(schur_at_unit({2, 1}, 3) == 8);
  CHECK(schur_at_unit({1, 1, 1}, 2) == 0);  // deeper than d
}

TEST_CASE("characters of S_3") {
  // classes: (1,1,1), (2,1), (3)
  CHECK(sn_character({3}, {1, 1, 1}) == 1);
  CHECK(sn_character({3}, {2, 1}) == 1);
  CHECK(sn_character({3}, {3}) == 1);
  CHECK(sn_character({2, 1}, {1, 1, 1}) == 2);
  CHECK(sn_character({2, 1}, {2, 1}) == 0);
  CHECK(sn_character({2, 1}, {3}) == -1);
  CHECK(sn_character({1, 1, 1}, {1, 1, 1}) == 1);
  CHECK(sn_character({1, 1, 1}, {2, 1}) == -1);
  CHECK(sn_character({1, 1, 1}, {3}) == 1);
}

TEST_CASE("character orthogonality at n = 5") {
  const auto shapes = partitions(5);
  // class sizes from the permutations themselves
  std::map<Partition, int> class_size;
  for (const auto& perm : all_permutations(5)) ++class_size[cycle_type(perm)];

  for (const auto& a : shapes) {
    for (const auto& b : shapes) {
      BigInt inner = 0;
      for (const auto& [type, size] : class_size)
        inner += BigInt(size) * sn_character(a, type) * sn_character(b, type);
      CHECK(inner == (a == b ? factorial(5) : BigInt(0)));
    }
  }
}

TEST_CASE("permutation bookkeeping") {
  CHECK(all_permutations(3).size() == 6);
  const Permutation p{2, 0, 1};
  CHECK(cycle_type(p) == Partition{3});
  CHECK(compose(p, inverse(p)) == Permutation{0, 1, 2});
  CHECK(cycle_type({1, 0, 3, 2}) == Partition{2, 2});
  CHECK(cycle_count({0, 1, 2, 3}) == 4);
}
