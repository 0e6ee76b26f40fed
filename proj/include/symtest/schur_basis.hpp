// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// Qubit Schur basis: an orthonormal basis of (C^2)^{(x)n} organized into
// spin-j irrep blocks with explicit multiplicity copies, built by coupling
// one qubit at a time with Condon-Shortley Clebsch-Gordan coefficients.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "symtest/errors.hpp"
#include "symtest/irreps.hpp"
#include "symtest/linalg.hpp"

namespace symtest {

// One irrep copy: column c of `vectors` is the weight vector with
// twoM = two_j - 2c, expressed in the 2^n computational basis
// (qubit a contributes bit a counted from the most significant side).
struct SchurBlock {
  IrrepLabel lambda;
  int copy = 0;            // position among the n_lambda copies of this irrep
  std::vector<int> path;   // intermediate twoJ after each coupled qubit
  CMat vectors;
};

struct SchurBasis {
  int n = 0;
  std::vector<SchurBlock> blocks;

  // Full 2^n x 2^n change of basis; blocks in order, weights within block.
  CMat full() const {
    const Eigen::Index dim = Eigen::Index(1) << n;
    CMat u(dim, dim);
    Eigen::Index col = 0;
    for (const auto& block : blocks) {
      u.block(0, col, dim, block.vectors.cols()) = block.vectors;
      col += block.vectors.cols();
    }
    return u;
  }
};

/// Builds the Schur basis for 1 <= n <= 6 by recursive spin coupling.
/// Copies of each irrep are ordered by their coupling path,
/// lexicographically ascending; blocks by ascending two_j, then copy.
inline SchurBasis schur_basis(int n) {
  if (n < 1 || n > 6) throw RangeError("Schur basis supported for 1 <= n <= 6");

  struct Working {
    int two_j;
    std::vector<int> path;
    CMat vectors;  // 2^k x (two_j + 1)
  };
  std::vector<Working> current;
  {
    CMat id = CMat::Identity(2, 2);  // |0> carries twoM = +1, |1> twoM = -1
    current.push_back({1, {1}, id});
  }

  for (int k = 1; k < n; ++k) {
    std::vector<Working> next;
    const Eigen::Index dim = Eigen::Index(1) << k;
    for (const auto& parent : current) {
      const int t = parent.two_j;
      // j - 1/2 branch: |J,M> = -sqrt((c+1)/(t+1)) |t, c+1>|0>
      //                        + sqrt((t-c)/(t+1)) |t, c>|1>
      if (t >= 1) {
        CMat down = CMat::Zero(dim * 2, t);
        for (int c = 0; c < t; ++c) {
          const double a = -std::sqrt(double(c + 1) / double(t + 1));
          const double b = std::sqrt(double(t - c) / double(t + 1));
          for (Eigen::Index row = 0; row < dim; ++row) {
            down(row * 2 + 0, c) += a * parent.vectors(row, c + 1);
            down(row * 2 + 1, c) += b * parent.vectors(row, c);
          }
        }
        auto path = parent.path;
        path.push_back(t - 1);
        next.push_back({t - 1, std::move(path), std::move(down)});
      }
      // j + 1/2 branch: |J,M> = sqrt((t+1-c)/(t+1)) |t, c>|0>
      //                        + sqrt(c/(t+1)) |t, c-1>|1>
      {
        CMat up = CMat::Zero(dim * 2, t + 2);
        for (int c = 0; c <= t + 1; ++c) {
          const double a = std::sqrt(double(t + 1 - c) / double(t + 1));
          const double b = std::sqrt(double(c) / double(t + 1));
          for (Eigen::Index row = 0; row < dim; ++row) {
            if (c <= t) up(row * 2 + 0, c) += a * parent.vectors(row, c);
            if (c >= 1) up(row * 2 + 1, c) += b * parent.vectors(row, c - 1);
          }
        }
        auto path = parent.path;
        path.push_back(t + 1);
        next.push_back({t + 1, std::move(path), std::move(up)});
      }
    }
    current = std::move(next);
  }

  std::sort(current.begin(), current.end(), [](const Working& a, const Working& b) {
    if (a.two_j != b.two_j) return a.two_j < b.two_j;
    return a.path < b.path;
  });

  SchurBasis basis;
  basis.n = n;
  int previous_two_j = -1, copy = 0;
  for (auto& w : current) {
    copy = w.two_j == previous_two_j ? copy + 1 : 0;
    previous_two_j = w.two_j;
    basis.blocks.push_back({irrep_from_two_j(n, w.two_j), copy, std::move(w.path),
                            std::move(w.vectors)});
  }
  return basis;
}

}  // namespace symtest
