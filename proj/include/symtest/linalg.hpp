// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// Dense complex linear algebra for Choi-space operators: Kronecker products,
// Choi vectorization, Hermitian eigendecomposition, support projectors and
// the numeric max-relative entropy.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>

#include "symtest/errors.hpp"

namespace symtest {

using cplx = std::complex<double>;
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

constexpr double kDefaultRankTol = 1e-10;
constexpr Eigen::Index kMaxSide = 1 << 14;

inline double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Hermitian matrix, validated at construction:
// ||A - A^dag||_max <= 1e-12 * ||A||_max.
class HermitianOperator {
 public:
  explicit HermitianOperator(CMat m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols()) throw DimensionError("Hermitian operator must be square");
    if (!mat_.allFinite()) throw DimensionError("non-finite matrix entries");
    const double scale = max_abs(mat_);
    if (max_abs(mat_ - mat_.adjoint()) > 1e-12 * std::max(scale, 1e-300))
      throw DimensionError("matrix is not Hermitian within tolerance");
  }

  // (A + A^dag)/2 — for statistically estimated operators.
  static HermitianOperator symmetrized(const CMat& m) {
    if (m.rows() != m.cols()) throw DimensionError("Hermitian operator must be square");
    return HermitianOperator((m + CMat(m.adjoint())) / 2.0);
  }

  Eigen::Index side() const { return mat_.rows(); }
  const CMat& matrix() const { return mat_; }

 private:
  CMat mat_;
};

// Unit vector, validated at construction (norm within 1e-12 of one).
class PureState {
 public:
  explicit PureState(CVec amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.size() == 0) throw DimensionError("empty state vector");
    if (!amp_.allFinite()) throw DimensionError("non-finite amplitudes");
    if (std::abs(amp_.norm() - 1.0) > 1e-12)
      throw DimensionError("state vector is not normalized");
  }

  Eigen::Index dim() const { return amp_.size(); }
  const CVec& amplitudes() const { return amp_; }

 private:
  CVec amp_;
};

/// Row-major vectorization |U>> with component u_{k,k'} at index k*m + k'.
/// Not normalized; for a unitary the squared norm equals the side m.
inline CVec choi_vec(const CMat& u) {
  if (u.rows() != u.cols()) throw DimensionError("Choi vectorization needs a square matrix");
  const Eigen::Index m = u.rows();
  CVec v(m * m);
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index kp = 0; kp < m; ++kp) v(k * m + kp) = u(k, kp);
  return v;
}

inline CMat kron(const CMat& a, const CMat& b) {
  if (a.rows() * b.rows() > kMaxSide || a.cols() * b.cols() > kMaxSide)
    throw SizeGuardError("Kronecker product exceeds the supported side 2^14");
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// n-fold Kronecker power; n = 0 gives the 1x1 identity.
inline CMat tensor_power(const CMat& u, int n) {
  if (n < 0) throw RangeError("tensor power must be nonnegative");
  CMat out = CMat::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, u);
  return out;
}

struct Eigensystem {
  RVec values;   // ascending
  CMat vectors;  // orthonormal columns
};

/// Eigendecomposition A = V diag(e) V^dag with a residual check
/// ||AV - V diag(e)||_max <= 1e-9 * side * ||A||_max.
inline Eigensystem hermitian_eig(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.matrix());
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("Hermitian eigensolver did not converge");
  Eigensystem sys{solver.eigenvalues(), solver.eigenvectors()};
  const double residual =
      max_abs(a.matrix() * sys.vectors - sys.vectors * sys.values.asDiagonal().toDenseMatrix().cast<cplx>());
  const double bound = 1e-9 * static_cast<double>(a.side()) * std::max(max_abs(a.matrix()), 1e-300);
  if (residual > bound)
    throw ConvergenceError("eigendecomposition residual " + std::to_string(residual) +
                           " exceeds bound " + std::to_string(bound));
  return sys;
}

namespace detail {

inline void require_psd(const RVec& eigenvalues, double rtol, const char* what) {
  const double top = eigenvalues.size() ? eigenvalues.maxCoeff() : 0.0;
  const double floor = -rtol * std::max(top, 0.0) - 1e-300;
  if (eigenvalues.size() && eigenvalues.minCoeff() < floor)
    throw ConsistencyError(std::string(what) + ": negative eigenvalue " +
                           std::to_string(eigenvalues.minCoeff()) + " beyond tolerance");
}

}  // namespace detail

/// Projector onto the eigenspaces of A with eigenvalue > rtol * max-eigenvalue.
inline HermitianOperator support_projector(const HermitianOperator& a,
                                           double rtol = kDefaultRankTol) {
  const auto sys = hermitian_eig(a);
  detail::require_psd(sys.values, rtol, "support_projector");
  const double cut = rtol * std::max(sys.values.maxCoeff(), 0.0);
  CMat proj = CMat::Zero(a.side(), a.side());
  for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
    if (sys.values(i) > cut) {
      const CVec v = sys.vectors.col(i);
      proj += v * v.adjoint();
    }
  }
  return HermitianOperator::symmetrized(proj);
}

/// Max-relative entropy D(P||Q) = log lambda_max(Q^{-1/2} P Q^{-1/2}) on the
/// support of Q; +infinity when supp(P) leaks out of supp(Q).
inline double dmax_numeric(const HermitianOperator& p, const HermitianOperator& q,
                           double rtol = kDefaultRankTol) {
  if (p.side() != q.side()) throw DimensionError("operators must share one side");
  const auto qsys = hermitian_eig(q);
  detail::require_psd(qsys.values, rtol, "dmax_numeric(Q)");
  const auto psys = hermitian_eig(p);
  detail::require_psd(psys.values, rtol, "dmax_numeric(P)");

  const double qmax = qsys.values.size() ? std::max(qsys.values.maxCoeff(), 0.0) : 0.0;
  const double cut = rtol * qmax;
  CMat proj = CMat::Zero(q.side(), q.side());
  CMat inv_sqrt = CMat::Zero(q.side(), q.side());
  for (Eigen::Index i = 0; i < qsys.values.size(); ++i) {
    if (qsys.values(i) > cut) {
      const CVec v = qsys.vectors.col(i);
      proj += v * v.adjoint();
      inv_sqrt += v * v.adjoint() / std::sqrt(qsys.values(i));
    }
  }

  const CMat complement = CMat::Identity(q.side(), q.side()) - proj;
  const CMat leak = complement * p.matrix() * complement;
  if (max_abs(leak) > rtol * std::max(max_abs(p.matrix()), 1e-300))
    return std::numeric_limits<double>::infinity();

  const auto msys = hermitian_eig(HermitianOperator::symmetrized(inv_sqrt * p.matrix() * inv_sqrt));
  const double top = msys.values.maxCoeff();
  if (top <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(top);
}

}  // namespace symtest
