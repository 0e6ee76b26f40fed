// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#pragma once

#include <stdexcept>

namespace symtest {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape mismatch, non-Hermitian input, invalid Young diagram, unknown label.
struct DimensionError : Error {
  using Error::Error;
};

// Requested problem size exceeds the supported dense-operator range.
struct SizeGuardError : Error {
  using Error::Error;
};

// An eigensolver failed to meet its residual bound.
struct ConvergenceError : Error {
  using Error::Error;
};

// An internal cross-check disagreed beyond tolerance (e.g. a character
// quadrature that should be integer-valued is not).
struct ConsistencyError : Error {
  using Error::Error;
};

// Parameter outside the documented domain.
struct RangeError : Error {
  using Error::Error;
};

}  // namespace symtest
