// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// Counter-based pseudo-random generator. Output word i of a stream is the
// SplitMix64 finalizer applied to key + (i+1)*GAMMA, where the key is derived
// from (seed, stream, substream) with the same finalizer. The constants below
// fully determine every sample, so any implementation can reproduce a run
// from (seed, stream) alone. Substreams index independent shot windows and
// make Monte Carlo results insensitive to how shots are distributed across
// workers.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

namespace symtest {

struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

namespace detail {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

class CounterRng {
 public:
  explicit CounterRng(RngStream s, std::uint64_t substream = 0) {
    key_ = detail::mix64(s.seed + detail::kGamma);
    key_ = detail::mix64(key_ ^ (s.stream + detail::kGamma));
    key_ = detail::mix64(key_ ^ (substream + detail::kGamma));
  }

  std::uint64_t next_u64() { return detail::mix64(key_ + (++counter_) * detail::kGamma); }

  // Uniform in [0, 1), 53 significant bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + uniform01() * (b - a); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal via Box-Muller (rejection-free, so the draw count per
  // sample is fixed and substreams stay aligned).
  double gaussian() {
    if (cached_) {
      const double z = *cached_;
      cached_.reset();
      return z;
    }
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * M_PI * u2;
    cached_ = r * std::sin(t);
    return r * std::cos(t);
  }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  std::optional<double> cached_;
};

// Generator for one Monte Carlo shot; results depend only on
// (seed, stream, shot), never on the worker layout.
inline CounterRng shot_rng(RngStream s, std::uint64_t shot) { return CounterRng(s, shot + 1); }

}  // namespace symtest
