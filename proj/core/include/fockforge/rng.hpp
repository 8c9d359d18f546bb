// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace fockforge {

// Seeded random source with hand-rolled transforms.
//
// std::mt19937_64 has a standardized output sequence, but the <random>
// distributions do not, so uniform/normal draws are derived here explicitly.
// This keeps every seeded run bit-reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Decorrelated substream for (seed, index), e.g. one per restart.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi);

  // Standard normal via Box-Muller (pairs cached).
  double normal();

  // Standard complex normal: E|z|^2 = 1.
  std::complex<double> normal_complex() {
    const double inv_sqrt2 = 0.70710678118654752440;
    double re = normal(), im = normal();
    return {re * inv_sqrt2, im * inv_sqrt2};
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fockforge
