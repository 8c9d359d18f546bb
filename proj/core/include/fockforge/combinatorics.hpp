// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fockforge {

// Exact binomial coefficient C(n, k). Throws std::overflow_error if the value
// (or an intermediate product) does not fit in a signed 64-bit integer.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > static_cast<__int128>(INT64_MAX))
      throw std::overflow_error("binomial: result exceeds 64 bits");
  }
  return static_cast<std::int64_t>(acc);
}

// Exact n! for n <= 20 (the largest factorial representable in int64).
inline std::int64_t factorial_exact(int n) {
  if (n < 0 || n > 20) throw std::invalid_argument("factorial_exact: n out of range");
  std::int64_t acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

// Product of per-mode factorials s_1! s_2! ... as a double.
inline double occupancy_factorial(const std::vector<int>& occ) {
  double acc = 1.0;
  for (int s : occ)
    for (int i = 2; i <= s; ++i) acc *= i;
  return acc;
}

}  // namespace fockforge
