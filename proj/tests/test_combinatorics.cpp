// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/combinatorics.hpp"

#include <cstdint>
#include <vector>

#include <doctest.h>

namespace fockforge {
namespace {

// Pascal-triangle oracle, independent of the multiplicative formula.
std::int64_t pascal(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::int64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

TEST_CASE("binomial matches Pascal triangle") {
  for (int n = 0; n <= 40; ++n)
    for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == pascal(n, k));
}

TEST_CASE("binomial edge cases") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(61, 30) == 232714176627630544LL);
  CHECK_THROWS_AS(binomial(-1, 0), std::invalid_argument);
  CHECK_THROWS_AS(binomial(3, -2), std::invalid_argument);
  CHECK_THROWS_AS(binomial(70, 35), std::overflow_error);
}

TEST_CASE("factorial_exact") {
  std::int64_t acc = 1;
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) acc *= n;
    CHECK(factorial_exact(n) == acc);
  }
  CHECK_THROWS_AS(factorial_exact(21), std::invalid_argument);
  CHECK_THROWS_AS(factorial_exact(-1), std::invalid_argument);
}

TEST_CASE("occupancy_factorial") {
  CHECK(occupancy_factorial({}) == doctest::Approx(1.0));
  CHECK(occupancy_factorial({0, 0}) == doctest::Approx(1.0));
  CHECK(occupancy_factorial({3, 1, 2}) == doctest::Approx(12.0));
  CHECK(occupancy_factorial({5, 5}) == doctest::Approx(14400.0));
}

}  // namespace
}  // namespace fockforge
