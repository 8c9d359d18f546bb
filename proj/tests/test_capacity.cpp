// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/capacity.hpp"

#include <cstdint>
#include <vector>

#include <doctest.h>

#include "fockforge/combinatorics.hpp"

namespace fockforge {
namespace {

// Frozen reference table: photons 2..12 (rows) × modes 2..7 (columns).
const std::int64_t kReference[11][6] = {
    {4, 5, 6, 7, 8, 9},
    {6, 6, 5, 3, 0, -4},
    {8, 6, 0, -11, -28, -52},
    {10, 5, -10, -40, -91, -170},
    {12, 3, -26, -90, -210, -414},
    {14, 0, -49, -168, -413, -868},
    {16, -4, -80, -282, -736, -1652},
    {18, -9, -120, -441, -1224, -2931},
    {20, -15, -170, -655, -1932, -4925},
    {22, -22, -231, -935, -2926, -7920},
    {24, -30, -304, -1293, -4284, -12280},
};

TEST_CASE("slack matches the frozen reference table") {
  for (int n = 2; n <= 12; ++n)
    for (int m = 2; m <= 7; ++m)
      CHECK(single_annihilation_slack(m, n) == kReference[n - 2][m - 2]);
}

TEST_CASE("slack recomputed with an independent binomial") {
  // M·N + N − C(M+N−2, M−1), with the binomial taken from a Pascal-triangle
  // recomputation rather than the library's multiplicative form.
  const auto pascal = [](int n, int k) {
    std::vector<std::int64_t> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
      for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] +=
          row[static_cast<std::size_t>(j) - 1];
    return row[static_cast<std::size_t>(k)];
  };
  for (int m = 2; m <= 9; ++m) {
    for (int n = 2; n <= 12; ++n) {
      const std::int64_t direct =
          static_cast<std::int64_t>(m) * n + n - pascal(m + n - 2, m - 1);
      CHECK(single_annihilation_slack(m, n) == direct);
    }
  }
}

TEST_CASE("sign boundary cases") {
  CHECK(single_annihilation_slack(4, 4) == 0);
  CHECK(single_annihilation_slack(3, 7) == 0);
  CHECK(single_annihilation_slack(4, 3) > 0);
  CHECK(single_annihilation_slack(4, 5) < 0);
  CHECK(single_annihilation_slack(3, 12) == -30);
}

TEST_CASE("capacity_table covers the requested grid in row-major order") {
  const auto table = capacity_table(2, 7, 2, 12);
  REQUIRE(table.size() == 11);
  for (int n = 2; n <= 12; ++n) {
    const auto& row = table[static_cast<std::size_t>(n - 2)];
    REQUIRE(row.size() == 6);
    for (int m = 2; m <= 7; ++m) {
      const SlackEntry& e = row[static_cast<std::size_t>(m - 2)];
      CHECK(e.photons == n);
      CHECK(e.modes == m);
      CHECK(e.slack == kReference[n - 2][m - 2]);
    }
  }
}

TEST_CASE("invalid ranges are rejected") {
  CHECK_THROWS_AS(capacity_table(5, 4, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(single_annihilation_slack(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(single_annihilation_slack(3, -1), std::invalid_argument);
}

}  // namespace
}  // namespace fockforge
