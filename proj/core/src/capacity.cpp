// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/capacity.hpp"

#include <stdexcept>

#include "fockforge/combinatorics.hpp"

namespace fockforge {

std::int64_t single_annihilation_slack(int modes, int photons) {
  if (modes < 1 || photons < 1) {
    throw std::invalid_argument("single_annihilation_slack: M, N must be >= 1");
  }
  const std::int64_t m = modes;
  const std::int64_t n = photons;
  // MN+N real parameter pairs in the subtracted product state versus the
  // coefficient count binomial(M+N-2, M-1) of degree-(N-1) homogeneous
  // polynomials in M variables.
  return m * n + n - binomial(m + n - 2, m - 1);
}

std::vector<std::vector<SlackEntry>> capacity_table(int m_min, int m_max,
                                                    int n_min, int n_max) {
  if (m_min > m_max || n_min > n_max) {
    throw std::invalid_argument("capacity_table: empty range");
  }
  std::vector<std::vector<SlackEntry>> table;
  table.reserve(n_max - n_min + 1);
  for (int n = n_min; n <= n_max; ++n) {
    std::vector<SlackEntry> row;
    row.reserve(m_max - m_min + 1);
    for (int m = m_min; m <= m_max; ++m) {
      row.push_back(SlackEntry{m, n, single_annihilation_slack(m, n)});
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace fockforge
