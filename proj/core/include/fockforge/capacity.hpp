// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace fockforge {

struct SlackEntry {
  int modes = 0;    // M
  int photons = 0;  // N
  std::int64_t slack = 0;
};

// M·N + N − binomial(M+N−2, M−1), exact integer arithmetic.  A negative
// value certifies that single-photon subtraction from [1^{N+1}]_M cannot
// reach every N-photon state (parameter counting).
std::int64_t single_annihilation_slack(int modes, int photons);

// Row-major over photons (rows) × modes (columns), both ranges inclusive.
std::vector<std::vector<SlackEntry>> capacity_table(int m_min, int m_max,
                                                    int n_min, int n_max);

}  // namespace fockforge
