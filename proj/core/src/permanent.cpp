// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/permanent.hpp"

#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fockforge/combinatorics.hpp"

namespace fockforge {

namespace {

void check_square(const ComplexMatrix& a, const char* where) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(where) + ": matrix must be square");
  }
}

}  // namespace

Complex permanent_naive(const ComplexMatrix& a) {
  check_square(a, "permanent_naive");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return Complex(1.0, 0.0);
  if (n > 9) {
    throw std::invalid_argument("permanent_naive: n > 9");
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total(0.0, 0.0);
  do {
    Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) prod *= a(i, perm[i]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Complex permanent_ryser(const ComplexMatrix& a) {
  check_square(a, "permanent_ryser");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return Complex(1.0, 0.0);
  if (n > 30) {
    throw std::invalid_argument("permanent_ryser: n > 30");
  }
  // perm(A) = (−1)^n Σ_{∅≠S⊆[n]} (−1)^{|S|} Π_i Σ_{j∈S} a_ij.
  // Gray-code walk over S: one column enters or leaves per step.
  std::vector<Complex> row_sums(n, Complex(0.0, 0.0));
  Complex total(0.0, 0.0);
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t(1) << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    const std::uint64_t next_gray = k ^ (k >> 1);
    const std::uint64_t changed = gray ^ next_gray;
    const int j = std::countr_zero(changed);
    const double dir = (next_gray & changed) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) row_sums[i] += dir * a(i, j);
    gray = next_gray;
    Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) prod *= row_sums[i];
    const int popcount = std::popcount(gray);
    if (popcount & 1) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  return (n & 1) ? -total : total;
}

Complex permanent(const ComplexMatrix& a) { return permanent_ryser(a); }

ComplexMatrix build_transition_submatrix(const ComplexMatrix& u,
                                         const Occupation& source,
                                         const Occupation& target) {
  const int m = static_cast<int>(u.rows());
  check_square(u, "build_transition_submatrix");
  if (static_cast<int>(source.size()) != m || static_cast<int>(target.size()) != m) {
    throw std::invalid_argument(
        "build_transition_submatrix: occupation length must match matrix size");
  }
  std::int64_t n_source = 0;
  std::int64_t n_target = 0;
  for (int s : source) {
    if (s < 0) throw std::invalid_argument("build_transition_submatrix: negative occupation");
    n_source += s;
  }
  for (int t : target) {
    if (t < 0) throw std::invalid_argument("build_transition_submatrix: negative occupation");
    n_target += t;
  }
  if (n_source != n_target) {
    throw std::invalid_argument("build_transition_submatrix: photon-count mismatch");
  }
  const int n = static_cast<int>(n_source);
  // Column i of U appears source[i] times; row j appears target[j] times.
  std::vector<int> cols;
  std::vector<int> rows;
  cols.reserve(n);
  rows.reserve(n);
  for (int i = 0; i < m; ++i) cols.insert(cols.end(), source[i], i);
  for (int j = 0; j < m; ++j) rows.insert(rows.end(), target[j], j);
  ComplexMatrix sub(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) sub(r, c) = u(rows[r], cols[c]);
  }
  return sub;
}

Complex amplitude_from_gamma(const ComplexMatrix& gamma, const Occupation& occ) {
  const int n = static_cast<int>(gamma.rows());
  const int m = static_cast<int>(gamma.cols());
  if (static_cast<int>(occ.size()) != m) {
    throw std::invalid_argument("amplitude_from_gamma: occupation length must match columns");
  }
  std::int64_t total = 0;
  for (int s : occ) {
    if (s < 0) throw std::invalid_argument("amplitude_from_gamma: negative occupation");
    total += s;
  }
  if (total != n) {
    throw std::invalid_argument("amplitude_from_gamma: photon count must match row count");
  }
  ComplexMatrix sub(n, n);
  int c = 0;
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < occ[j]; ++k, ++c) sub.col(c) = gamma.col(j);
  }
  return permanent_ryser(sub) / std::sqrt(occupancy_factorial(occ));
}

}  // namespace fockforge
