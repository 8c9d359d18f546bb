// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/permanent.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "fockforge/combinatorics.hpp"
#include "fockforge/fock.hpp"
#include "fockforge/polynomial.hpp"
#include "fockforge/rng.hpp"
#include "test_util.hpp"

namespace fockforge {
namespace {

using test::rel_err;

// Row-expansion oracle: perm(A) = Σ_j a_{0j}·perm(A minor 0j), written
// independently of both shipped algorithms.
Complex permanent_expansion(const ComplexMatrix& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return Complex(1.0, 0.0);
  Complex acc(0.0, 0.0);
  for (int j = 0; j < n; ++j) {
    ComplexMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    acc += a(0, j) * permanent_expansion(minor);
  }
  return acc;
}

TEST_CASE("permanent of identity and constant matrices") {
  CHECK(permanent(ComplexMatrix::Identity(3, 3)) == Complex(1.0, 0.0));
  CHECK(permanent(ComplexMatrix::Identity(5, 5)) == Complex(1.0, 0.0));
  CHECK(rel_err(permanent(ComplexMatrix::Ones(2, 2)), Complex(2.0, 0.0)) < 1e-14);
  // perm of the n×n all-ones matrix is n!.
  CHECK(rel_err(permanent(ComplexMatrix::Ones(4, 4)), Complex(24.0, 0.0)) < 1e-14);
}

TEST_CASE("permanent 2x2 closed form") {
  ComplexMatrix a(2, 2);
  a << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
  CHECK(rel_err(permanent_naive(a), Complex(10.0, 0.0)) < 1e-14);
  CHECK(rel_err(permanent_ryser(a), Complex(10.0, 0.0)) < 1e-14);
}

TEST_CASE("empty matrix has permanent 1") {
  ComplexMatrix a(0, 0);
  CHECK(permanent(a) == Complex(1.0, 0.0));
  CHECK(permanent_naive(a) == Complex(1.0, 0.0));
  CHECK(permanent_ryser(a) == Complex(1.0, 0.0));
}

TEST_CASE("size guards") {
  CHECK_THROWS_AS(permanent_naive(ComplexMatrix::Identity(10, 10)),
                  std::invalid_argument);
  CHECK_THROWS_AS(permanent_ryser(ComplexMatrix::Identity(31, 31)),
                  std::invalid_argument);
  ComplexMatrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(permanent(rect), std::invalid_argument);
}

TEST_CASE("naive, ryser, and expansion oracle agree on random matrices") {
  Rng rng(20260825);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 7);
    ComplexMatrix a = test::random_complex_matrix(n, n, rng);
    const Complex expect = permanent_expansion(a);
    CHECK(rel_err(permanent_naive(a), expect) < 1e-12);
    CHECK(rel_err(permanent_ryser(a), expect) < 1e-12);
  }
}

TEST_CASE("7x7 ryser matches naive to relative 1e-12") {
  Rng rng(7);
  ComplexMatrix a = test::random_complex_matrix(7, 7, rng);
  const Complex expect = permanent_naive(a);
  CHECK(std::abs(permanent_ryser(a) - expect) <= 1e-12 * std::abs(expect));
}

TEST_CASE("row and column swaps leave the permanent unchanged") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(2, 6);
    ComplexMatrix a = test::random_complex_matrix(n, n, rng);
    const Complex base = permanent(a);
    const int i = rng.uniform_int(0, n - 1);
    const int j = rng.uniform_int(0, n - 1);
    ComplexMatrix rows = a;
    rows.row(i).swap(rows.row(j));
    ComplexMatrix cols = a;
    cols.col(i).swap(cols.col(j));
    CHECK(rel_err(permanent(rows), base) < 1e-12);
    CHECK(rel_err(permanent(cols), base) < 1e-12);
  }
}

TEST_CASE("permanent is multilinear in rows") {
  Rng rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(2, 6);
    ComplexMatrix a = test::random_complex_matrix(n, n, rng);
    const int i = rng.uniform_int(0, n - 1);
    const Complex scale = rng.normal_complex();
    ComplexMatrix scaled = a;
    scaled.row(i) *= scale;
    CHECK(rel_err(permanent(scaled), scale * permanent(a)) < 1e-12);
  }
}

TEST_CASE("transition submatrix repeats columns by source, rows by target") {
  ComplexMatrix u(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) u(r, c) = Complex(10.0 * (r + 1) + (c + 1), 0.0);

  const ComplexMatrix sub =
      build_transition_submatrix(u, test::occ({1, 1, 1}), test::occ({3, 0, 0}));
  REQUIRE(sub.rows() == 3);
  REQUIRE(sub.cols() == 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(sub(r, c) == u(0, c));

  const ComplexMatrix sub2 =
      build_transition_submatrix(u, test::occ({2, 0, 1}), test::occ({0, 2, 1}));
  REQUIRE(sub2.rows() == 3);
  const int rows[3] = {1, 1, 2};
  const int cols[3] = {0, 0, 2};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(sub2(r, c) == u(rows[r], cols[c]));

  CHECK_THROWS_AS(
      build_transition_submatrix(u, test::occ({1, 1, 1}), test::occ({2, 0, 0})),
      std::invalid_argument);
}

TEST_CASE("transition amplitudes match full Fock-space evolution") {
  // ⟨T|Û|S⟩ = perm(U_{S,T})/√(s!·t!) must reproduce apply_unitary_fock
  // column by column for every basis pair.
  Rng rng(55);
  for (int modes = 2; modes <= 4; ++modes) {
    for (int photons = 1; photons <= 5 - modes + 2; ++photons) {
      const ComplexMatrix u = haar_random_unitary(modes, rng);
      const auto basis = enumerate_basis(photons, modes);
      for (const auto& source : basis) {
        const FockState evolved =
            apply_unitary_fock(FockState::basis_state(source), u);
        for (const auto& target : basis) {
          const ComplexMatrix sub = build_transition_submatrix(u, source, target);
          const Complex amp =
              permanent(sub) / std::sqrt(occupancy_factorial(source) *
                                         occupancy_factorial(target));
          CHECK(std::abs(amp - evolved.amplitude(target)) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("amplitude_from_gamma basic examples") {
  ComplexMatrix gamma(2, 2);
  gamma << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0);
  CHECK(rel_err(amplitude_from_gamma(gamma, test::occ({1, 1})),
                Complex(1.0, 0.0)) < 1e-14);

  ComplexMatrix gamma2(2, 2);
  gamma2 << Complex(1, 0), Complex(0, 0), Complex(1, 0), Complex(0, 0);
  CHECK(rel_err(amplitude_from_gamma(gamma2, test::occ({2, 0})),
                Complex(std::sqrt(2.0), 0.0)) < 1e-14);
}

TEST_CASE("amplitude_from_gamma matches polynomial expansion") {
  // Oracle: expand Π_i (Σ_j Γ_ij x_j) as a polynomial and convert to a Fock
  // state; amplitudes must coincide on every occupation.
  Rng rng(777);
  for (int trial = 0; trial < 100; ++trial) {
    const int modes = rng.uniform_int(2, 4);
    const int photons = rng.uniform_int(1, 4);
    ComplexMatrix gamma = test::random_complex_matrix(photons, modes, rng);
    const FockState expect = to_fock_state(expand_linear_product(gamma));
    for (const auto& occ : enumerate_basis(photons, modes)) {
      CHECK(std::abs(amplitude_from_gamma(gamma, occ) - expect.amplitude(occ)) <
            1e-10);
    }
  }
}

}  // namespace
}  // namespace fockforge
