// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "fockforge/classifier.hpp"
#include "fockforge/fock.hpp"
#include "fockforge/polynomial.hpp"
#include "fockforge/rng.hpp"
#include "fockforge/types.hpp"

namespace fockforge::test {

inline Occupation occ(std::initializer_list<int> values) {
  return Occupation(values.begin(), values.end());
}

inline FockState make_state(
    int modes,
    std::initializer_list<std::pair<Occupation, Complex>> terms) {
  int photons = 0;
  for (const auto& [o, a] : terms) {
    int sum = 0;
    for (int s : o) sum += s;
    photons = sum;
  }
  FockState state(modes, photons);
  for (const auto& [o, a] : terms) state.set_amplitude(o, a);
  return state;
}

inline FockState uniform_superposition(int modes,
                                       std::initializer_list<Occupation> occs) {
  std::vector<Occupation> list(occs);
  int photons = 0;
  for (int s : list.front()) photons += s;
  FockState state(modes, photons);
  const double amp = 1.0 / std::sqrt(static_cast<double>(list.size()));
  for (const auto& o : list) state.set_amplitude(o, Complex(amp, 0.0));
  return state;
}

inline HomogeneousPolynomial random_polynomial(int vars, int degree, Rng& rng) {
  HomogeneousPolynomial p(vars, degree);
  for (const auto& exponent : enumerate_basis(degree, vars)) {
    p.set_coefficient(exponent, rng.normal_complex());
  }
  return p;
}

inline ComplexMatrix random_complex_matrix(int rows, int cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.normal_complex();
  return m;
}

// Largest relative elementwise deviation, guarding tiny denominators.
inline double rel_err(Complex actual, Complex expected) {
  const double scale = std::max(1.0, std::abs(expected));
  return std::abs(actual - expected) / scale;
}

}  // namespace fockforge::test
