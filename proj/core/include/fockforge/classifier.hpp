// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fockforge/polynomial.hpp"
#include "fockforge/rng.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

// Degree multiset of the irreducible factors of a state's polynomial,
// rendered "[1^{n1} 2^{n2} …]_M" with zero entries omitted.
struct ClassSignature {
  std::vector<int> counts;  // counts[k-1] = number of degree-k factors
  int modes = 0;

  int degree() const;
  int factor_count() const;
  std::string to_string() const;

  bool operator==(const ClassSignature& other) const = default;
};

// All count tuples (n_1,…,n_N) with Σ k·n_k = N, finest first: sorted by
// descending factor count, ties broken lexicographically descending.
std::vector<std::vector<int>> enumerate_partitions(int n);

struct RejectedPartition {
  std::vector<int> counts;
  double best_residual = 0.0;
};

struct FactorizationResult {
  ClassSignature signature;
  std::vector<HomogeneousPolynomial> factors;  // unit-norm, degrees ascending
  Complex scale{1.0, 0.0};                     // 𝒩: scale·Πfactors ≈ p
  double residual = 0.0;                       // relative L2 reassembly error
  int restarts_used = 0;
  std::vector<RejectedPartition> rejected;     // finer partitions that failed
};

// Least-squares fit of scale·Πfactors (with the given degree profile) to p,
// alternating over factors from `restarts` random initializations.  Returns
// nullopt when no fit reaches `tol`; that is an answer, not an error.
std::optional<FactorizationResult> try_factor_partition(
    const HomogeneousPolynomial& p, const std::vector<int>& counts, int restarts,
    std::uint64_t seed, double tol = kFactorResidualTol);

// Finest-first partition scan; the first partition that fits wins.  Linear
// factors are peeled up front and two-mode inputs are rooted directly, so
// the generic fit only runs on what remains.  Zero polynomial rejected.
FactorizationResult classify(const HomogeneousPolynomial& p, int restarts = 32,
                             std::uint64_t seed = 0,
                             double tol = kFactorResidualTol);

struct PeelResult {
  std::vector<HomogeneousPolynomial> linear_factors;  // unit-norm, gauged
  HomogeneousPolynomial remainder;  // carries the scale; no linear factor left
};

// Greedy extraction of linear factors: candidate directions are harvested
// from roots of p restricted to random 2-planes (gradient, or a Hessian
// column at multiple roots, or a directional-derivative recursion), then
// polished by a {1, N−1} alternating fit; a candidate is kept only if the
// division residual is below kPeelResidualTol.
PeelResult peel_linear_factors(const HomogeneousPolynomial& p);

// Π_k (x^k + y^k − z^k)^{n_k}: one irreducible factor of every requested
// degree, three variables.  classify on the result recovers `counts`.
HomogeneousPolynomial fermat_class_representative(const std::vector<int>& counts);

struct InvarianceReport {
  ClassSignature base;
  int trials = 0;
  int agreements = 0;
  std::vector<ClassSignature> per_trial;
};

// Classifies p(Ux) for Haar-random U; the signature must never move.
InvarianceReport check_unitary_invariance(const HomogeneousPolynomial& p,
                                          int trials, std::uint64_t seed,
                                          int restarts = 32, int threads = 0);

// QR of a complex Gaussian matrix with the R diagonal phases absorbed.
ComplexMatrix haar_random_unitary(int m, std::uint64_t seed);
ComplexMatrix haar_random_unitary(int m, Rng& rng);

}  // namespace fockforge
