// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace fockforge {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Photon count per mode; doubles as a monomial exponent multi-index.
using Occupation = std::vector<int>;

// One row per independently added photon; row i holds the coefficients of
// the linear form Σ_j Γ_{ij} â†_j.  Multiset semantics: row order is
// physically irrelevant.
using GammaMultiset = ComplexMatrix;

// Shared numeric tolerances. Pinned here once; referenced throughout.
inline constexpr double kNormalizationTol = 1e-12;   // |Σ|f|² − 1| after normalize
inline constexpr double kUnitarityTol = 1e-10;       // max-entry |U·U† − I|
inline constexpr double kNormPreservationTol = 1e-9; // norm drift through a unitary
inline constexpr double kPruneTol = 1e-15;           // coefficient sparsity cutoff
inline constexpr double kProportionalityTol = 1e-10; // ray-equality of polynomials
inline constexpr double kFactorResidualTol = 1e-8;   // classifier fit acceptance
inline constexpr double kPeelResidualTol = 1e-9;     // exact-division acceptance
inline constexpr double kHeraldZeroTol = 1e-12;      // squared norm treated as failed heralding

// Max-entry deviation of U·U† from the identity.
double unitarity_deviation(const ComplexMatrix& u);

// Throws std::invalid_argument (with the measured deviation) unless
// unitarity_deviation(u) <= kUnitarityTol.
void require_unitary(const ComplexMatrix& u, const char* where);

}  // namespace fockforge
