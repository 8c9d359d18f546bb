// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fockforge/types.hpp"

namespace fockforge {

// Σ over permutations, O(n·n!).  Reference implementation, n ≤ 9.
Complex permanent_naive(const ComplexMatrix& a);

// Ryser's inclusion–exclusion with Gray-code subset updates, O(n·2ⁿ), n ≤ 30.
Complex permanent_ryser(const ComplexMatrix& a);

// Dispatches to permanent_ryser; perm of the empty matrix is 1.
Complex permanent(const ComplexMatrix& a);

// Rows of `u` repeated t_j times (j over target T), columns repeated s_i
// times (i over source S).  ⟨T|Û|S⟩ = perm(submatrix)/√(Πs_i!·Πt_j!).
ComplexMatrix build_transition_submatrix(const ComplexMatrix& u,
                                         const Occupation& source,
                                         const Occupation& target);

// Amplitude ⟨S| Π_i (Σ_j Γ_{ij} â†_j) |vac⟩ = perm(Γ̃_S)/√(Πs_j!), where Γ̃_S
// repeats column j of Γ s_j times.  Γ is N×M, S has N photons in M modes.
Complex amplitude_from_gamma(const ComplexMatrix& gamma, const Occupation& occ);

}  // namespace fockforge
