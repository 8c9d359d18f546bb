// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fockforge/types.hpp"

namespace fockforge {

// All occupation bases with `photons` photons across `modes` modes, in
// reverse-lexicographic order: (N,0,...,0) first, (0,...,0,N) last.
std::vector<Occupation> enumerate_basis(int photons, int modes);

// binomial(modes + photons - 1, photons), exact.
std::int64_t basis_dimension(int photons, int modes);

// Sparse state with a fixed photon number and mode count.  Amplitudes are
// keyed by occupation; entries below kPruneTol are dropped on mutation.
class FockState {
 public:
  FockState(int modes, int photons);

  static FockState vacuum(int modes);
  static FockState basis_state(const Occupation& occ);

  int modes() const { return modes_; }
  int photons() const { return photons_; }

  const std::map<Occupation, Complex>& amplitudes() const { return amps_; }
  std::size_t term_count() const { return amps_.size(); }

  Complex amplitude(const Occupation& occ) const;
  void set_amplitude(const Occupation& occ, Complex value);
  void add_amplitude(const Occupation& occ, Complex value);

  double norm_sq() const;
  double norm() const;
  bool is_zero() const { return amps_.empty(); }
  bool is_normalized(double tol = kNormalizationTol) const;

  // Throws std::runtime_error on the zero state.
  FockState normalized() const;
  FockState scaled(Complex factor) const;

  void prune(double tol = kPruneTol);

 private:
  int modes_;
  int photons_;
  std::map<Occupation, Complex> amps_;
};

// Result of a non-unitary (heralded) operation.  `weight` is the squared
// norm of `state` before renormalization would apply; a weight below
// kHeraldZeroTol marks failed heralding (`zero` set, state empty) — this is
// a flagged value, never an exception.
struct HeraldedState {
  FockState state;
  double weight = 0.0;
  bool zero = true;
};

HeraldedState make_heralded(FockState state);

// ⟨a|b⟩ over matching occupations.
Complex overlap(const FockState& a, const FockState& b);

// |⟨a|b⟩|² / (‖a‖²·‖b‖²); throws std::invalid_argument if either is zero.
double fidelity(const FockState& a, const FockState& b);

// â†_k: |..s_k..⟩ ↦ √(s_k+1)|..s_k+1..⟩.  Photon number grows by one.
// `mode` is 0-based.
FockState apply_creation(const FockState& state, int mode);

// â_k: |..s_k..⟩ ↦ √(s_k)|..s_k−1..⟩.  May herald to zero.
HeraldedState apply_annihilation(const FockState& state, int mode);

// Π̂_k = measure exactly one photon in mode k, then remove the mode.
// The surviving state has one fewer mode and one fewer photon.
HeraldedState project_single_photon(const FockState& state, int mode);

// Mode-mixing unitary acting on creation operators, â†_j ↦ Σ_k U_{kj} â†_k.
// Transition amplitudes are permanents of repeated-row/column submatrices.
FockState apply_unitary_fock(const FockState& state, const ComplexMatrix& u);

}  // namespace fockforge
