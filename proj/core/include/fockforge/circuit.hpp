// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "fockforge/fock.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

// One weighted product of linear forms: coeff · Π_i (Σ_j rows(i,j) â†_j)|vac⟩.
struct Term {
  Complex coeff;
  GammaMultiset rows;  // photons × modes
};

// Weighted sum of linear-factor products.  Closed under photon addition,
// mode-mixing unitaries, single-photon subtraction and projection.
class TermSum {
 public:
  explicit TermSum(int modes, int photons = 0);

  // One term, empty multiset, coefficient 1.
  static TermSum vacuum(int modes);
  static TermSum single_term(Complex coeff, const GammaMultiset& rows);

  int modes() const { return modes_; }
  int photons() const { return photons_; }
  const std::vector<Term>& term_list() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void append(const Term& term);

  // Unit-norm rows with first significant entry real-positive, scale folded
  // into coefficients, rows sorted; terms with equal multisets merged and
  // near-zero coefficients dropped.
  void canonicalize();

 private:
  int modes_;
  int photons_;
  std::vector<Term> terms_;
};

struct HeraldedTermSum {
  TermSum sum{1, 0};
  double weight = 0.0;  // ‖after‖² / ‖before‖²
  bool zero = true;
};

enum class OpKind { Add, Unitary, Subtract, Project };

struct Instruction {
  OpKind kind;
  int mode = -1;         // Add/Subtract/Project (0-based)
  ComplexMatrix matrix;  // Unitary

  static Instruction add(int mode);
  static Instruction unitary(const ComplexMatrix& u);
  static Instruction subtract(int mode);
  static Instruction project(int mode);
};

struct CircuitProgram {
  int modes = 0;
  std::vector<Instruction> ops;
};

// Appends e_k to every term's multiset; photons + 1.
TermSum add_photon(const TermSum& s, int mode);

// Every row maps to row·U; coefficients unchanged.  Non-unitary rejected.
TermSum apply_unitary(const TermSum& s, const ComplexMatrix& u);

// â_k: each term (c, {Γ}) expands to N terms (c·Γ_{i,k}, Γ minus row i).
HeraldedTermSum subtract_photon(const TermSum& s, int mode);

// Single-photon detection in mode k, mode removed from the output:
// N terms per input term, with the k-th column deleted from surviving rows.
HeraldedTermSum project_photon(const TermSum& s, int mode);

// Σ_t c_t · amplitude_from_gamma(Γ_t, S) over the basis.  Unnormalized.
FockState termsum_to_fock(const TermSum& s);

double termsum_norm_sq(const TermSum& s);

struct RunResult {
  TermSum state{1, 0};                 // final, unnormalized
  double weight = 0.0;                 // squared norm of the final state
  std::vector<double> herald_weights;  // one entry per Subtract/Project
  bool zero = true;                    // failed heralding anywhere
};

// Folds instructions left to right starting from vacuum.  Instruction errors
// are rethrown with the failing instruction index; a zero state mid-run is a
// flagged outcome that short-circuits the rest of the program.
RunResult run_program(const CircuitProgram& prog);

// N layers of Add(1)+Unitary (beamsplitter chain), plus one trailing phase
// unitary diag(1, e^{iπ/N}) aligning the output with (|N,0⟩+|0,N⟩)/√2.
CircuitProgram noon_program(int photons);

}  // namespace fockforge
