// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fockforge/permanent.hpp"

namespace fockforge {

namespace {

constexpr double kRowAnchorTol = 1e-9;   // "significant" entry of a unit row
constexpr double kRowMergeTol = 1e-12;   // per-entry row equality when merging

void check_mode(int mode, int modes, const char* where) {
  if (mode < 0 || mode >= modes) {
    throw std::invalid_argument(std::string(where) + ": mode index out of range");
  }
}

bool row_less(const ComplexMatrix& a, int ra, const ComplexMatrix& b, int rb) {
  for (int j = 0; j < a.cols(); ++j) {
    const Complex x = a(ra, j);
    const Complex y = b(rb, j);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

bool rows_equal(const GammaMultiset& a, const GammaMultiset& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - b(i, j)) > kRowMergeTol) return false;
    }
  }
  return true;
}

}  // namespace

TermSum::TermSum(int modes, int photons) : modes_(modes), photons_(photons) {
  if (modes < 1) throw std::invalid_argument("TermSum: modes < 1");
  if (photons < 0) throw std::invalid_argument("TermSum: photons < 0");
}

TermSum TermSum::vacuum(int modes) {
  TermSum s(modes, 0);
  s.terms_.push_back(Term{Complex(1.0, 0.0), GammaMultiset(0, modes)});
  return s;
}

TermSum TermSum::single_term(Complex coeff, const GammaMultiset& rows) {
  TermSum s(static_cast<int>(rows.cols()), static_cast<int>(rows.rows()));
  s.terms_.push_back(Term{coeff, rows});
  return s;
}

void TermSum::append(const Term& term) {
  if (term.rows.cols() != modes_ || term.rows.rows() != photons_) {
    throw std::invalid_argument("TermSum::append: term shape mismatch");
  }
  terms_.push_back(term);
}

void TermSum::canonicalize() {
  std::vector<Term> kept;
  kept.reserve(terms_.size());
  for (Term term : terms_) {
    bool dead = std::abs(term.coeff) < kPruneTol;
    for (int i = 0; i < term.rows.rows() && !dead; ++i) {
      const double norm = term.rows.row(i).norm();
      if (norm < kPruneTol) {
        dead = true;  // zero factor kills the product
        break;
      }
      term.rows.row(i) /= norm;
      term.coeff *= norm;
      for (int j = 0; j < term.rows.cols(); ++j) {
        const Complex entry = term.rows(i, j);
        if (std::abs(entry) > kRowAnchorTol) {
          const Complex phase = entry / std::abs(entry);
          term.rows.row(i) /= phase;
          term.coeff *= phase;
          break;
        }
      }
    }
    if (dead || std::abs(term.coeff) < kPruneTol) continue;
    // Sort the multiset rows into a canonical order.
    std::vector<int> order(term.rows.rows());
    for (int i = 0; i < term.rows.rows(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return row_less(term.rows, a, term.rows, b);
    });
    GammaMultiset sorted(term.rows.rows(), term.rows.cols());
    for (int i = 0; i < term.rows.rows(); ++i) sorted.row(i) = term.rows.row(order[i]);
    term.rows = std::move(sorted);
    kept.push_back(std::move(term));
  }
  std::sort(kept.begin(), kept.end(), [](const Term& a, const Term& b) {
    for (int i = 0; i < a.rows.rows(); ++i) {
      if (row_less(a.rows, i, b.rows, i)) return true;
      if (row_less(b.rows, i, a.rows, i)) return false;
    }
    return false;
  });
  terms_.clear();
  for (auto& term : kept) {
    if (!terms_.empty() && rows_equal(terms_.back().rows, term.rows)) {
      terms_.back().coeff += term.coeff;
      if (std::abs(terms_.back().coeff) < kPruneTol) terms_.pop_back();
    } else {
      terms_.push_back(std::move(term));
    }
  }
}

Instruction Instruction::add(int mode) { return Instruction{OpKind::Add, mode, {}}; }

Instruction Instruction::unitary(const ComplexMatrix& u) {
  return Instruction{OpKind::Unitary, -1, u};
}

Instruction Instruction::subtract(int mode) {
  return Instruction{OpKind::Subtract, mode, {}};
}

Instruction Instruction::project(int mode) {
  return Instruction{OpKind::Project, mode, {}};
}

TermSum add_photon(const TermSum& s, int mode) {
  check_mode(mode, s.modes(), "add_photon");
  TermSum out(s.modes(), s.photons() + 1);
  for (const Term& term : s.term_list()) {
    GammaMultiset rows(term.rows.rows() + 1, s.modes());
    rows.topRows(term.rows.rows()) = term.rows;
    rows.row(term.rows.rows()).setZero();
    rows(term.rows.rows(), mode) = Complex(1.0, 0.0);
    out.append(Term{term.coeff, rows});
  }
  return out;
}

TermSum apply_unitary(const TermSum& s, const ComplexMatrix& u) {
  if (u.rows() != s.modes() || u.cols() != s.modes()) {
    throw std::invalid_argument("apply_unitary: matrix size must match modes");
  }
  require_unitary(u, "apply_unitary");
  TermSum out(s.modes(), s.photons());
  for (const Term& term : s.term_list()) {
    out.append(Term{term.coeff, term.rows * u});
  }
  return out;
}

HeraldedTermSum subtract_photon(const TermSum& s, int mode) {
  check_mode(mode, s.modes(), "subtract_photon");
  if (s.photons() < 1) {
    throw std::invalid_argument("subtract_photon: no photons to subtract");
  }
  const double before = termsum_norm_sq(s);
  TermSum out(s.modes(), s.photons() - 1);
  for (const Term& term : s.term_list()) {
    const int n = static_cast<int>(term.rows.rows());
    for (int i = 0; i < n; ++i) {
      const Complex factor = term.coeff * term.rows(i, mode);
      if (std::abs(factor) < kPruneTol) continue;
      GammaMultiset rows(n - 1, s.modes());
      int r = 0;
      for (int k = 0; k < n; ++k) {
        if (k != i) rows.row(r++) = term.rows.row(k);
      }
      out.append(Term{factor, rows});
    }
  }
  out.canonicalize();
  HeraldedTermSum result{std::move(out), 0.0, true};
  if (before < kHeraldZeroTol) return result;
  const double after = termsum_norm_sq(result.sum);
  result.weight = after / before;
  result.zero = result.weight < kHeraldZeroTol;
  if (result.zero) {
    result.sum = TermSum(s.modes(), s.photons() - 1);
    result.weight = 0.0;
  }
  return result;
}

HeraldedTermSum project_photon(const TermSum& s, int mode) {
  check_mode(mode, s.modes(), "project_photon");
  if (s.photons() < 1) {
    throw std::invalid_argument("project_photon: no photons to project");
  }
  if (s.modes() < 2) {
    throw std::invalid_argument("project_photon: needs at least two modes");
  }
  const double before = termsum_norm_sq(s);
  TermSum out(s.modes() - 1, s.photons() - 1);
  for (const Term& term : s.term_list()) {
    const int n = static_cast<int>(term.rows.rows());
    for (int i = 0; i < n; ++i) {
      const Complex factor = term.coeff * term.rows(i, mode);
      if (std::abs(factor) < kPruneTol) continue;
      GammaMultiset rows(n - 1, s.modes() - 1);
      int r = 0;
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        int c = 0;
        for (int j = 0; j < s.modes(); ++j) {
          if (j != mode) rows(r, c++) = term.rows(k, j);
        }
        ++r;
      }
      out.append(Term{factor, rows});
    }
  }
  out.canonicalize();
  HeraldedTermSum result{std::move(out), 0.0, true};
  if (before < kHeraldZeroTol) return result;
  const double after = termsum_norm_sq(result.sum);
  result.weight = after / before;
  result.zero = result.weight < kHeraldZeroTol;
  if (result.zero) {
    result.sum = TermSum(s.modes() - 1, s.photons() - 1);
    result.weight = 0.0;
  }
  return result;
}

FockState termsum_to_fock(const TermSum& s) {
  FockState state(s.modes(), s.photons());
  if (s.empty()) return state;
  for (const Occupation& occ : enumerate_basis(s.photons(), s.modes())) {
    Complex acc(0.0, 0.0);
    for (const Term& term : s.term_list()) {
      acc += term.coeff * amplitude_from_gamma(term.rows, occ);
    }
    if (std::abs(acc) >= kPruneTol) state.set_amplitude(occ, acc);
  }
  return state;
}

double termsum_norm_sq(const TermSum& s) { return termsum_to_fock(s).norm_sq(); }

RunResult run_program(const CircuitProgram& prog) {
  RunResult result;
  TermSum state = TermSum::vacuum(prog.modes);
  for (std::size_t i = 0; i < prog.ops.size(); ++i) {
    const Instruction& op = prog.ops[i];
    try {
      switch (op.kind) {
        case OpKind::Add:
          state = add_photon(state, op.mode);
          break;
        case OpKind::Unitary:
          state = apply_unitary(state, op.matrix);
          break;
        case OpKind::Subtract: {
          HeraldedTermSum h = subtract_photon(state, op.mode);
          result.herald_weights.push_back(h.weight);
          if (h.zero) {
            result.state = std::move(h.sum);
            result.weight = 0.0;
            result.zero = true;
            return result;
          }
          state = std::move(h.sum);
          break;
        }
        case OpKind::Project: {
          HeraldedTermSum h = project_photon(state, op.mode);
          result.herald_weights.push_back(h.weight);
          if (h.zero) {
            result.state = std::move(h.sum);
            result.weight = 0.0;
            result.zero = true;
            return result;
          }
          state = std::move(h.sum);
          break;
        }
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("instruction " + std::to_string(i) + ": " + e.what());
    }
  }
  result.weight = termsum_norm_sq(state);
  result.zero = result.weight < kHeraldZeroTol;
  result.state = std::move(state);
  return result;
}

CircuitProgram noon_program(int photons) {
  if (photons < 2) throw std::invalid_argument("noon_program: needs N >= 2");
  const double c = std::cos(std::numbers::pi / photons);
  const double s = std::sin(std::numbers::pi / photons);
  ComplexMatrix layer(2, 2);
  layer << Complex(c, 0.0), Complex(0.0, -s), Complex(0.0, -s), Complex(c, 0.0);
  ComplexMatrix last(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  last << Complex(r, 0.0), Complex(-r, 0.0), Complex(r, 0.0), Complex(r, 0.0);
  ComplexMatrix phase = ComplexMatrix::Identity(2, 2);
  phase(1, 1) = std::exp(Complex(0.0, std::numbers::pi / photons));
  CircuitProgram prog;
  prog.modes = 2;
  for (int n = 1; n <= photons; ++n) {
    prog.ops.push_back(Instruction::add(0));
    prog.ops.push_back(Instruction::unitary(n < photons ? layer : last));
  }
  prog.ops.push_back(Instruction::unitary(phase));
  return prog;
}

}  // namespace fockforge
