// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/fock.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fockforge/combinatorics.hpp"
#include "fockforge/permanent.hpp"

namespace fockforge {

double unitarity_deviation(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const ComplexMatrix residual =
      u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols());
  return residual.cwiseAbs().maxCoeff();
}

void require_unitary(const ComplexMatrix& u, const char* where) {
  const double dev = unitarity_deviation(u);
  if (!(dev <= kUnitarityTol)) {
    throw std::invalid_argument(std::string(where) +
                                ": matrix is not unitary (deviation " +
                                std::to_string(dev) + ")");
  }
}

namespace {

void enumerate_rec(int remaining, int mode, Occupation& occ,
                   std::vector<Occupation>& out) {
  const int modes = static_cast<int>(occ.size());
  if (mode == modes - 1) {
    occ[mode] = remaining;
    out.push_back(occ);
    return;
  }
  for (int s = remaining; s >= 0; --s) {
    occ[mode] = s;
    enumerate_rec(remaining - s, mode + 1, occ, out);
  }
  occ[mode] = 0;
}

int occupation_total(const Occupation& occ, const char* where) {
  int total = 0;
  for (int s : occ) {
    if (s < 0) throw std::invalid_argument(std::string(where) + ": negative occupation");
    total += s;
  }
  return total;
}

void check_mode(int mode, int modes, const char* where) {
  if (mode < 0 || mode >= modes) {
    throw std::invalid_argument(std::string(where) + ": mode index out of range");
  }
}

}  // namespace

std::vector<Occupation> enumerate_basis(int photons, int modes) {
  if (photons < 0) throw std::invalid_argument("enumerate_basis: photons < 0");
  if (modes < 1) throw std::invalid_argument("enumerate_basis: modes < 1");
  std::vector<Occupation> out;
  out.reserve(static_cast<std::size_t>(basis_dimension(photons, modes)));
  Occupation occ(modes, 0);
  enumerate_rec(photons, 0, occ, out);
  return out;
}

std::int64_t basis_dimension(int photons, int modes) {
  if (photons < 0) throw std::invalid_argument("basis_dimension: photons < 0");
  if (modes < 1) throw std::invalid_argument("basis_dimension: modes < 1");
  return binomial(modes + photons - 1, photons);
}

FockState::FockState(int modes, int photons) : modes_(modes), photons_(photons) {
  if (modes < 1) throw std::invalid_argument("FockState: modes < 1");
  if (photons < 0) throw std::invalid_argument("FockState: photons < 0");
}

FockState FockState::vacuum(int modes) {
  FockState state(modes, 0);
  state.amps_[Occupation(static_cast<std::size_t>(modes), 0)] = Complex(1.0, 0.0);
  return state;
}

FockState FockState::basis_state(const Occupation& occ) {
  const int total = occupation_total(occ, "FockState::basis_state");
  FockState state(static_cast<int>(occ.size()), total);
  state.amps_[occ] = Complex(1.0, 0.0);
  return state;
}

Complex FockState::amplitude(const Occupation& occ) const {
  const auto it = amps_.find(occ);
  return it == amps_.end() ? Complex(0.0, 0.0) : it->second;
}

void FockState::set_amplitude(const Occupation& occ, Complex value) {
  if (static_cast<int>(occ.size()) != modes_) {
    throw std::invalid_argument("FockState::set_amplitude: wrong mode count");
  }
  if (occupation_total(occ, "FockState::set_amplitude") != photons_) {
    throw std::invalid_argument("FockState::set_amplitude: wrong photon count");
  }
  if (std::abs(value) < kPruneTol) {
    amps_.erase(occ);
  } else {
    amps_[occ] = value;
  }
}

void FockState::add_amplitude(const Occupation& occ, Complex value) {
  set_amplitude(occ, amplitude(occ) + value);
}

double FockState::norm_sq() const {
  double acc = 0.0;
  for (const auto& [occ, amp] : amps_) acc += std::norm(amp);
  return acc;
}

double FockState::norm() const { return std::sqrt(norm_sq()); }

bool FockState::is_normalized(double tol) const {
  return std::abs(norm_sq() - 1.0) <= tol;
}

FockState FockState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::runtime_error("FockState::normalized: zero state");
  return scaled(Complex(1.0 / n, 0.0));
}

FockState FockState::scaled(Complex factor) const {
  FockState out(modes_, photons_);
  for (const auto& [occ, amp] : amps_) {
    const Complex v = amp * factor;
    if (std::abs(v) >= kPruneTol) out.amps_[occ] = v;
  }
  return out;
}

void FockState::prune(double tol) {
  for (auto it = amps_.begin(); it != amps_.end();) {
    if (std::abs(it->second) < tol) {
      it = amps_.erase(it);
    } else {
      ++it;
    }
  }
}

HeraldedState make_heralded(FockState state) {
  state.prune();
  HeraldedState out{std::move(state), 0.0, true};
  out.weight = out.state.norm_sq();
  out.zero = out.weight < kHeraldZeroTol;
  if (out.zero) {
    out.state = FockState(out.state.modes(), out.state.photons());
    out.weight = 0.0;
  }
  return out;
}

Complex overlap(const FockState& a, const FockState& b) {
  if (a.modes() != b.modes()) {
    throw std::invalid_argument("overlap: mode count mismatch");
  }
  if (a.photons() != b.photons()) return Complex(0.0, 0.0);
  // Iterate the smaller map.
  const FockState& lhs = a.term_count() <= b.term_count() ? a : b;
  const FockState& rhs = &lhs == &a ? b : a;
  Complex acc(0.0, 0.0);
  for (const auto& [occ, amp] : lhs.amplitudes()) {
    const Complex other = rhs.amplitude(occ);
    if (&lhs == &a) {
      acc += std::conj(amp) * other;
    } else {
      acc += std::conj(other) * amp;
    }
  }
  return acc;
}

double fidelity(const FockState& a, const FockState& b) {
  const double na = a.norm_sq();
  const double nb = b.norm_sq();
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("fidelity: zero state");
  }
  return std::norm(overlap(a, b)) / (na * nb);
}

FockState apply_creation(const FockState& state, int mode) {
  check_mode(mode, state.modes(), "apply_creation");
  FockState out(state.modes(), state.photons() + 1);
  for (const auto& [occ, amp] : state.amplitudes()) {
    Occupation raised = occ;
    raised[mode] += 1;
    out.add_amplitude(raised, amp * std::sqrt(static_cast<double>(raised[mode])));
  }
  return out;
}

HeraldedState apply_annihilation(const FockState& state, int mode) {
  check_mode(mode, state.modes(), "apply_annihilation");
  FockState out(state.modes(), std::max(state.photons() - 1, 0));
  if (state.photons() == 0) return make_heralded(std::move(out));
  for (const auto& [occ, amp] : state.amplitudes()) {
    if (occ[mode] == 0) continue;
    Occupation lowered = occ;
    lowered[mode] -= 1;
    out.add_amplitude(lowered, amp * std::sqrt(static_cast<double>(occ[mode])));
  }
  return make_heralded(std::move(out));
}

HeraldedState project_single_photon(const FockState& state, int mode) {
  check_mode(mode, state.modes(), "project_single_photon");
  if (state.modes() < 2) {
    throw std::invalid_argument("project_single_photon: needs at least two modes");
  }
  FockState out(state.modes() - 1, std::max(state.photons() - 1, 0));
  if (state.photons() == 0) return make_heralded(std::move(out));
  for (const auto& [occ, amp] : state.amplitudes()) {
    if (occ[mode] != 1) continue;
    Occupation reduced;
    reduced.reserve(occ.size() - 1);
    for (int j = 0; j < static_cast<int>(occ.size()); ++j) {
      if (j != mode) reduced.push_back(occ[j]);
    }
    out.add_amplitude(reduced, amp);
  }
  return make_heralded(std::move(out));
}

FockState apply_unitary_fock(const FockState& state, const ComplexMatrix& u) {
  if (u.rows() != state.modes() || u.cols() != state.modes()) {
    throw std::invalid_argument("apply_unitary_fock: matrix size must match modes");
  }
  require_unitary(u, "apply_unitary_fock");
  FockState out(state.modes(), state.photons());
  if (state.is_zero()) return out;
  const auto targets = enumerate_basis(state.photons(), state.modes());
  for (const auto& target : targets) {
    Complex acc(0.0, 0.0);
    for (const auto& [source, amp] : state.amplitudes()) {
      const ComplexMatrix sub = build_transition_submatrix(u, source, target);
      const double denom =
          std::sqrt(occupancy_factorial(source) * occupancy_factorial(target));
      acc += amp * permanent_ryser(sub) / denom;
    }
    if (std::abs(acc) >= kPruneTol) out.set_amplitude(target, acc);
  }
  return out;
}

}  // namespace fockforge
