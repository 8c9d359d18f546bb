// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/polynomial.hpp"

#include <cmath>
#include <stdexcept>

#include "fockforge/combinatorics.hpp"

namespace fockforge {

namespace {

int exponent_total(const Occupation& exponents, const char* where) {
  int total = 0;
  for (int e : exponents) {
    if (e < 0) throw std::invalid_argument(std::string(where) + ": negative exponent");
    total += e;
  }
  return total;
}

}  // namespace

HomogeneousPolynomial::HomogeneousPolynomial(int vars, int degree)
    : vars_(vars), degree_(degree) {
  if (vars < 1) throw std::invalid_argument("HomogeneousPolynomial: vars < 1");
  if (degree < 0) throw std::invalid_argument("HomogeneousPolynomial: degree < 0");
}

HomogeneousPolynomial HomogeneousPolynomial::monomial(const Occupation& exponents,
                                                      Complex coeff) {
  HomogeneousPolynomial p(static_cast<int>(exponents.size()),
                          exponent_total(exponents, "monomial"));
  p.set_coefficient(exponents, coeff);
  return p;
}

HomogeneousPolynomial HomogeneousPolynomial::linear_form(const ComplexVector& coeffs) {
  HomogeneousPolynomial p(static_cast<int>(coeffs.size()), 1);
  Occupation exponents(p.vars(), 0);
  for (int j = 0; j < p.vars(); ++j) {
    exponents[j] = 1;
    p.set_coefficient(exponents, coeffs(j));
    exponents[j] = 0;
  }
  return p;
}

HomogeneousPolynomial HomogeneousPolynomial::constant(int vars, Complex value) {
  HomogeneousPolynomial p(vars, 0);
  p.set_coefficient(Occupation(vars, 0), value);
  return p;
}

Complex HomogeneousPolynomial::coefficient(const Occupation& exponents) const {
  const auto it = terms_.find(exponents);
  return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void HomogeneousPolynomial::set_coefficient(const Occupation& exponents, Complex value) {
  if (static_cast<int>(exponents.size()) != vars_) {
    throw std::invalid_argument("set_coefficient: wrong variable count");
  }
  if (exponent_total(exponents, "set_coefficient") != degree_) {
    throw std::invalid_argument("set_coefficient: breaks homogeneity");
  }
  if (std::abs(value) < kPruneTol) {
    terms_.erase(exponents);
  } else {
    terms_[exponents] = value;
  }
}

void HomogeneousPolynomial::add_coefficient(const Occupation& exponents, Complex value) {
  set_coefficient(exponents, coefficient(exponents) + value);
}

double HomogeneousPolynomial::norm() const {
  double acc = 0.0;
  for (const auto& [exp, c] : terms_) acc += std::norm(c);
  return std::sqrt(acc);
}

HomogeneousPolynomial HomogeneousPolynomial::scaled(Complex factor) const {
  HomogeneousPolynomial out(vars_, degree_);
  for (const auto& [exp, c] : terms_) {
    const Complex v = c * factor;
    if (std::abs(v) >= kPruneTol) out.terms_[exp] = v;
  }
  return out;
}

HomogeneousPolynomial HomogeneousPolynomial::operator+(
    const HomogeneousPolynomial& other) const {
  if (vars_ != other.vars_ || degree_ != other.degree_) {
    throw std::invalid_argument("polynomial +: shape mismatch");
  }
  HomogeneousPolynomial out = *this;
  for (const auto& [exp, c] : other.terms_) out.add_coefficient(exp, c);
  return out;
}

HomogeneousPolynomial HomogeneousPolynomial::operator-(
    const HomogeneousPolynomial& other) const {
  return *this + other.scaled(Complex(-1.0, 0.0));
}

Complex HomogeneousPolynomial::evaluate(const ComplexVector& point) const {
  if (static_cast<int>(point.size()) != vars_) {
    throw std::invalid_argument("evaluate: wrong point dimension");
  }
  Complex acc(0.0, 0.0);
  for (const auto& [exp, c] : terms_) {
    Complex prod = c;
    for (int j = 0; j < vars_; ++j) {
      for (int k = 0; k < exp[j]; ++k) prod *= point(j);
    }
    acc += prod;
  }
  return acc;
}

HomogeneousPolynomial from_fock_state(const FockState& state) {
  HomogeneousPolynomial p(state.modes(), state.photons());
  for (const auto& [occ, amp] : state.amplitudes()) {
    p.set_coefficient(occ, amp / std::sqrt(occupancy_factorial(occ)));
  }
  return p;
}

FockState to_fock_state(const HomogeneousPolynomial& p) {
  FockState state(p.vars(), p.degree());
  for (const auto& [exp, c] : p.terms()) {
    state.set_amplitude(exp, c * std::sqrt(occupancy_factorial(exp)));
  }
  return state;
}

HomogeneousPolynomial multiply(const HomogeneousPolynomial& p,
                               const HomogeneousPolynomial& q) {
  if (p.vars() != q.vars()) {
    throw std::invalid_argument("multiply: variable count mismatch");
  }
  HomogeneousPolynomial out(p.vars(), p.degree() + q.degree());
  Occupation exp(p.vars(), 0);
  for (const auto& [ep, cp] : p.terms()) {
    for (const auto& [eq, cq] : q.terms()) {
      for (int j = 0; j < p.vars(); ++j) exp[j] = ep[j] + eq[j];
      out.add_coefficient(exp, cp * cq);
    }
  }
  return out;
}

HomogeneousPolynomial substitute_linear(const HomogeneousPolynomial& p,
                                        const ComplexMatrix& a) {
  if (a.rows() != p.vars()) {
    throw std::invalid_argument("substitute_linear: row count must equal vars");
  }
  const int out_vars = static_cast<int>(a.cols());
  if (out_vars < 1) throw std::invalid_argument("substitute_linear: empty map");
  // Cache powers of each substituted variable ℓ_i = Σ_k A_{ik} y_k.
  std::vector<std::vector<HomogeneousPolynomial>> powers(p.vars());
  for (int i = 0; i < p.vars(); ++i) {
    powers[i].push_back(HomogeneousPolynomial::constant(out_vars, Complex(1.0, 0.0)));
  }
  const auto power_of = [&](int i, int e) -> const HomogeneousPolynomial& {
    auto& cache = powers[i];
    while (static_cast<int>(cache.size()) <= e) {
      const HomogeneousPolynomial form =
          HomogeneousPolynomial::linear_form(a.row(i).transpose());
      cache.push_back(multiply(cache.back(), form));
    }
    return cache[e];
  };
  HomogeneousPolynomial out(out_vars, p.degree());
  for (const auto& [exp, c] : p.terms()) {
    HomogeneousPolynomial prod =
        HomogeneousPolynomial::constant(out_vars, Complex(1.0, 0.0));
    for (int i = 0; i < p.vars(); ++i) {
      if (exp[i] > 0) prod = multiply(prod, power_of(i, exp[i]));
    }
    for (const auto& [eo, co] : prod.terms()) out.add_coefficient(eo, c * co);
  }
  return out;
}

HomogeneousPolynomial expand_linear_product(const GammaMultiset& gamma) {
  const int modes = static_cast<int>(gamma.cols());
  if (modes < 1) throw std::invalid_argument("expand_linear_product: no modes");
  HomogeneousPolynomial out =
      HomogeneousPolynomial::constant(modes, Complex(1.0, 0.0));
  for (int i = 0; i < gamma.rows(); ++i) {
    out = multiply(out, HomogeneousPolynomial::linear_form(gamma.row(i).transpose()));
    if (out.is_zero()) {
      return HomogeneousPolynomial(modes, static_cast<int>(gamma.rows()));
    }
  }
  return out;
}

bool proportional_to(const HomogeneousPolynomial& p, const HomogeneousPolynomial& q,
                     double tol) {
  if (p.vars() != q.vars() || p.degree() != q.degree()) return false;
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  const Occupation* peak = nullptr;
  double peak_abs = -1.0;
  for (const auto& [exp, c] : p.terms()) {
    if (std::abs(c) > peak_abs) {
      peak_abs = std::abs(c);
      peak = &exp;
    }
  }
  const Complex qp = q.coefficient(*peak);
  if (std::abs(qp) < tol * q.norm()) return false;
  const Complex ratio = qp / p.coefficient(*peak);
  // Compare q against ratio·p over the union of supports.
  const double scale = std::abs(ratio) * p.norm();
  for (const auto& [exp, c] : p.terms()) {
    if (std::abs(q.coefficient(exp) - ratio * c) > tol * scale) return false;
  }
  for (const auto& [exp, c] : q.terms()) {
    if (std::abs(c - ratio * p.coefficient(exp)) > tol * scale) return false;
  }
  return true;
}

HomogeneousPolynomial partial_derivative(const HomogeneousPolynomial& p, int var) {
  if (var < 0 || var >= p.vars()) {
    throw std::invalid_argument("partial_derivative: variable out of range");
  }
  if (p.degree() == 0) return HomogeneousPolynomial(p.vars(), 0);
  HomogeneousPolynomial out(p.vars(), p.degree() - 1);
  for (const auto& [exp, c] : p.terms()) {
    if (exp[var] == 0) continue;
    Occupation lowered = exp;
    lowered[var] -= 1;
    out.add_coefficient(lowered, c * static_cast<double>(exp[var]));
  }
  return out;
}

ComplexVector gradient_at(const HomogeneousPolynomial& p, const ComplexVector& point) {
  ComplexVector grad(p.vars());
  for (int j = 0; j < p.vars(); ++j) {
    grad(j) = partial_derivative(p, j).evaluate(point);
  }
  return grad;
}

}  // namespace fockforge
