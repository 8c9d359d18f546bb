// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <vector>

#include "fockforge/fock.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

// Sparse homogeneous polynomial in `vars` variables, all monomials of total
// degree `degree`.  Coefficients below kPruneTol are never stored.
class HomogeneousPolynomial {
 public:
  HomogeneousPolynomial(int vars, int degree);

  static HomogeneousPolynomial monomial(const Occupation& exponents, Complex coeff);
  // ℓ(x) = Σ_j coeffs[j]·x_j.
  static HomogeneousPolynomial linear_form(const ComplexVector& coeffs);
  static HomogeneousPolynomial constant(int vars, Complex value);

  int vars() const { return vars_; }
  int degree() const { return degree_; }

  const std::map<Occupation, Complex>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  Complex coefficient(const Occupation& exponents) const;
  void set_coefficient(const Occupation& exponents, Complex value);
  void add_coefficient(const Occupation& exponents, Complex value);

  // L2 norm of the coefficient vector.
  double norm() const;
  bool is_zero() const { return terms_.empty(); }

  HomogeneousPolynomial scaled(Complex factor) const;
  HomogeneousPolynomial operator+(const HomogeneousPolynomial& other) const;
  HomogeneousPolynomial operator-(const HomogeneousPolynomial& other) const;

  Complex evaluate(const ComplexVector& point) const;

 private:
  int vars_;
  int degree_;
  std::map<Occupation, Complex> terms_;
};

// |ψ⟩ = Σ f_s |s⟩ ↦ p(x) = Σ (f_s/√(s_1!…s_M!))·x^s.
HomogeneousPolynomial from_fock_state(const FockState& state);

// Inverse dictionary; output carries f_s = coeff(s)·√(s!) unnormalized.
FockState to_fock_state(const HomogeneousPolynomial& p);

HomogeneousPolynomial multiply(const HomogeneousPolynomial& p,
                               const HomogeneousPolynomial& q);

// p(Ax): variable x_i is replaced by Σ_k A_{ik}·y_k.  A has p.vars() rows;
// the column count sets the output variable count (rectangular A restricts
// the polynomial to a subspace).  Product-of-linear-forms rows map Γ ↦ Γ·A.
HomogeneousPolynomial substitute_linear(const HomogeneousPolynomial& p,
                                        const ComplexMatrix& a);

// Π_i (Σ_j Γ_{ij}·x_j).  A zero row collapses the product to the zero
// polynomial (flagged by is_zero on the result, not an error).
HomogeneousPolynomial expand_linear_product(const GammaMultiset& gamma);

// Ray equality: p == c·q for some nonzero complex c, compared after
// normalizing by the coefficient at p's peak monomial.
bool proportional_to(const HomogeneousPolynomial& p,
                     const HomogeneousPolynomial& q,
                     double tol = kProportionalityTol);

HomogeneousPolynomial partial_derivative(const HomogeneousPolynomial& p, int var);

// ∇p evaluated at a point.
ComplexVector gradient_at(const HomogeneousPolynomial& p, const ComplexVector& point);

}  // namespace fockforge
