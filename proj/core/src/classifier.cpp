// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/classifier.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

#include "fockforge/fock.hpp"
#include "fockforge/parallel.hpp"

namespace fockforge {

namespace {

constexpr int kMaxSweeps = 80;
constexpr int kRefineSweeps = 25;
constexpr int kContradictedRestartCap = 4;
constexpr double kAnchorTol = 1e-9;

struct BasisIndex {
  std::vector<Occupation> list;
  std::map<Occupation, int> index;
};

BasisIndex make_basis(int degree, int vars) {
  BasisIndex b;
  b.list = enumerate_basis(degree, vars);
  for (int i = 0; i < static_cast<int>(b.list.size()); ++i) b.index[b.list[i]] = i;
  return b;
}

ComplexVector coeff_vector(const HomogeneousPolynomial& p, const BasisIndex& basis) {
  ComplexVector v = ComplexVector::Zero(basis.list.size());
  for (const auto& [exp, c] : p.terms()) v(basis.index.at(exp)) = c;
  return v;
}

HomogeneousPolynomial from_coeff_vector(int vars, int degree, const BasisIndex& basis,
                                        const ComplexVector& v) {
  HomogeneousPolynomial p(vars, degree);
  for (int i = 0; i < static_cast<int>(basis.list.size()); ++i) {
    if (std::abs(v(i)) >= kPruneTol) p.set_coefficient(basis.list[i], v(i));
  }
  return p;
}

// Matrix of "multiply by q" from degree-d coefficients to degree-(d+deg q).
ComplexMatrix multiplication_matrix(const HomogeneousPolynomial& q,
                                    const BasisIndex& factor_basis,
                                    const BasisIndex& product_basis) {
  ComplexMatrix a = ComplexMatrix::Zero(product_basis.list.size(),
                                        factor_basis.list.size());
  Occupation sum(q.vars(), 0);
  for (int col = 0; col < static_cast<int>(factor_basis.list.size()); ++col) {
    const Occupation& ef = factor_basis.list[col];
    for (const auto& [eq, c] : q.terms()) {
      for (int j = 0; j < q.vars(); ++j) sum[j] = eq[j] + ef[j];
      a(product_basis.index.at(sum), col) += c;
    }
  }
  return a;
}

// Unit norm, first significant coefficient real-positive.  Returns g with
// old = g · new.
Complex gauge_normalize(HomogeneousPolynomial& f) {
  const double n = f.norm();
  if (n < kPruneTol) return Complex(0.0, 0.0);
  Complex phase(1.0, 0.0);
  for (const auto& [exp, c] : f.terms()) {
    if (std::abs(c) > kAnchorTol * n) {
      phase = c / std::abs(c);
      break;
    }
  }
  const Complex g = phase * n;
  f = f.scaled(Complex(1.0, 0.0) / g);
  return g;
}

// argmin_s ‖s·u − b‖.
Complex scalar_fit(const ComplexVector& u, const ComplexVector& b) {
  const double nn = u.squaredNorm();
  if (nn == 0.0) return Complex(0.0, 0.0);
  return u.dot(b) / nn;  // Eigen dot conjugates the left argument
}

HomogeneousPolynomial random_unit_factor(int vars, int degree, const BasisIndex& basis,
                                         Rng& rng) {
  while (true) {
    ComplexVector v(basis.list.size());
    for (int i = 0; i < v.size(); ++i) v(i) = rng.normal_complex();
    HomogeneousPolynomial f = from_coeff_vector(vars, degree, basis, v);
    if (gauge_normalize(f) != Complex(0.0, 0.0)) return f;
  }
}

bool poly_less(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (ia->second.real() != ib->second.real()) {
      return ia->second.real() < ib->second.real();
    }
    if (ia->second.imag() != ib->second.imag()) {
      return ia->second.imag() < ib->second.imag();
    }
  }
  return ia == a.terms().end() && ib != b.terms().end();
}

std::vector<int> factor_degrees(const std::vector<int>& counts) {
  std::vector<int> degrees;
  for (int k = 1; k <= static_cast<int>(counts.size()); ++k) {
    for (int c = 0; c < counts[k - 1]; ++c) degrees.push_back(k);
  }
  return degrees;
}

std::vector<int> padded_counts(const std::vector<int>& counts, int degree) {
  std::vector<int> out(degree, 0);
  for (int k = 0; k < static_cast<int>(counts.size()); ++k) {
    if (counts[k] < 0) throw std::invalid_argument("partition: negative count");
    if (counts[k] > 0) {
      if (k >= degree) throw std::invalid_argument("partition: degree overflow");
      out[k] = counts[k];
    }
  }
  return out;
}

int partition_degree(const std::vector<int>& counts) {
  int total = 0;
  for (int k = 0; k < static_cast<int>(counts.size()); ++k) {
    total += (k + 1) * counts[k];
  }
  return total;
}

// Joint Gauss-Newton refinement of Πg_i ≈ target with the global scale
// absorbed into g_0.  The coefficient residual is holomorphic in the factor
// coefficients, so one complex least-squares solve per iteration gives a
// quadratically convergent step near a zero-residual factorization — exactly
// the regime where plain alternation slows to a crawl.  The per-factor
// rescaling gauge makes the Jacobian rank-deficient; the minimum-norm COD
// solve absorbs it.  Backtracking keeps infeasible fits monotone so they
// bail out after a couple of iterations.
void gauss_newton_polish(std::vector<HomogeneousPolynomial>& factors,
                         Complex& scale, double& residual,
                         const std::vector<int>& degrees,
                         const std::map<int, BasisIndex>& factor_bases,
                         const BasisIndex& product_basis,
                         const ComplexVector& target, double tol) {
  const int vars = factors.front().vars();
  std::vector<HomogeneousPolynomial> g = factors;
  g[0] = g[0].scaled(scale);

  std::vector<int> offsets;
  int total = 0;
  for (int d : degrees) {
    offsets.push_back(total);
    total += static_cast<int>(factor_bases.at(d).list.size());
  }
  const auto product_of = [&](const std::vector<HomogeneousPolynomial>& fs) {
    HomogeneousPolynomial prod =
        HomogeneousPolynomial::constant(vars, Complex(1.0, 0.0));
    for (const auto& f : fs) prod = multiply(prod, f);
    return prod;
  };

  ComplexVector r = coeff_vector(product_of(g), product_basis) - target;
  double cur = r.norm();
  int slow = 0;
  for (int iter = 0; iter < 25 && cur >= tol * 0.1; ++iter) {
    ComplexMatrix jac(product_basis.list.size(), total);
    for (std::size_t fi = 0; fi < g.size(); ++fi) {
      HomogeneousPolynomial rest =
          HomogeneousPolynomial::constant(vars, Complex(1.0, 0.0));
      for (std::size_t fj = 0; fj < g.size(); ++fj) {
        if (fj != fi) rest = multiply(rest, g[fj]);
      }
      if (rest.is_zero()) return;
      const BasisIndex& fb = factor_bases.at(degrees[fi]);
      jac.block(0, offsets[fi], jac.rows(),
                static_cast<int>(fb.list.size())) =
          multiplication_matrix(rest, fb, product_basis);
    }
    const ComplexVector delta =
        jac.completeOrthogonalDecomposition().solve(-r);
    double t = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 8; ++ls, t *= 0.5) {
      std::vector<HomogeneousPolynomial> trial = g;
      for (std::size_t fi = 0; fi < g.size(); ++fi) {
        const BasisIndex& fb = factor_bases.at(degrees[fi]);
        const ComplexVector c =
            coeff_vector(g[fi], fb) +
            t * delta.segment(offsets[fi], static_cast<int>(fb.list.size()));
        trial[fi] = from_coeff_vector(vars, degrees[fi], fb, c);
      }
      ComplexVector rt = coeff_vector(product_of(trial), product_basis) - target;
      if (rt.norm() < cur * (1.0 - 1e-4 * t)) {
        const double next = rt.norm();
        slow = next > 0.7 * cur ? slow + 1 : 0;
        g = std::move(trial);
        r = std::move(rt);
        cur = next;
        improved = true;
        break;
      }
    }
    if (!improved || slow >= 3) break;
  }
  if (cur >= residual) return;

  Complex new_scale(1.0, 0.0);
  for (auto& f : g) {
    const Complex gauge = gauge_normalize(f);
    if (gauge == Complex(0.0, 0.0)) return;
    new_scale *= gauge;
  }
  factors = std::move(g);
  scale = new_scale;
  residual = cur;
}

struct FitOutcome {
  std::optional<FactorizationResult> result;
  double best_residual = std::numeric_limits<double>::infinity();
  int restarts_used = 0;
};

// Alternating least squares over the factor set of one degree profile.
// `p` need not be normalized; the fit works on p/‖p‖ and folds ‖p‖ into
// the reported scale.
FitOutcome fit_partition(const HomogeneousPolynomial& p, const std::vector<int>& counts,
                         int restarts, std::uint64_t seed, double tol) {
  FitOutcome out;
  const int vars = p.vars();
  const int degree = p.degree();
  if (partition_degree(counts) != degree) {
    throw std::invalid_argument("try_factor_partition: partition degree mismatch");
  }
  const double pnorm = p.norm();
  if (pnorm < kPruneTol) {
    throw std::invalid_argument("try_factor_partition: zero polynomial");
  }
  const std::vector<int> degrees = factor_degrees(counts);
  const auto finish = [&](std::vector<HomogeneousPolynomial> factors, Complex scale,
                          double residual, int restarts_used) {
    std::sort(factors.begin(), factors.end(), poly_less);
    FactorizationResult r;
    r.signature = ClassSignature{padded_counts(counts, degree), vars};
    r.factors = std::move(factors);
    r.scale = scale;
    r.residual = residual;
    r.restarts_used = restarts_used;
    out.result = std::move(r);
    out.best_residual = residual;
  };

  if (degrees.size() == 1) {
    HomogeneousPolynomial f = p;
    const Complex g = gauge_normalize(f);
    finish({std::move(f)}, g, 0.0, 0);
    return out;
  }

  const HomogeneousPolynomial pn = p.scaled(Complex(1.0 / pnorm, 0.0));
  const BasisIndex product_basis = make_basis(degree, vars);
  std::map<int, BasisIndex> factor_bases;
  for (int d : degrees) {
    if (!factor_bases.count(d)) factor_bases[d] = make_basis(d, vars);
  }
  const ComplexVector target = coeff_vector(pn, product_basis);

  std::vector<HomogeneousPolynomial> best_factors;
  Complex best_scale(0.0, 0.0);

  for (int restart = 0; restart < restarts; ++restart) {
    out.restarts_used = restart + 1;
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(restart));
    std::vector<HomogeneousPolynomial> factors;
    factors.reserve(degrees.size());
    for (int d : degrees) {
      factors.push_back(random_unit_factor(vars, d, factor_bases[d], rng));
    }
    double prev = std::numeric_limits<double>::infinity();
    int stall = 0;
    double residual = std::numeric_limits<double>::infinity();
    Complex scale(0.0, 0.0);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      for (std::size_t fi = 0; fi < factors.size(); ++fi) {
        HomogeneousPolynomial rest =
            HomogeneousPolynomial::constant(vars, Complex(1.0, 0.0));
        for (std::size_t fj = 0; fj < factors.size(); ++fj) {
          if (fj != fi) rest = multiply(rest, factors[fj]);
        }
        const BasisIndex& fb = factor_bases[degrees[fi]];
        if (rest.is_zero()) {
          factors[fi] = random_unit_factor(vars, degrees[fi], fb, rng);
          continue;
        }
        const ComplexMatrix a = multiplication_matrix(rest, fb, product_basis);
        const ComplexVector c = a.completeOrthogonalDecomposition().solve(target);
        HomogeneousPolynomial f =
            from_coeff_vector(vars, degrees[fi], fb, c);
        if (gauge_normalize(f) == Complex(0.0, 0.0)) {
          factors[fi] = random_unit_factor(vars, degrees[fi], fb, rng);
        } else {
          factors[fi] = std::move(f);
        }
      }
      HomogeneousPolynomial product =
          HomogeneousPolynomial::constant(vars, Complex(1.0, 0.0));
      for (const auto& f : factors) product = multiply(product, f);
      const ComplexVector pv = coeff_vector(product, product_basis);
      scale = scalar_fit(pv, target);
      residual = (scale * pv - target).norm();
      // Plain alternation oscillates around perfect powers (f·g with
      // f ≈ g converges only sublinearly); averaging an equal-degree
      // block jumps straight to the symmetric solution.  Accepted only
      // when it actually lowers the residual, so distinct-factor blocks
      // are unaffected.
      if (residual >= tol * 0.1) {
        std::vector<HomogeneousPolynomial> averaged = factors;
        bool changed = false;
        std::size_t lo = 0;
        while (lo < averaged.size()) {
          std::size_t hi = lo;
          while (hi < averaged.size() && degrees[hi] == degrees[lo]) ++hi;
          if (hi - lo >= 2) {
            const BasisIndex& fb = factor_bases[degrees[lo]];
            ComplexVector mean = ComplexVector::Zero(fb.list.size());
            for (std::size_t i = lo; i < hi; ++i) {
              mean += coeff_vector(averaged[i], fb);
            }
            mean /= static_cast<double>(hi - lo);
            HomogeneousPolynomial m = from_coeff_vector(vars, degrees[lo], fb, mean);
            if (gauge_normalize(m) != Complex(0.0, 0.0)) {
              for (std::size_t i = lo; i < hi; ++i) averaged[i] = m;
              changed = true;
            }
          }
          lo = hi;
        }
        if (changed) {
          HomogeneousPolynomial avg_product =
              HomogeneousPolynomial::constant(vars, Complex(1.0, 0.0));
          for (const auto& f : averaged) avg_product = multiply(avg_product, f);
          const ComplexVector av = coeff_vector(avg_product, product_basis);
          const Complex avg_scale = scalar_fit(av, target);
          const double avg_residual = (avg_scale * av - target).norm();
          if (avg_residual < residual) {
            factors = std::move(averaged);
            scale = avg_scale;
            residual = avg_residual;
            stall = 0;
          }
        }
      }
      if (residual < tol * 0.1) break;
      if (residual > prev * 0.995) {
        if (++stall >= 5) break;
      } else {
        stall = 0;
      }
      prev = residual;
    }
    if (std::isfinite(residual) && residual >= tol * 0.1) {
      gauss_newton_polish(factors, scale, residual, degrees, factor_bases,
                          product_basis, target, tol);
    }
    if (residual < out.best_residual) {
      out.best_residual = residual;
      best_factors = factors;
      best_scale = scale;
    }
    if (out.best_residual < tol * 0.1) break;
  }

  if (out.best_residual < tol) {
    finish(std::move(best_factors), best_scale * pnorm, out.best_residual,
           out.restarts_used);
  }
  return out;
}

// --- linear-factor harvesting ------------------------------------------

// Roots of Σ_k c_k x^{d−k} y^k as projective points (s,t); multiple roots
// appear once per multiplicity (clustered, possibly inaccurately).
std::vector<std::pair<Complex, Complex>> binary_form_roots(
    const HomogeneousPolynomial& b) {
  const int d = b.degree();
  std::vector<Complex> c(d + 1);
  for (int k = 0; k <= d; ++k) {
    c[k] = b.coefficient(Occupation{d - k, k});
  }
  double cmax = 0.0;
  for (const Complex& v : c) cmax = std::max(cmax, std::abs(v));
  std::vector<std::pair<Complex, Complex>> roots;
  if (cmax == 0.0) return roots;
  const double tiny = 1e-12 * cmax;
  int lead = 0;
  while (lead <= d && std::abs(c[lead]) <= tiny) ++lead;
  int trail = d;
  while (trail >= 0 && std::abs(c[trail]) <= tiny) --trail;
  for (int k = 0; k < lead; ++k) roots.emplace_back(Complex(1, 0), Complex(0, 0));
  for (int k = trail; k < d; ++k) roots.emplace_back(Complex(0, 0), Complex(1, 0));
  const int inner = trail - lead;
  if (inner >= 1) {
    ComplexMatrix companion = ComplexMatrix::Zero(inner, inner);
    for (int i = 1; i < inner; ++i) companion(i, i - 1) = Complex(1.0, 0.0);
    for (int i = 0; i < inner; ++i) companion(i, inner - 1) = -c[lead + i] / c[trail];
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(companion, false);
    for (int i = 0; i < inner; ++i) {
      roots.emplace_back(Complex(1, 0), solver.eigenvalues()(i));
    }
  }
  return roots;
}

ComplexMatrix hessian_at(const HomogeneousPolynomial& p, const ComplexVector& w) {
  ComplexMatrix h(p.vars(), p.vars());
  for (int j = 0; j < p.vars(); ++j) {
    const HomogeneousPolynomial dj = partial_derivative(p, j);
    for (int k = j; k < p.vars(); ++k) {
      h(j, k) = partial_derivative(dj, k).evaluate(w);
      h(k, j) = h(j, k);
    }
  }
  return h;
}

// Candidate linear-factor directions for a unit-norm polynomial.
void harvest_candidates(const HomogeneousPolynomial& p, int depth,
                        std::vector<ComplexVector>& cands) {
  const int vars = p.vars();
  const int degree = p.degree();
  if (degree < 1) return;
  Rng rng = Rng::stream(0x9e1fbead00c0ffeeULL,
                        (static_cast<std::uint64_t>(degree) << 24) ^
                            (static_cast<std::uint64_t>(vars) << 8) ^
                            static_cast<std::uint64_t>(depth));
  bool want_recursion = false;
  const int planes = vars == 2 ? 1 : 3;
  for (int plane = 0; plane < planes; ++plane) {
    ComplexVector u(vars);
    ComplexVector v(vars);
    if (vars == 2 && plane == 0) {
      u << Complex(1, 0), Complex(0, 0);
      v << Complex(0, 0), Complex(1, 0);
    } else {
      for (int j = 0; j < vars; ++j) u(j) = rng.normal_complex();
      for (int j = 0; j < vars; ++j) v(j) = rng.normal_complex();
      u.normalize();
      v -= u * u.dot(v);
      v.normalize();
    }
    ComplexMatrix a(vars, 2);
    a.col(0) = u;
    a.col(1) = v;
    const HomogeneousPolynomial restricted = substitute_linear(p, a);
    if (restricted.is_zero()) continue;
    for (const auto& [s, t] : binary_form_roots(restricted)) {
      ComplexVector w = s * u + t * v;
      const double wn = w.norm();
      if (wn < 1e-12) continue;
      w /= wn;
      const ComplexVector grad = gradient_at(p, w);
      if (grad.norm() > 1e-7) {
        cands.push_back(grad.normalized());
        continue;
      }
      const ComplexMatrix h = hessian_at(p, w);
      int best_col = 0;
      double best_norm = 0.0;
      for (int j = 0; j < vars; ++j) {
        const double n = h.col(j).norm();
        if (n > best_norm) {
          best_norm = n;
          best_col = j;
        }
      }
      if (best_norm > 1e-7) {
        cands.push_back(h.col(best_col).normalized());
      } else {
        want_recursion = true;
      }
    }
  }
  if (want_recursion && depth < 3 && degree >= 2) {
    // Factors of multiplicity ≥ 3 survive a directional derivative with
    // multiplicity reduced by one; harvest from there.
    ComplexVector z(vars);
    for (int j = 0; j < vars; ++j) z(j) = rng.normal_complex();
    HomogeneousPolynomial dp(vars, degree - 1);
    for (int j = 0; j < vars; ++j) {
      dp = dp + partial_derivative(p, j).scaled(z(j));
    }
    if (!dp.is_zero()) {
      dp = dp.scaled(Complex(1.0 / dp.norm(), 0.0));
      harvest_candidates(dp, depth + 1, cands);
    }
  }
  for (int extra = 0; extra < 2; ++extra) {
    ComplexVector r(vars);
    for (int j = 0; j < vars; ++j) r(j) = rng.normal_complex();
    cands.push_back(r.normalized());
  }
}

struct DivisionResult {
  bool ok = false;
  HomogeneousPolynomial factor;    // unit-norm linear form
  HomogeneousPolynomial quotient;  // factor · quotient ≈ p
  double residual = std::numeric_limits<double>::infinity();
};

// Polish a candidate direction with a {1, d−1} alternating fit, then accept
// only if the division residual clears kPeelResidualTol.
DivisionResult refine_and_divide(const HomogeneousPolynomial& p,
                                 const ComplexVector& candidate,
                                 const BasisIndex& product_basis,
                                 const BasisIndex& linear_basis,
                                 const BasisIndex& quotient_basis) {
  DivisionResult out{false, HomogeneousPolynomial(p.vars(), 1),
                     HomogeneousPolynomial(p.vars(), p.degree() - 1),
                     std::numeric_limits<double>::infinity()};
  const double pnorm = p.norm();
  const HomogeneousPolynomial pn = p.scaled(Complex(1.0 / pnorm, 0.0));
  const ComplexVector target = coeff_vector(pn, product_basis);
  HomogeneousPolynomial ell = HomogeneousPolynomial::linear_form(candidate);
  if (gauge_normalize(ell) == Complex(0.0, 0.0)) return out;
  ComplexVector qv;
  double prev = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < kRefineSweeps; ++sweep) {
    const ComplexMatrix aq = multiplication_matrix(ell, quotient_basis, product_basis);
    qv = aq.completeOrthogonalDecomposition().solve(target);
    const double residual = (aq * qv - target).norm();
    if (residual < out.residual) {
      out.residual = residual;
      out.factor = ell;
      out.quotient = from_coeff_vector(p.vars(), p.degree() - 1, quotient_basis,
                                       qv * pnorm);
    }
    if (residual < 0.05 * kPeelResidualTol || residual > prev * 0.5) break;
    prev = residual;
    const HomogeneousPolynomial q =
        from_coeff_vector(p.vars(), p.degree() - 1, quotient_basis, qv);
    if (q.is_zero()) break;
    const ComplexMatrix al = multiplication_matrix(q, linear_basis, product_basis);
    const ComplexVector lv = al.completeOrthogonalDecomposition().solve(target);
    HomogeneousPolynomial next = from_coeff_vector(p.vars(), 1, linear_basis, lv);
    if (gauge_normalize(next) == Complex(0.0, 0.0)) break;
    ell = std::move(next);
  }
  out.ok = out.residual < kPeelResidualTol;
  return out;
}

}  // namespace

int ClassSignature::degree() const { return partition_degree(counts); }

int ClassSignature::factor_count() const {
  int total = 0;
  for (int c : counts) total += c;
  return total;
}

std::string ClassSignature::to_string() const {
  std::string out = "[";
  bool first = true;
  for (int k = 1; k <= static_cast<int>(counts.size()); ++k) {
    if (counts[k - 1] == 0) continue;
    if (!first) out += ' ';
    out += std::to_string(k) + "^" + std::to_string(counts[k - 1]);
    first = false;
  }
  out += "]_" + std::to_string(modes);
  return out;
}

std::vector<std::vector<int>> enumerate_partitions(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_partitions: N >= 1 required");
  std::vector<std::vector<int>> out;
  std::vector<int> counts(n, 0);
  // Parts chosen in non-increasing order.
  const auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(counts);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      counts[part - 1] += 1;
      self(self, remaining - part, part);
      counts[part - 1] -= 1;
    }
  };
  rec(rec, n, n);
  std::sort(out.begin(), out.end(), [](const std::vector<int>& a,
                                       const std::vector<int>& b) {
    int fa = 0;
    int fb = 0;
    for (int c : a) fa += c;
    for (int c : b) fb += c;
    if (fa != fb) return fa > fb;
    return a > b;
  });
  return out;
}

std::optional<FactorizationResult> try_factor_partition(
    const HomogeneousPolynomial& p, const std::vector<int>& counts, int restarts,
    std::uint64_t seed, double tol) {
  return fit_partition(p, counts, restarts, seed, tol).result;
}

PeelResult peel_linear_factors(const HomogeneousPolynomial& p) {
  if (p.is_zero()) {
    throw std::invalid_argument("peel_linear_factors: zero polynomial");
  }
  PeelResult result{{}, p};
  if (p.vars() == 1) {
    ComplexVector one(1);
    one << Complex(1.0, 0.0);
    const Complex c = p.coefficient(Occupation{p.degree()});
    for (int i = 0; i < p.degree(); ++i) {
      result.linear_factors.push_back(HomogeneousPolynomial::linear_form(one));
    }
    result.remainder = HomogeneousPolynomial::constant(1, c);
    return result;
  }
  while (result.remainder.degree() >= 1) {
    HomogeneousPolynomial& rem = result.remainder;
    if (rem.degree() == 1) {
      HomogeneousPolynomial ell = rem;
      const Complex g = gauge_normalize(ell);
      result.linear_factors.push_back(std::move(ell));
      result.remainder = HomogeneousPolynomial::constant(rem.vars(), g);
      break;
    }
    const HomogeneousPolynomial rn = rem.scaled(Complex(1.0 / rem.norm(), 0.0));
    std::vector<ComplexVector> candidates;
    harvest_candidates(rn, 0, candidates);
    const BasisIndex product_basis = make_basis(rem.degree(), rem.vars());
    const BasisIndex linear_basis = make_basis(1, rem.vars());
    const BasisIndex quotient_basis = make_basis(rem.degree() - 1, rem.vars());
    bool found = false;
    for (const ComplexVector& cand : candidates) {
      DivisionResult division = refine_and_divide(rem, cand, product_basis,
                                                  linear_basis, quotient_basis);
      if (division.ok) {
        result.linear_factors.push_back(std::move(division.factor));
        result.remainder = std::move(division.quotient);
        found = true;
        break;
      }
    }
    if (!found) break;
  }
  std::sort(result.linear_factors.begin(), result.linear_factors.end(), poly_less);
  return result;
}

FactorizationResult classify(const HomogeneousPolynomial& p, int restarts,
                             std::uint64_t seed, double tol) {
  if (p.is_zero()) throw std::invalid_argument("classify: zero polynomial");
  if (p.degree() < 1) {
    throw std::invalid_argument("classify: constant polynomial has no class");
  }
  const int vars = p.vars();
  const int degree = p.degree();
  const double pnorm = p.norm();

  if (vars <= 2) {
    // Binary (and univariate) forms split into linear factors exactly;
    // root the dehomogenized polynomial instead of fitting.
    std::vector<HomogeneousPolynomial> factors;
    Complex scale(pnorm, 0.0);
    const HomogeneousPolynomial pn = p.scaled(Complex(1.0 / pnorm, 0.0));
    if (vars == 1) {
      PeelResult peel = peel_linear_factors(pn);
      factors = std::move(peel.linear_factors);
      scale *= peel.remainder.coefficient(Occupation{0});
    } else {
      for (const auto& [s, t] : binary_form_roots(pn)) {
        // Root (s,t): the factor vanishing there is t·x − s·y for the
        // affine roots and the coordinate forms at infinity.
        ComplexVector coeffs(2);
        if (std::abs(s) < 1e-14) {
          coeffs << Complex(1, 0), Complex(0, 0);  // root (0,1): factor x
        } else if (std::abs(t) < 1e-14 && std::abs(s - Complex(1, 0)) < 1e-14) {
          coeffs << Complex(0, 0), Complex(1, 0);  // root (1,0): factor y
        } else {
          coeffs << t / s, Complex(-1.0, 0.0);
        }
        HomogeneousPolynomial ell = HomogeneousPolynomial::linear_form(coeffs);
        gauge_normalize(ell);
        factors.push_back(std::move(ell));
      }
      std::sort(factors.begin(), factors.end(), poly_less);
    }
    HomogeneousPolynomial product =
        HomogeneousPolynomial::constant(vars, Complex(1.0, 0.0));
    for (const auto& f : factors) product = multiply(product, f);
    const BasisIndex basis = make_basis(degree, vars);
    const ComplexVector pv = coeff_vector(product, basis);
    const ComplexVector tv = coeff_vector(p, basis);
    const Complex s = scalar_fit(pv, tv);
    FactorizationResult result;
    std::vector<int> counts(degree, 0);
    counts[0] = degree;
    result.signature = ClassSignature{counts, vars};
    result.factors = std::move(factors);
    result.scale = s;
    result.residual = (s * pv - tv).norm() / pnorm;
    result.restarts_used = 0;
    return result;
  }

  const HomogeneousPolynomial pn = p.scaled(Complex(1.0 / pnorm, 0.0));
  PeelResult peel = peel_linear_factors(pn);
  const int peeled = static_cast<int>(peel.linear_factors.size());
  const BasisIndex full_basis = make_basis(degree, vars);
  const ComplexVector target = coeff_vector(pn, full_basis);

  int restarts_used = 0;
  std::vector<RejectedPartition> rejected;
  const auto assemble = [&](const std::vector<int>& counts,
                            std::vector<HomogeneousPolynomial> factors,
                            int used) -> std::optional<FactorizationResult> {
    HomogeneousPolynomial product =
        HomogeneousPolynomial::constant(vars, Complex(1.0, 0.0));
    for (const auto& f : factors) product = multiply(product, f);
    const ComplexVector pv = coeff_vector(product, full_basis);
    const Complex s = scalar_fit(pv, target);
    const double residual = (s * pv - target).norm();
    if (residual >= tol) return std::nullopt;
    std::sort(factors.begin(), factors.end(), poly_less);
    FactorizationResult result;
    result.signature = ClassSignature{padded_counts(counts, degree), vars};
    result.factors = std::move(factors);
    result.scale = s * pnorm;
    result.residual = residual;
    result.restarts_used = used;
    result.rejected = rejected;
    return result;
  };

  std::uint64_t subfit = 0;
  for (const std::vector<int>& raw : enumerate_partitions(degree)) {
    const std::vector<int> counts = raw;
    const std::uint64_t fit_seed = Rng::stream(seed, ++subfit).next_u64();
    if (counts[0] == peeled) {
      const int rest_degree = degree - peeled;
      if (rest_degree == 0) {
        auto done = assemble(counts, peel.linear_factors, restarts_used);
        if (done) return *done;
        rejected.push_back({counts, std::numeric_limits<double>::infinity()});
        continue;
      }
      std::vector<int> rest_counts = counts;
      rest_counts[0] = 0;
      FitOutcome fit = fit_partition(peel.remainder, rest_counts, restarts,
                                     fit_seed, tol);
      restarts_used += fit.restarts_used;
      if (fit.result) {
        std::vector<HomogeneousPolynomial> factors = peel.linear_factors;
        for (auto& f : fit.result->factors) factors.push_back(std::move(f));
        auto done = assemble(counts, std::move(factors), restarts_used);
        if (done) return *done;
      }
      rejected.push_back({counts, fit.best_residual});
    } else {
      // Peel disagrees with this profile; a short direct attempt keeps the
      // scan honest without burning the full restart budget.
      FitOutcome fit = fit_partition(pn, counts,
                                     std::min(restarts, kContradictedRestartCap),
                                     fit_seed, tol);
      restarts_used += fit.restarts_used;
      if (fit.result) {
        auto done = assemble(counts, std::move(fit.result->factors), restarts_used);
        if (done) return *done;
      }
      rejected.push_back({counts, fit.best_residual});
    }
  }
  throw std::runtime_error("classify: no partition fit (unreachable)");
}

HomogeneousPolynomial fermat_class_representative(const std::vector<int>& counts) {
  const int degree = partition_degree(counts);
  if (degree < 1) {
    throw std::invalid_argument("fermat_class_representative: empty partition");
  }
  HomogeneousPolynomial p = HomogeneousPolynomial::constant(3, Complex(1.0, 0.0));
  for (int k = 1; k <= static_cast<int>(counts.size()); ++k) {
    if (counts[k - 1] == 0) continue;
    HomogeneousPolynomial fermat(3, k);
    fermat.set_coefficient(Occupation{k, 0, 0}, Complex(1.0, 0.0));
    fermat.set_coefficient(Occupation{0, k, 0}, Complex(1.0, 0.0));
    fermat.set_coefficient(Occupation{0, 0, k}, Complex(-1.0, 0.0));
    for (int c = 0; c < counts[k - 1]; ++c) p = multiply(p, fermat);
  }
  return p;
}

InvarianceReport check_unitary_invariance(const HomogeneousPolynomial& p, int trials,
                                          std::uint64_t seed, int restarts,
                                          int threads) {
  if (trials < 1) throw std::invalid_argument("check_unitary_invariance: trials >= 1");
  InvarianceReport report;
  report.base = classify(p, restarts, Rng::stream(seed, 0).next_u64()).signature;
  report.trials = trials;
  report.per_trial.resize(trials);
  parallel_for(trials, threads, [&](int t) {
    const std::uint64_t u_seed =
        Rng::stream(seed, 2 * static_cast<std::uint64_t>(t) + 1).next_u64();
    const std::uint64_t c_seed =
        Rng::stream(seed, 2 * static_cast<std::uint64_t>(t) + 2).next_u64();
    const ComplexMatrix u = haar_random_unitary(p.vars(), u_seed);
    const HomogeneousPolynomial rotated = substitute_linear(p, u);
    report.per_trial[t] = classify(rotated, restarts, c_seed).signature;
  });
  for (const auto& sig : report.per_trial) {
    if (sig == report.base) ++report.agreements;
  }
  return report;
}

ComplexMatrix haar_random_unitary(int m, Rng& rng) {
  if (m < 1) throw std::invalid_argument("haar_random_unitary: M >= 1");
  ComplexMatrix a(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a(i, j) = rng.normal_complex();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    const Complex d = r(j, j);
    const Complex phase = std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

ComplexMatrix haar_random_unitary(int m, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_unitary(m, rng);
}

}  // namespace fockforge
