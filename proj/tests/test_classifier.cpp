// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <doctest.h>

#include "fockforge/polynomial.hpp"
#include "fockforge/rng.hpp"
#include "test_util.hpp"

namespace fockforge {
namespace {

using test::occ;

// x²y + y²z + z²x − xy² − yz² − zx², the fully antisymmetric 3-photon state;
// equals (x−y)(y−z)(z−x) up to sign.
HomogeneousPolynomial antisymmetric_poly() {
  HomogeneousPolynomial p(3, 3);
  p.set_coefficient(occ({2, 1, 0}), Complex(1, 0));
  p.set_coefficient(occ({0, 2, 1}), Complex(1, 0));
  p.set_coefficient(occ({1, 0, 2}), Complex(1, 0));
  p.set_coefficient(occ({1, 2, 0}), Complex(-1, 0));
  p.set_coefficient(occ({0, 1, 2}), Complex(-1, 0));
  p.set_coefficient(occ({2, 0, 1}), Complex(-1, 0));
  return p;
}

// The symmetric counterpart with all six coefficients +1; irreducible.
HomogeneousPolynomial symmetric_poly() {
  HomogeneousPolynomial p(3, 3);
  for (const auto& e : {occ({2, 1, 0}), occ({0, 2, 1}), occ({1, 0, 2}),
                        occ({1, 2, 0}), occ({0, 1, 2}), occ({2, 0, 1})})
    p.set_coefficient(e, Complex(1, 0));
  return p;
}

HomogeneousPolynomial noon_poly(int n) {
  HomogeneousPolynomial p(2, n);
  Occupation left(2, 0), right(2, 0);
  left[0] = n;
  right[1] = n;
  p.set_coefficient(left, Complex(1, 0));
  p.set_coefficient(right, Complex(1, 0));
  return p;
}

// Brute-force partition oracle via descending-part recursion.
void partitions_of(int n, int max_part, std::vector<int>& parts,
                   std::vector<std::vector<int>>& out) {
  if (n == 0) {
    int top = 1;
    for (int part : parts) top = std::max(top, part);
    std::vector<int> counts(static_cast<std::size_t>(top), 0);
    for (int part : parts) ++counts[static_cast<std::size_t>(part) - 1];
    out.push_back(counts);
    return;
  }
  for (int part = std::min(n, max_part); part >= 1; --part) {
    parts.push_back(part);
    partitions_of(n - part, part, parts, out);
    parts.pop_back();
  }
}

TEST_CASE("enumerate_partitions is complete and finest-first") {
  for (int n = 1; n <= 8; ++n) {
    std::vector<std::vector<int>> expect;
    std::vector<int> parts;
    partitions_of(n, n, parts, expect);
    for (auto& counts : expect) counts.resize(static_cast<std::size_t>(n), 0);

    auto got = enumerate_partitions(n);
    REQUIRE(got.size() == expect.size());
    for (const auto& counts : got) {
      REQUIRE(static_cast<int>(counts.size()) == n);
      int total = 0;
      for (int k = 1; k <= n; ++k) total += k * counts[static_cast<std::size_t>(k - 1)];
      CHECK(total == n);
      CHECK(std::count(expect.begin(), expect.end(), counts) == 1);
    }
    const auto factor_count = [](const std::vector<int>& c) {
      int s = 0;
      for (int v : c) s += v;
      return s;
    };
    for (std::size_t i = 1; i < got.size(); ++i) {
      const int a = factor_count(got[i - 1]);
      const int b = factor_count(got[i]);
      CHECK(a >= b);
      if (a == b) CHECK(got[i - 1] > got[i]);
    }
  }
  CHECK(enumerate_partitions(4).size() == 5);
  CHECK(enumerate_partitions(4).front() == std::vector<int>{4, 0, 0, 0});
  CHECK(enumerate_partitions(4).back() == std::vector<int>{0, 0, 0, 1});
}

TEST_CASE("signature rendering") {
  ClassSignature sig;
  sig.counts = {3, 0, 0};
  sig.modes = 3;
  CHECK(sig.to_string() == "[1^3]_3");
  CHECK(sig.degree() == 3);
  CHECK(sig.factor_count() == 3);

  ClassSignature mixed;
  mixed.counts = {1, 0, 1};
  mixed.modes = 4;
  CHECK(mixed.to_string() == "[1^1 3^1]_4");
}

TEST_CASE("antisymmetric state factors into the three difference planes") {
  const auto result =
      try_factor_partition(antisymmetric_poly(), {3, 0, 0}, 32, 5);
  REQUIRE(result.has_value());
  CHECK(result->residual < kFactorResidualTol);
  REQUIRE(result->factors.size() == 3);

  ComplexVector xy(3), yz(3), zx(3);
  xy << Complex(1, 0), Complex(-1, 0), Complex(0, 0);
  yz << Complex(0, 0), Complex(1, 0), Complex(-1, 0);
  zx << Complex(-1, 0), Complex(0, 0), Complex(1, 0);
  std::vector<HomogeneousPolynomial> expected = {
      HomogeneousPolynomial::linear_form(xy),
      HomogeneousPolynomial::linear_form(yz),
      HomogeneousPolynomial::linear_form(zx)};
  std::vector<bool> used(3, false);
  for (const auto& factor : result->factors) {
    bool matched = false;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (!used[i] && proportional_to(factor, expected[i], 1e-7)) {
        used[i] = true;
        matched = true;
        break;
      }
    }
    CHECK(matched);
  }
}

TEST_CASE("corpus classifications") {
  const auto antisym = classify(antisymmetric_poly());
  CHECK(antisym.signature.to_string() == "[1^3]_3");

  const auto sym = classify(symmetric_poly());
  CHECK(sym.signature.to_string() == "[3^1]_3");
  CHECK(!sym.rejected.empty());

  for (int n = 2; n <= 6; ++n) {
    const auto noon = classify(noon_poly(n));
    ClassSignature expect;
    expect.counts.assign(static_cast<std::size_t>(n), 0);
    expect.counts[0] = n;
    expect.modes = 2;
    CHECK(noon.signature == expect);
  }
}

TEST_CASE("Fermat representatives recover every partition up to degree 4") {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& counts : enumerate_partitions(n)) {
      const HomogeneousPolynomial rep = fermat_class_representative(counts);
      const auto result = classify(rep, 48, 11);
      CHECK(result.signature.counts == counts);
      CHECK(result.residual < kFactorResidualTol);
    }
  }
}

TEST_CASE("random factored products classify to their construction") {
  Rng rng(20260815);
  int correct = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = rng.uniform_int(2, 5);
    const auto partitions = enumerate_partitions(n);
    const auto& counts =
        partitions[static_cast<std::size_t>(rng.uniform_int(
            0, static_cast<int>(partitions.size()) - 1))];
    HomogeneousPolynomial p = HomogeneousPolynomial::constant(3, Complex(1, 0));
    for (int k = 1; k <= n; ++k) {
      for (int i = 0; i < counts[static_cast<std::size_t>(k - 1)]; ++i) {
        HomogeneousPolynomial factor(3, k);
        // Dense random factors of degree ≥ 2 are irreducible with
        // probability 1; degree-1 factors are irreducible by definition.
        do {
          factor = test::random_polynomial(3, k, rng);
        } while (factor.norm() < 1e-3);
        p = multiply(p, factor);
      }
    }
    const auto result = classify(p, 32, 1000 + static_cast<std::uint64_t>(trial));
    if (result.signature.counts == counts) ++correct;
  }
  // ≥ 99% recovery on random instances.
  CHECK(correct >= 198);
}

TEST_CASE("peel_linear_factors splits off exactly the linear content") {
  Rng rng(131);
  // (linear)²·(irreducible quadratic): peel must find two copies.
  ComplexVector dir(3);
  dir << Complex(1, 0), Complex(0.5, -0.25), Complex(-0.75, 0.5);
  const auto ell = HomogeneousPolynomial::linear_form(dir);
  const HomogeneousPolynomial quad = test::random_polynomial(3, 2, rng);
  const HomogeneousPolynomial p = multiply(multiply(ell, ell), quad);

  const PeelResult peel = peel_linear_factors(p);
  CHECK(peel.linear_factors.size() == 2);
  CHECK(peel.remainder.degree() == 2);
  for (const auto& factor : peel.linear_factors)
    CHECK(proportional_to(factor, ell, 1e-7));

  HomogeneousPolynomial rebuilt = peel.remainder;
  for (const auto& factor : peel.linear_factors)
    rebuilt = multiply(rebuilt, factor);
  CHECK((rebuilt - p).norm() < 1e-8 * p.norm());
}

TEST_CASE("degenerate two-mode content inside three modes") {
  // x² as a 3-variable polynomial: [1^2]_3, stable under rotation.
  const auto p = HomogeneousPolynomial::monomial(occ({2, 0, 0}), Complex(1, 0));
  const auto result = classify(p);
  CHECK(result.signature.to_string() == "[1^2]_3");

  const InvarianceReport report = check_unitary_invariance(p, 10, 17);
  CHECK(report.trials == 10);
  CHECK(report.agreements == 10);
  for (const auto& sig : report.per_trial) CHECK(sig == report.base);
}

TEST_CASE("unitary invariance of the corpus signatures") {
  const InvarianceReport a = check_unitary_invariance(antisymmetric_poly(), 8, 3);
  CHECK(a.agreements == 8);
  const InvarianceReport s = check_unitary_invariance(symmetric_poly(), 8, 3);
  CHECK(s.agreements == 8);
}

TEST_CASE("two-variable states are rooted exactly") {
  // x⁵ + y⁵ splits into 5 distinct linear factors.
  HomogeneousPolynomial p(2, 5);
  p.set_coefficient(occ({5, 0}), Complex(1, 0));
  p.set_coefficient(occ({0, 5}), Complex(1, 0));
  const auto result = classify(p);
  CHECK(result.signature.to_string() == "[1^5]_2");
  CHECK(result.residual < 1e-10);

  HomogeneousPolynomial rebuilt =
      HomogeneousPolynomial::constant(2, Complex(1, 0));
  for (const auto& factor : result.factors) rebuilt = multiply(rebuilt, factor);
  CHECK(proportional_to(rebuilt, p, 1e-8));
}

TEST_CASE("zero polynomial is rejected") {
  CHECK_THROWS_AS(classify(HomogeneousPolynomial(3, 2)), std::invalid_argument);
}

TEST_CASE("coarsest partition always fits") {
  Rng rng(139);
  const HomogeneousPolynomial p = test::random_polynomial(3, 3, rng);
  std::vector<int> coarsest = {0, 0, 1};
  const auto result = try_factor_partition(p, coarsest, 4, 1);
  REQUIRE(result.has_value());
  CHECK(result->residual < 1e-12);
}

}  // namespace
}  // namespace fockforge
