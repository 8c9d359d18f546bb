// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/circuit.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "circuit_oracle.hpp"
#include "fockforge/classifier.hpp"
#include "fockforge/fock.hpp"
#include "fockforge/rng.hpp"
#include "test_util.hpp"

namespace fockforge {
namespace {

using test::FockOracle;
using test::occ;

TEST_CASE("term-sum evolution matches the dense Fock oracle") {
  Rng rng(20260801);
  int agreements = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int photons = 0;
    const CircuitProgram prog = test::random_program(rng, 5, 4, 2, &photons);
    const RunResult got = run_program(prog);
    FockOracle oracle(prog.modes);
    for (const auto& op : prog.ops) oracle.apply(op);
    REQUIRE(got.zero == oracle.zero);
    if (got.zero) continue;
    const FockState dense = termsum_to_fock(got.state);
    double dev = 0.0;
    for (const auto& o : enumerate_basis(oracle.state.photons(),
                                         oracle.state.modes()))
      dev = std::max(dev, std::abs(dense.amplitude(o) - oracle.state.amplitude(o)));
    CHECK(dev < 1e-9);
    CHECK(std::abs(termsum_norm_sq(got.state) - oracle.state.norm_sq()) < 1e-9);
    ++agreements;
  }
  CHECK(agreements > 60);
}

TEST_CASE("row order and row rescaling leave the encoded state fixed") {
  Rng rng(101);
  GammaMultiset g = test::random_complex_matrix(3, 3, rng);
  TermSum a = TermSum::single_term(Complex(1.0, 0.0), g);

  GammaMultiset shuffled(3, 3);
  shuffled.row(0) = g.row(1);
  shuffled.row(1) = g.row(2);
  shuffled.row(2) = g.row(0);
  TermSum b = TermSum::single_term(Complex(1.0, 0.0), shuffled);

  const Complex scale(0.4, 1.1);
  GammaMultiset rescaled = g;
  rescaled.row(1) *= scale;
  TermSum c = TermSum::single_term(Complex(1.0, 0.0) / scale, rescaled);

  const FockState fa = termsum_to_fock(a);
  for (const TermSum* other : {&b, &c}) {
    const FockState fo = termsum_to_fock(*other);
    double dev = 0.0;
    for (const auto& o : enumerate_basis(3, 3))
      dev = std::max(dev, std::abs(fa.amplitude(o) - fo.amplitude(o)));
    CHECK(dev < 1e-12);
  }
}

TEST_CASE("canonicalize merges equal multisets") {
  Rng rng(103);
  GammaMultiset g = test::random_complex_matrix(2, 2, rng);
  TermSum s(2, 2);
  s.append({Complex(0.25, 0.0), g});
  GammaMultiset swapped(2, 2);
  swapped.row(0) = g.row(1);
  swapped.row(1) = g.row(0);
  s.append({Complex(0.75, 0.0), swapped});
  const FockState before = termsum_to_fock(s);
  s.canonicalize();
  CHECK(s.term_list().size() == 1);
  const FockState after = termsum_to_fock(s);
  double dev = 0.0;
  for (const auto& o : enumerate_basis(2, 2))
    dev = std::max(dev, std::abs(before.amplitude(o) - after.amplitude(o)));
  CHECK(dev < 1e-12);
}

TEST_CASE("apply_unitary preserves pairwise row inner products") {
  Rng rng(107);
  GammaMultiset g = test::random_complex_matrix(4, 3, rng);
  const ComplexMatrix u = haar_random_unitary(3, rng);
  const TermSum evolved =
      apply_unitary(TermSum::single_term(Complex(1, 0), g), u);
  REQUIRE(evolved.term_list().size() == 1);
  const GammaMultiset& h = evolved.term_list().front().rows;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs((g.row(i).conjugate() * g.row(j).transpose()).value() -
                     (h.row(i).conjugate() * h.row(j).transpose()).value()) <
            1e-12);
}

TEST_CASE("subtraction grows the term count at most N-fold") {
  Rng rng(109);
  for (int trial = 0; trial < 10; ++trial) {
    const int photons = rng.uniform_int(2, 5);
    GammaMultiset g = test::random_complex_matrix(photons, 3, rng);
    TermSum s = TermSum::single_term(Complex(1, 0), g);
    std::size_t bound = 1;
    int remaining = photons;
    for (int k = 0; k < 2 && remaining > 0; ++k) {
      const HeraldedTermSum h = subtract_photon(s, 0);
      if (h.zero) break;
      bound *= static_cast<std::size_t>(remaining);
      --remaining;
      s = h.sum;
      CHECK(s.term_list().size() <= bound);
    }
  }
}

TEST_CASE("additions and unitaries alone keep a single term") {
  Rng rng(113);
  TermSum s = TermSum::vacuum(3);
  for (int i = 0; i < 4; ++i) {
    s = add_photon(s, rng.uniform_int(0, 2));
    s = apply_unitary(s, haar_random_unitary(3, rng));
    CHECK(s.term_list().size() == 1);
  }
  CHECK(s.photons() == 4);
}

TEST_CASE("projection removes a mode; failed heralding is flagged") {
  TermSum s = add_photon(add_photon(TermSum::vacuum(2), 0), 0);
  const HeraldedTermSum h = project_photon(s, 1);
  CHECK(h.zero);
  CHECK(h.weight == doctest::Approx(0.0));

  TermSum t = add_photon(add_photon(TermSum::vacuum(2), 0), 1);
  const HeraldedTermSum k = project_photon(t, 1);
  REQUIRE(!k.zero);
  CHECK(k.sum.modes() == 1);
  CHECK(k.sum.photons() == 1);
  const FockState dense = termsum_to_fock(k.sum);
  CHECK(std::abs(dense.amplitude(occ({1})) - Complex(1, 0)) < 1e-12);
}

TEST_CASE("run_program reports per-herald weights and rethrows with index") {
  CircuitProgram prog;
  prog.modes = 2;
  prog.ops = {Instruction::add(0), Instruction::add(0), Instruction::subtract(0)};
  const RunResult r = run_program(prog);
  REQUIRE(!r.zero);
  REQUIRE(r.herald_weights.size() == 1);
  // â on √2|2,0⟩ leaves 2|1,0⟩: weight 4/2 = 2.
  CHECK(r.herald_weights[0] == doctest::Approx(2.0));
  CHECK(r.weight == doctest::Approx(4.0));

  CircuitProgram bad = prog;
  bad.ops.push_back(Instruction::unitary(ComplexMatrix::Identity(3, 3)));
  CHECK_THROWS_WITH_AS(run_program(bad),
                       doctest::Contains("instruction 3"),
                       std::runtime_error);
}

TEST_CASE("noon_program produces the NOON state for N = 2..6") {
  for (int n = 2; n <= 6; ++n) {
    const CircuitProgram prog = noon_program(n);
    CHECK(static_cast<int>(prog.ops.size()) == 2 * n + 1);
    const RunResult r = run_program(prog);
    REQUIRE(!r.zero);
    const FockState got = termsum_to_fock(r.state);
    Occupation left(2, 0), right(2, 0);
    left[0] = n;
    right[1] = n;
    const FockState target = test::uniform_superposition(2, {left, right});
    CHECK(fidelity(got, target) >= 1.0 - 1e-9);
  }
}

}  // namespace
}  // namespace fockforge
