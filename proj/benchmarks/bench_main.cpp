// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <complex>
#include <cstdint>
#include <vector>

#include "fockforge/capacity.hpp"
#include "fockforge/circuit.hpp"
#include "fockforge/classifier.hpp"
#include "fockforge/fock.hpp"
#include "fockforge/optimizer.hpp"
#include "fockforge/permanent.hpp"
#include "fockforge/polynomial.hpp"
#include "fockforge/rng.hpp"
#include "fockforge/types.hpp"

namespace fockforge {
namespace {

ComplexMatrix random_matrix(int n, std::uint64_t seed) {
  Rng rng(seed);
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = rng.normal_complex();
  return m;
}

void BM_PermanentRyser(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix a = random_matrix(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(permanent_ryser(a));
}
BENCHMARK(BM_PermanentRyser)->Arg(5)->Arg(10)->Arg(15)->Arg(20);

void BM_PermanentNaive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix a = random_matrix(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(permanent_naive(a));
}
BENCHMARK(BM_PermanentNaive)->Arg(5)->Arg(7)->Arg(9);

void BM_ApplyUnitaryFock(benchmark::State& state) {
  const int photons = static_cast<int>(state.range(0));
  const int modes = 4;
  Rng rng(2);
  FockState psi(modes, photons);
  for (const auto& occ : enumerate_basis(photons, modes))
    psi.set_amplitude(occ, rng.normal_complex());
  const ComplexMatrix u = haar_random_unitary(modes, rng);
  for (auto _ : state) benchmark::DoNotOptimize(apply_unitary_fock(psi, u));
}
BENCHMARK(BM_ApplyUnitaryFock)->Arg(3)->Arg(5);

void BM_NoonProgram(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CircuitProgram prog = noon_program(n);
  for (auto _ : state) benchmark::DoNotOptimize(run_program(prog));
}
BENCHMARK(BM_NoonProgram)->Arg(3)->Arg(6);

void BM_TermsumToFock(benchmark::State& state) {
  const int photons = static_cast<int>(state.range(0));
  Rng rng(3);
  TermSum sum = TermSum::vacuum(4);
  for (int i = 0; i < photons; ++i) sum = add_photon(sum, i % 4);
  sum = apply_unitary(sum, haar_random_unitary(4, rng));
  const HeraldedTermSum h = subtract_photon(sum, 0);
  for (auto _ : state) benchmark::DoNotOptimize(termsum_to_fock(h.sum));
}
BENCHMARK(BM_TermsumToFock)->Arg(4)->Arg(6);

void BM_ClassifyAntisymmetric(benchmark::State& state) {
  HomogeneousPolynomial p(3, 3);
  p.set_coefficient({2, 1, 0}, Complex(1, 0));
  p.set_coefficient({0, 2, 1}, Complex(1, 0));
  p.set_coefficient({1, 0, 2}, Complex(1, 0));
  p.set_coefficient({1, 2, 0}, Complex(-1, 0));
  p.set_coefficient({0, 1, 2}, Complex(-1, 0));
  p.set_coefficient({2, 0, 1}, Complex(-1, 0));
  for (auto _ : state) benchmark::DoNotOptimize(classify(p, 32, 7));
}
BENCHMARK(BM_ClassifyAntisymmetric);

void BM_ClassifyQuarticSplit(benchmark::State& state) {
  // Two random quadratics: the hardest shape for the alternating fit.
  Rng rng(5);
  HomogeneousPolynomial a(3, 2), b(3, 2);
  for (const auto& e : enumerate_basis(2, 3)) {
    a.set_coefficient(e, rng.normal_complex());
    b.set_coefficient(e, rng.normal_complex());
  }
  const HomogeneousPolynomial p = multiply(a, b);
  for (auto _ : state) benchmark::DoNotOptimize(classify(p, 32, 7));
}
BENCHMARK(BM_ClassifyQuarticSplit);

void BM_LossGradient(benchmark::State& state) {
  OptimizationTask task;
  FockState target(3, 3);
  target.set_amplitude({3, 0, 0}, Complex(1, 0));
  target.set_amplitude({0, 3, 0}, Complex(1, 0));
  target.set_amplitude({0, 0, 3}, Complex(1, 0));
  task.target = target.normalized();
  task.scheme = state.range(0) == 0 ? Scheme::Subtraction : Scheme::Projection;
  Rng rng(11);
  ParamVector params(static_cast<std::size_t>(param_count(task)));
  for (double& v : params) v = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(gradient(params, task));
}
BENCHMARK(BM_LossGradient)->Arg(0)->Arg(1);

void BM_OptimizeSmall(benchmark::State& state) {
  OptimizationTask task;
  FockState target(2, 2);
  target.set_amplitude({2, 0}, Complex(1, 0));
  target.set_amplitude({0, 2}, Complex(1, 0));
  task.target = target.normalized();
  task.scheme = Scheme::Subtraction;
  task.restarts = 8;
  task.steps = 200;
  task.seed = 1;
  task.stop_fidelity = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(optimize(task));
}
BENCHMARK(BM_OptimizeSmall);

void BM_CapacityTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(capacity_table(2, 7, 2, 12));
}
BENCHMARK(BM_CapacityTable);

}  // namespace
}  // namespace fockforge

BENCHMARK_MAIN();
