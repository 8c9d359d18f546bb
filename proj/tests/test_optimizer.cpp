// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/optimizer.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "fockforge/circuit.hpp"
#include "fockforge/fock.hpp"
#include "fockforge/rng.hpp"
#include "test_util.hpp"

namespace fockforge {
namespace {

using test::occ;

OptimizationTask small_task(Scheme scheme, FockState target) {
  OptimizationTask task;
  task.target = std::move(target);
  task.scheme = scheme;
  task.restarts = 24;
  task.steps = 400;
  task.seed = 7;
  return task;
}

ParamVector random_params(const OptimizationTask& task, std::uint64_t seed) {
  Rng rng(seed);
  ParamVector params(static_cast<std::size_t>(param_count(task)));
  for (double& v : params) v = rng.normal();
  return params;
}

double fd_gradient(const ParamVector& params, const OptimizationTask& task,
                   std::size_t index, double h) {
  ParamVector plus = params, minus = params;
  plus[index] += h;
  minus[index] -= h;
  return (loss(plus, task) - loss(minus, task)) / (2.0 * h);
}

TEST_CASE("param_count by scheme") {
  OptimizationTask task;
  task.target = FockState::basis_state(occ({1, 1, 0}));  // N=2, M=3
  task.scheme = Scheme::Subtraction;
  CHECK(param_count(task) == 2 * 3 * 3);  // (N+1)×M complex
  task.scheme = Scheme::Projection;
  CHECK(param_count(task) == 2 * 3 * 4);  // (N+1)×(M+1) complex
  task.scheme = Scheme::Program;
  task.subtract_layers = 2;
  CHECK(param_count(task) == 2 * 4 * 3 + 2 * 2 * 3 * 3);
}

TEST_CASE("loss at exact parameters is zero") {
  // Target |1,1⟩ via subtraction: Γ = rows {e1+e2 photon pair} … easiest is
  // Γ encoding (x+y)·x·y; ∂x at those rows is checked against the simulator
  // instead of hand algebra: any params with simulated fidelity 1 must have
  // loss 0.
  OptimizationTask task = small_task(
      Scheme::Subtraction,
      test::uniform_superposition(2, {occ({2, 0}), occ({0, 2})}));
  const OptimizationReport report = optimize(task);
  REQUIRE(report.best_fidelity > 1.0 - 1e-9);
  CHECK(loss(report.best_params, task) < 1e-9);

  // Perturbing any coordinate away from the optimum cannot lower the loss
  // below zero.
  CHECK(loss(report.best_params, task) >= 0.0);
}

TEST_CASE("loss is exactly one for outputs orthogonal to the target") {
  OptimizationTask task;
  task.target = FockState::basis_state(occ({0, 2}));
  task.scheme = Scheme::Subtraction;
  // Rows all e₀: after subtracting mode 0 the state is |2,0⟩ ⊥ |0,2⟩.
  ParamVector params(static_cast<std::size_t>(param_count(task)), 0.0);
  for (int row = 0; row < 3; ++row) params[static_cast<std::size_t>(row) * 4] = 1.0;
  CHECK(loss(params, task) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("heralding failure is the loss-one plateau with zero gradient") {
  OptimizationTask task;
  task.target = FockState::basis_state(occ({0, 2}));
  task.scheme = Scheme::Subtraction;
  // Rows all e₁: no photon ever enters mode 0, subtraction heralds zero.
  ParamVector params(static_cast<std::size_t>(param_count(task)), 0.0);
  for (int row = 0; row < 3; ++row)
    params[static_cast<std::size_t>(row) * 4 + 2] = 1.0;
  CHECK(loss(params, task) == 1.0);
  for (double g : gradient(params, task)) CHECK(g == 0.0);
}

TEST_CASE("analytic gradient matches finite differences") {
  const FockState targets[] = {
      test::uniform_superposition(2, {occ({2, 0}), occ({0, 2})}),
      FockState::basis_state(occ({1, 1, 0})),
      test::uniform_superposition(3, {occ({2, 0, 0}), occ({0, 2, 0}),
                                      occ({0, 0, 2})}),
  };
  for (int trial = 0; trial < 30; ++trial) {
    OptimizationTask task;
    task.target = targets[trial % 3];
    const int pick = trial % 3;
    task.scheme = pick == 0   ? Scheme::Subtraction
                  : pick == 1 ? Scheme::Projection
                              : Scheme::Program;
    task.subtract_layers = pick == 2 ? 2 : 1;
    const ParamVector params =
        random_params(task, 900 + static_cast<std::uint64_t>(trial));
    if (loss(params, task) >= 1.0) continue;
    const ParamVector grad = gradient(params, task);
    double worst = 0.0;
    for (std::size_t i = 0; i < grad.size(); i += 3) {
      const double fd = fd_gradient(params, task, i, 1e-5);
      const double scale = std::max({1e-6, std::abs(fd), std::abs(grad[i])});
      worst = std::max(worst, std::abs(grad[i] - fd) / scale);
    }
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("gradient norm is tiny at a converged optimum") {
  OptimizationTask task = small_task(
      Scheme::Subtraction,
      test::uniform_superposition(2, {occ({2, 0}), occ({0, 2})}));
  task.steps = 2000;
  const OptimizationReport report = optimize(task);
  REQUIRE(report.best_fidelity > 1.0 - 1e-10);
  const ParamVector grad = gradient(report.best_params, task);
  double norm_sq = 0.0;
  for (double g : grad) norm_sq += g * g;
  CHECK(std::sqrt(norm_sq) < 1e-6);
}

TEST_CASE("loss equals one minus the re-simulated fidelity") {
  for (int trial = 0; trial < 20; ++trial) {
    OptimizationTask task;
    task.target = test::uniform_superposition(3, {occ({1, 1, 0}), occ({0, 1, 1})});
    task.scheme = trial % 2 == 0 ? Scheme::Subtraction : Scheme::Projection;
    const ParamVector params =
        random_params(task, 300 + static_cast<std::uint64_t>(trial));
    const SimulationResult sim = simulate_params(params, task);
    if (sim.zero) {
      CHECK(loss(params, task) == 1.0);
    } else {
      CHECK(std::abs((1.0 - sim.fidelity) - loss(params, task)) < 1e-11);
    }
  }
}

TEST_CASE("program scheme with zero layers prepares product states exactly") {
  OptimizationTask task;
  Occupation left(2, 0), right(2, 0);
  left[0] = 2;
  right[1] = 2;
  // (x+iy)(x−iy) = x²+y² encodes (|2,0⟩+|0,2⟩)/√2 after normalization —
  // reachable by a bare product, so K = 0 must hit fidelity 1.
  task.target = test::uniform_superposition(2, {left, right});
  task.scheme = Scheme::Program;
  task.subtract_layers = 0;
  task.restarts = 16;
  task.steps = 400;
  task.seed = 3;
  const OptimizationReport report = optimize_program(task);
  CHECK(report.best_fidelity > 1.0 - 1e-9);
}

TEST_CASE("more restarts never lose to fewer with the same seed") {
  OptimizationTask task;
  task.target = test::uniform_superposition(3, {occ({0, 1, 2}), occ({1, 2, 0}),
                                                occ({2, 0, 1})});
  task.scheme = Scheme::Subtraction;
  task.steps = 150;
  task.seed = 12;
  task.stop_fidelity = 2.0;  // disable early stop so all restarts execute
  task.restarts = 8;
  const double few = optimize(task).best_fidelity;
  task.restarts = 24;
  const double many = optimize(task).best_fidelity;
  CHECK(many >= few - 1e-12);
}

TEST_CASE("optimization is deterministic for a fixed seed") {
  OptimizationTask task = small_task(
      Scheme::Projection,
      test::uniform_superposition(2, {occ({2, 0}), occ({0, 2})}));
  task.restarts = 8;
  task.steps = 120;
  task.stop_fidelity = 2.0;
  const OptimizationReport a = optimize(task);
  const OptimizationReport b = optimize(task);
  CHECK(a.best_fidelity == b.best_fidelity);
  CHECK(a.best_params == b.best_params);
  CHECK(a.restart_fidelities == b.restart_fidelities);

  task.threads = 2;
  const OptimizationReport c = optimize(task);
  CHECK(c.best_fidelity == a.best_fidelity);
  CHECK(c.best_params == a.best_params);
}

TEST_CASE("scheme dispatch is enforced") {
  OptimizationTask task;
  task.target = FockState::basis_state(occ({1, 1}));
  task.scheme = Scheme::Program;
  CHECK_THROWS_AS(optimize(task), std::invalid_argument);
  task.scheme = Scheme::Subtraction;
  CHECK_THROWS_AS(optimize_program(task), std::invalid_argument);
}

TEST_CASE("simulate_params reproduces the reported best fidelity") {
  OptimizationTask task = small_task(
      Scheme::Projection,
      test::uniform_superposition(3, {occ({1, 1, 0}), occ({0, 1, 1})}));
  task.restarts = 12;
  task.steps = 300;
  const OptimizationReport report = optimize(task);
  const SimulationResult sim = simulate_params(report.best_params, task);
  CHECK(std::abs(sim.fidelity - report.best_fidelity) < 1e-12);
  CHECK(sim.weight == doctest::Approx(report.herald_weight));
}

}  // namespace
}  // namespace fockforge
