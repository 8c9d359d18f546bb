// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "fockforge/circuit.hpp"
#include "fockforge/fock.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

enum class Scheme { Subtraction, Projection, Program };

// Fidelity-maximization task: prepare `target` (N photons, M modes) by a
// product state of one extra photon followed by the scheme's conditional
// operation, or — for Scheme::Program — by K subtraction layers each
// followed by a free unitary.
struct OptimizationTask {
  FockState target{1, 1};
  Scheme scheme = Scheme::Subtraction;
  int subtract_layers = 1;  // K; Program scheme only
  int restarts = 200;
  int steps = 2000;
  double learning_rate = 0.05;
  std::uint64_t seed = 0;
  double stop_fidelity = 1.0 - 1e-12;  // skip remaining restarts beyond this
  int threads = 0;
};

// Flat real parameters: Γ entries row-major as (re, im) pairs; for the
// Program scheme, followed by the K unconstrained matrices W_m (row-major
// (re, im) pairs) that map to unitaries via the Cayley transform
// V = (I−A)⁻¹(I+A), A = (W−W†)/2.
using ParamVector = std::vector<double>;

int param_count(const OptimizationTask& task);

// 1 − F after the scheme's conditional operation; heralding failure
// (squared norm < 1e-12) returns exactly 1.
double loss(const ParamVector& params, const OptimizationTask& task);

// d(loss)/d(params), analytic reverse mode; zero on the heralding-failure
// plateau by convention.
ParamVector gradient(const ParamVector& params, const OptimizationTask& task);

// Re-simulation of a parameter vector through the circuit module.
struct SimulationResult {
  FockState state{1, 0};  // normalized output; zero state on failed heralding
  double weight = 0.0;    // overall heralding weight
  double fidelity = 0.0;
  bool zero = true;
  GammaMultiset gamma;
  std::vector<ComplexMatrix> unitaries;  // Program scheme layers
};
SimulationResult simulate_params(const ParamVector& params,
                                 const OptimizationTask& task);

struct OptimizationReport {
  double best_fidelity = 0.0;  // recomputed through the circuit module
  ParamVector best_params;
  std::vector<double> restart_fidelities;  // per executed restart
  double herald_weight = 0.0;
  std::uint64_t seed = 0;
  int iterations = 0;  // total descent steps executed
  GammaMultiset best_gamma;
  std::vector<ComplexMatrix> best_unitaries;
};

// Adam descents from `restarts` random complex-Gaussian starts; best result
// wins (ties to the lower restart index).  Deterministic per seed, and the
// per-restart stream split keeps results independent of thread scheduling.
OptimizationReport optimize(const OptimizationTask& task);

// Scheme::Program variant (free Γ jointly with the per-layer unitaries).
OptimizationReport optimize_program(const OptimizationTask& task);

}  // namespace fockforge
