// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "fockforge/combinatorics.hpp"
#include "fockforge/parallel.hpp"
#include "fockforge/rng.hpp"

namespace fockforge {

namespace {

constexpr double kHeraldFloor = 1e-12;  // squared norm below this: loss 1, grad 0
constexpr double kConvergedLoss = 1e-13;
constexpr int kStopCheckChunk = 8;  // restarts between early-stop checks

struct Shape {
  int target_photons = 0;  // N
  int target_modes = 0;    // M
  int vars = 0;            // C: M, or M+1 for projection
  int rows = 0;            // R: photons before the conditional ops
  int derivs = 0;          // derivative operators applied
  int unitaries = 0;       // free unitaries (Program scheme)
  int gamma_params = 0;
  int total_params = 0;
};

Shape make_shape(const OptimizationTask& task) {
  Shape s;
  s.target_photons = task.target.photons();
  s.target_modes = task.target.modes();
  if (s.target_photons < 1) {
    throw std::invalid_argument("optimizer: target needs at least one photon");
  }
  switch (task.scheme) {
    case Scheme::Subtraction:
      s.vars = s.target_modes;
      s.rows = s.target_photons + 1;
      s.derivs = 1;
      s.unitaries = 0;
      break;
    case Scheme::Projection:
      s.vars = s.target_modes + 1;
      s.rows = s.target_photons + 1;
      s.derivs = 1;
      s.unitaries = 0;
      break;
    case Scheme::Program:
      if (task.subtract_layers < 0) {
        throw std::invalid_argument("optimizer: negative layer count");
      }
      s.vars = s.target_modes;
      s.rows = s.target_photons + task.subtract_layers;
      s.derivs = task.subtract_layers;
      s.unitaries = task.subtract_layers;
      break;
  }
  s.gamma_params = 2 * s.rows * s.vars;
  s.total_params = s.gamma_params + 2 * s.unitaries * s.vars * s.vars;
  return s;
}

struct Level {
  std::vector<Occupation> basis;
  std::vector<int> lift;  // [i·vars + j] → index of basis[i]+e_j one level up
};

struct Workspace {
  Shape shape;
  std::vector<Level> levels;  // degree 0..rows
  std::vector<int> mask;      // loss-carrying indices at degree rows−derivs
  std::vector<double> w;      // √(s!) per mask entry
  std::vector<Complex> tbar;  // conj target amplitude per mask entry
};

Workspace build_workspace(const OptimizationTask& task) {
  Workspace ws;
  ws.shape = make_shape(task);
  const int vars = ws.shape.vars;
  ws.levels.resize(ws.shape.rows + 1);
  for (int d = 0; d <= ws.shape.rows; ++d) {
    ws.levels[d].basis = enumerate_basis(d, vars);
  }
  for (int d = 0; d < ws.shape.rows; ++d) {
    std::map<Occupation, int> upper;
    for (int i = 0; i < static_cast<int>(ws.levels[d + 1].basis.size()); ++i) {
      upper[ws.levels[d + 1].basis[i]] = i;
    }
    Level& level = ws.levels[d];
    level.lift.resize(level.basis.size() * vars);
    Occupation occ(vars, 0);
    for (int i = 0; i < static_cast<int>(level.basis.size()); ++i) {
      occ = level.basis[i];
      for (int j = 0; j < vars; ++j) {
        occ[j] += 1;
        level.lift[i * vars + j] = upper.at(occ);
        occ[j] -= 1;
      }
    }
  }
  const FockState target = task.target.normalized();
  const bool project = task.scheme == Scheme::Projection;
  const int out_degree = ws.shape.rows - ws.shape.derivs;
  const Level& out = ws.levels[out_degree];
  for (int i = 0; i < static_cast<int>(out.basis.size()); ++i) {
    const Occupation& occ = out.basis[i];
    if (project && occ[vars - 1] != 0) continue;
    ws.mask.push_back(i);
    ws.w.push_back(std::sqrt(occupancy_factorial(occ)));
    Occupation state_occ = occ;
    if (project) state_occ.pop_back();
    ws.tbar.push_back(std::conj(target.amplitude(state_occ)));
  }
  return ws;
}

struct Scratch {
  std::vector<std::vector<Complex>> fold;      // prefixes of the row fold
  std::vector<std::vector<Complex>> deriv;     // after each derivative op
  std::vector<std::vector<Complex>> fold_adj;
  std::vector<std::vector<Complex>> deriv_adj;

  void prepare(const Workspace& ws) {
    const int rows = ws.shape.rows;
    const int derivs = ws.shape.derivs;
    fold.resize(rows + 1);
    fold_adj.resize(rows + 1);
    for (int d = 0; d <= rows; ++d) {
      fold[d].assign(ws.levels[d].basis.size(), Complex(0.0, 0.0));
      fold_adj[d].assign(ws.levels[d].basis.size(), Complex(0.0, 0.0));
    }
    deriv.resize(derivs + 1);
    deriv_adj.resize(derivs + 1);
    for (int m = 0; m <= derivs; ++m) {
      const int d = rows - m;
      deriv[m].assign(ws.levels[d].basis.size(), Complex(0.0, 0.0));
      deriv_adj[m].assign(ws.levels[d].basis.size(), Complex(0.0, 0.0));
    }
  }
};

GammaMultiset decode_gamma(const ParamVector& params, const Shape& shape) {
  GammaMultiset gamma(shape.rows, shape.vars);
  for (int i = 0; i < shape.rows; ++i) {
    for (int j = 0; j < shape.vars; ++j) {
      const int k = 2 * (i * shape.vars + j);
      gamma(i, j) = Complex(params[k], params[k + 1]);
    }
  }
  return gamma;
}

std::vector<ComplexMatrix> decode_raw_unitaries(const ParamVector& params,
                                                const Shape& shape) {
  std::vector<ComplexMatrix> raw;
  raw.reserve(shape.unitaries);
  const int m = shape.vars;
  for (int u = 0; u < shape.unitaries; ++u) {
    ComplexMatrix wm(m, m);
    const int base = shape.gamma_params + 2 * u * m * m;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const int k = base + 2 * (i * m + j);
        wm(i, j) = Complex(params[k], params[k + 1]);
      }
    }
    raw.push_back(std::move(wm));
  }
  return raw;
}

// V = (I−A)⁻¹(I+A) with A = (W−W†)/2; also returns B = (I−A)⁻¹ for the
// reverse pass.
ComplexMatrix cayley_unitary(const ComplexMatrix& wm, ComplexMatrix* b_out) {
  const int m = static_cast<int>(wm.rows());
  const ComplexMatrix a = (wm - wm.adjoint()) / 2.0;
  const ComplexMatrix eye = ComplexMatrix::Identity(m, m);
  const ComplexMatrix b = (eye - a).partialPivLu().solve(eye);
  if (b_out) *b_out = b;
  return b * (eye + a);
}

void pack_gradient(const ComplexMatrix& cotangent, int base, ParamVector& grad) {
  for (int i = 0; i < cotangent.rows(); ++i) {
    for (int j = 0; j < cotangent.cols(); ++j) {
      const int k = base + 2 * (static_cast<int>(i * cotangent.cols()) + j);
      grad[k] = 2.0 * cotangent(i, j).real();
      grad[k + 1] = -2.0 * cotangent(i, j).imag();
    }
  }
}

// Loss (and, when grad != nullptr, its analytic gradient) of one parameter
// vector.  The forward pass folds the transformed rows into a dense
// coefficient pyramid and then applies the derivative operators that
// realize subtraction/projection; the reverse pass walks it backwards.
double evaluate(const ParamVector& params, const OptimizationTask& task,
                const Workspace& ws, Scratch& scratch, ParamVector* grad) {
  const Shape& shape = ws.shape;
  if (static_cast<int>(params.size()) != shape.total_params) {
    throw std::invalid_argument("optimizer: parameter vector has wrong size");
  }
  if (grad) grad->assign(shape.total_params, 0.0);
  scratch.prepare(ws);
  const int vars = shape.vars;
  const int rows = shape.rows;
  const int derivs = shape.derivs;
  const bool program = task.scheme == Scheme::Program;

  const GammaMultiset gamma = decode_gamma(params, shape);
  std::vector<ComplexMatrix> raw;       // W_m parameters
  std::vector<ComplexMatrix> vs;        // Cayley unitaries V_m
  std::vector<ComplexMatrix> bs;        // (I−A_m)⁻¹
  std::vector<ComplexMatrix> suffix;    // Q_m = V_m···V_K, Q_{K+1} = I
  GammaMultiset rows_eff = gamma;       // Γ̃ = Γ·Q_1
  std::vector<ComplexVector> dirs(derivs);  // derivative directions
  if (program) {
    raw = decode_raw_unitaries(params, shape);
    const int k = shape.unitaries;
    vs.resize(k);
    bs.resize(k);
    suffix.assign(k + 1, ComplexMatrix::Identity(vars, vars));
    for (int m = k - 1; m >= 0; --m) {
      vs[m] = cayley_unitary(raw[m], &bs[m]);
      suffix[m] = vs[m] * suffix[m + 1];
    }
    if (k > 0) rows_eff = gamma * suffix[0];
    for (int m = 0; m < k; ++m) {
      // Direction for the m-th subtraction: (V_m···V_K)† e₁, i.e. the
      // conjugated first row of the suffix product.
      dirs[m] = suffix[m].row(0).conjugate().transpose();
    }
  } else {
    for (int m = 0; m < derivs; ++m) {
      ComplexVector e = ComplexVector::Zero(vars);
      e(task.scheme == Scheme::Projection ? vars - 1 : 0) = Complex(1.0, 0.0);
      dirs[m] = e;
    }
  }

  // Forward: fold rows.
  scratch.fold[0][0] = Complex(1.0, 0.0);
  for (int r = 0; r < rows; ++r) {
    const Level& level = ws.levels[r];
    auto& lower = scratch.fold[r];
    auto& upper = scratch.fold[r + 1];
    std::fill(upper.begin(), upper.end(), Complex(0.0, 0.0));
    for (int i = 0; i < static_cast<int>(level.basis.size()); ++i) {
      const Complex base = lower[i];
      if (base == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < vars; ++j) {
        upper[level.lift[i * vars + j]] += base * rows_eff(r, j);
      }
    }
  }
  // Forward: derivative operators.
  scratch.deriv[0] = scratch.fold[rows];
  for (int m = 1; m <= derivs; ++m) {
    const int d = rows - m;  // output degree
    const Level& level = ws.levels[d];
    const auto& src = scratch.deriv[m - 1];
    auto& dst = scratch.deriv[m];
    std::fill(dst.begin(), dst.end(), Complex(0.0, 0.0));
    const ComplexVector& u = dirs[m - 1];
    for (int i = 0; i < static_cast<int>(level.basis.size()); ++i) {
      Complex acc(0.0, 0.0);
      for (int j = 0; j < vars; ++j) {
        acc += u(j) * static_cast<double>(level.basis[i][j] + 1) *
               src[level.lift[i * vars + j]];
      }
      dst[i] = acc;
    }
  }

  const auto& q = scratch.deriv[derivs];
  double nrm = 0.0;
  Complex z(0.0, 0.0);
  for (std::size_t k = 0; k < ws.mask.size(); ++k) {
    const Complex qa = q[ws.mask[k]];
    nrm += ws.w[k] * ws.w[k] * std::norm(qa);
    z += ws.tbar[k] * ws.w[k] * qa;
  }
  if (nrm < kHeraldFloor) return 1.0;  // failed heralding: flat plateau
  const double fid = std::norm(z) / nrm;
  const double loss_value = 1.0 - fid;
  if (!grad) return loss_value;

  // Loss cotangent at the output coefficients: dL = 2·Re Σ ĝ_S·dq_S.
  auto& q_adj = scratch.deriv_adj[derivs];
  for (std::size_t k = 0; k < ws.mask.size(); ++k) {
    const Complex qa = q[ws.mask[k]];
    q_adj[ws.mask[k]] = -std::conj(z) * ws.w[k] * ws.tbar[k] / nrm +
                        (fid / nrm) * ws.w[k] * ws.w[k] * std::conj(qa);
  }
  // Reverse: derivative operators.
  std::vector<ComplexVector> dir_adj(derivs, ComplexVector::Zero(vars));
  for (int m = derivs; m >= 1; --m) {
    const int d = rows - m;
    const Level& level = ws.levels[d];
    const auto& src_adj = scratch.deriv_adj[m];
    auto& dst_adj = scratch.deriv_adj[m - 1];
    const auto& src = scratch.deriv[m - 1];
    const ComplexVector& u = dirs[m - 1];
    ComplexVector& u_adj = dir_adj[m - 1];
    std::fill(dst_adj.begin(), dst_adj.end(), Complex(0.0, 0.0));
    for (int i = 0; i < static_cast<int>(level.basis.size()); ++i) {
      const Complex a = src_adj[i];
      if (a == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < vars; ++j) {
        const double count = static_cast<double>(level.basis[i][j] + 1);
        const int up = level.lift[i * vars + j];
        dst_adj[up] += u(j) * count * a;
        u_adj(j) += count * src[up] * a;
      }
    }
  }
  // Reverse: row fold.
  scratch.fold_adj[rows] = scratch.deriv_adj[0];
  GammaMultiset rows_adj(rows, vars);
  for (int r = rows; r >= 1; --r) {
    const Level& level = ws.levels[r - 1];
    const auto& upper_adj = scratch.fold_adj[r];
    auto& lower_adj = scratch.fold_adj[r - 1];
    const auto& lower = scratch.fold[r - 1];
    std::fill(lower_adj.begin(), lower_adj.end(), Complex(0.0, 0.0));
    for (int j = 0; j < vars; ++j) rows_adj(r - 1, j) = Complex(0.0, 0.0);
    for (int i = 0; i < static_cast<int>(level.basis.size()); ++i) {
      Complex acc(0.0, 0.0);
      for (int j = 0; j < vars; ++j) {
        const Complex ua = upper_adj[level.lift[i * vars + j]];
        acc += rows_eff(r - 1, j) * ua;
        rows_adj(r - 1, j) += lower[i] * ua;
      }
      lower_adj[i] = acc;
    }
  }

  if (!program || shape.unitaries == 0) {
    pack_gradient(rows_adj, 0, *grad);
    return loss_value;
  }

  // Γ̃ = Γ·Q_1.
  const int k = shape.unitaries;
  pack_gradient(rows_adj * suffix[0].transpose(), 0, *grad);
  std::vector<ComplexMatrix> q_adjm(k + 1,
                                    ComplexMatrix::Zero(vars, vars));
  q_adjm[0] = gamma.transpose() * rows_adj;
  for (int m = 0; m < k; ++m) {
    // ũ_m = conj(row 0 of Q_m): anti-holomorphic hop.
    for (int j = 0; j < vars; ++j) {
      q_adjm[m](0, j) += std::conj(dir_adj[m](j));
    }
    const ComplexMatrix v_adj = q_adjm[m] * suffix[m + 1].transpose();
    if (m + 1 < k) q_adjm[m + 1] += vs[m].transpose() * q_adjm[m];
    const ComplexMatrix eye = ComplexMatrix::Identity(vars, vars);
    const ComplexMatrix a_adj =
        bs[m].transpose() * v_adj * (vs[m] + eye).transpose();
    const ComplexMatrix w_adj = (a_adj - a_adj.adjoint()) / 2.0;
    pack_gradient(w_adj, shape.gamma_params + 2 * m * vars * vars, *grad);
  }
  return loss_value;
}

ParamVector random_params(const Shape& shape, Rng& rng) {
  ParamVector params(shape.total_params);
  for (int k = 0; k < shape.total_params; k += 2) {
    const Complex g = rng.normal_complex();
    params[k] = g.real();
    params[k + 1] = g.imag();
  }
  return params;
}

struct RestartOutcome {
  double fidelity = 0.0;
  double loss = 1.0;
  ParamVector params;
  int steps_run = 0;
};

RestartOutcome run_restart(const OptimizationTask& task, const Workspace& ws,
                           int restart_index) {
  Rng rng = Rng::stream(task.seed, static_cast<std::uint64_t>(restart_index));
  ParamVector params = random_params(ws.shape, rng);
  Scratch scratch;
  ParamVector grad;
  const int n = ws.shape.total_params;
  std::vector<double> m1(n, 0.0);
  std::vector<double> m2(n, 0.0);
  RestartOutcome out;
  out.params = params;
  double b1t = 1.0;
  double b2t = 1.0;
  for (int step = 0; step < task.steps; ++step) {
    const double l = evaluate(params, task, ws, scratch, &grad);
    if (l < out.loss) {
      out.loss = l;
      out.params = params;
    }
    ++out.steps_run;
    if (l < kConvergedLoss) break;
    const double lr = task.learning_rate * 0.5 *
                      (1.0 + std::cos(std::numbers::pi * step / task.steps));
    b1t *= 0.9;
    b2t *= 0.999;
    for (int i = 0; i < n; ++i) {
      m1[i] = 0.9 * m1[i] + 0.1 * grad[i];
      m2[i] = 0.999 * m2[i] + 0.001 * grad[i] * grad[i];
      const double mh = m1[i] / (1.0 - b1t);
      const double vh = m2[i] / (1.0 - b2t);
      params[i] -= lr * mh / (std::sqrt(vh) + 1e-8);
    }
  }
  const double l = evaluate(params, task, ws, scratch, nullptr);
  if (l < out.loss) {
    out.loss = l;
    out.params = params;
  }
  out.fidelity = 1.0 - out.loss;
  return out;
}

OptimizationReport optimize_impl(const OptimizationTask& task) {
  if (task.restarts < 1) throw std::invalid_argument("optimizer: restarts >= 1");
  if (task.steps < 0) throw std::invalid_argument("optimizer: steps >= 0");
  const Workspace ws = build_workspace(task);
  std::vector<RestartOutcome> outcomes(task.restarts);
  int executed = 0;
  while (executed < task.restarts) {
    const int chunk = std::min(kStopCheckChunk, task.restarts - executed);
    const int base = executed;
    parallel_for(chunk, task.threads, [&](int i) {
      outcomes[base + i] = run_restart(task, ws, base + i);
    });
    executed += chunk;
    double best = 0.0;
    for (int i = 0; i < executed; ++i) best = std::max(best, outcomes[i].fidelity);
    if (best >= task.stop_fidelity) break;
  }
  int best_index = 0;
  for (int i = 1; i < executed; ++i) {
    if (outcomes[i].fidelity > outcomes[best_index].fidelity) best_index = i;
  }
  OptimizationReport report;
  report.seed = task.seed;
  report.best_params = outcomes[best_index].params;
  report.restart_fidelities.reserve(executed);
  for (int i = 0; i < executed; ++i) {
    report.restart_fidelities.push_back(outcomes[i].fidelity);
    report.iterations += outcomes[i].steps_run;
  }
  const SimulationResult sim = simulate_params(report.best_params, task);
  report.best_fidelity = sim.fidelity;
  report.herald_weight = sim.weight;
  report.best_gamma = sim.gamma;
  report.best_unitaries = sim.unitaries;
  return report;
}

}  // namespace

int param_count(const OptimizationTask& task) {
  return make_shape(task).total_params;
}

double loss(const ParamVector& params, const OptimizationTask& task) {
  const Workspace ws = build_workspace(task);
  Scratch scratch;
  return evaluate(params, task, ws, scratch, nullptr);
}

ParamVector gradient(const ParamVector& params, const OptimizationTask& task) {
  const Workspace ws = build_workspace(task);
  Scratch scratch;
  ParamVector grad;
  evaluate(params, task, ws, scratch, &grad);
  return grad;
}

SimulationResult simulate_params(const ParamVector& params,
                                 const OptimizationTask& task) {
  const Shape shape = make_shape(task);
  SimulationResult result;
  result.gamma = decode_gamma(params, shape);
  TermSum state = TermSum::single_term(Complex(1.0, 0.0), result.gamma);
  result.weight = 1.0;
  bool zero = false;
  switch (task.scheme) {
    case Scheme::Subtraction: {
      HeraldedTermSum h = subtract_photon(state, 0);
      result.weight = h.weight;
      zero = h.zero;
      state = std::move(h.sum);
      break;
    }
    case Scheme::Projection: {
      HeraldedTermSum h = project_photon(state, shape.vars - 1);
      result.weight = h.weight;
      zero = h.zero;
      state = std::move(h.sum);
      break;
    }
    case Scheme::Program: {
      const std::vector<ComplexMatrix> raw = decode_raw_unitaries(params, shape);
      for (const ComplexMatrix& wm : raw) {
        result.unitaries.push_back(cayley_unitary(wm, nullptr));
      }
      for (int m = 0; m < shape.unitaries && !zero; ++m) {
        HeraldedTermSum h = subtract_photon(state, 0);
        result.weight *= h.weight;
        zero = h.zero;
        if (!zero) state = apply_unitary(h.sum, result.unitaries[m]);
      }
      break;
    }
  }
  if (zero) {
    result.state = FockState(task.target.modes(), task.target.photons());
    result.weight = 0.0;
    result.fidelity = 0.0;
    result.zero = true;
    return result;
  }
  const FockState dense = termsum_to_fock(state);
  if (dense.norm_sq() < kHeraldFloor) {
    result.state = FockState(task.target.modes(), task.target.photons());
    result.weight = 0.0;
    result.fidelity = 0.0;
    result.zero = true;
    return result;
  }
  result.state = dense.normalized();
  result.fidelity = fidelity(result.state, task.target);
  result.zero = false;
  return result;
}

OptimizationReport optimize(const OptimizationTask& task) {
  if (task.scheme == Scheme::Program) {
    throw std::invalid_argument("optimize: use optimize_program for Scheme::Program");
  }
  return optimize_impl(task);
}

OptimizationReport optimize_program(const OptimizationTask& task) {
  if (task.scheme != Scheme::Program) {
    throw std::invalid_argument("optimize_program: task scheme must be Program");
  }
  return optimize_impl(task);
}

}  // namespace fockforge
