// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fockforge/circuit.hpp"
#include "fockforge/classifier.hpp"
#include "fockforge/fock.hpp"
#include "fockforge/optimizer.hpp"
#include "fockforge/polynomial.hpp"
#include "fockforge/types.hpp"

namespace fockforge {

// All floating-point output is rounded to 12 significant digits before
// serialization so that reruns diff cleanly.
std::string format_float(double x);
double round_float(double x);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_digest(const std::string& bytes);

// {"modes":M,"photons":N,"amplitudes":[{"occ":[…],"re":…,"im":…},…]};
// amplitudes below 1e-15 in magnitude are omitted.  The reader rejects
// occupations that do not sum to the declared photon number.
std::string state_to_json(const FockState& s);
FockState state_from_json(const std::string& text);

// {"vars":M,"degree":N,"terms":[{"exp":[…],"re":…,"im":…},…]}.
std::string polynomial_to_json(const HomogeneousPolynomial& p);
HomogeneousPolynomial polynomial_from_json(const std::string& text);

// {"modes":M,"ops":[{"op":"add","mode":k}|{"op":"unitary","matrix":[[…]]}
//  |{"op":"subtract","mode":k}|{"op":"project","mode":k}]}.
// Modes are 1-based on the wire and 0-based in memory.  The reader checks
// that every prefix keeps the photon count non-negative and the mode index
// inside the current (projection-reduced) mode count.
std::string circuit_to_json(const CircuitProgram& prog);
CircuitProgram circuit_from_json(const std::string& text);

// {"signature":[n1,…,nN],"modes":M,"residual":r,"restarts":k,
//  "factors":[…],"rendered":"[1^{n1} …]_M","scale":{…}}.
std::string classification_to_json(const FactorizationResult& r);

// Mirrors OptimizationTask: {"target":<state>,"scheme":"subtract"|"project"|
// "program","layers":K,"restarts":R,"steps":S,"learning_rate":lr,"seed":s}.
// Absent fields keep the task defaults.
std::string task_to_json(const OptimizationTask& task);
OptimizationTask task_from_json(const std::string& text);

std::string optimization_report_to_json(const OptimizationReport& report,
                                        const OptimizationTask& task);

std::string invariance_report_to_json(const InvarianceReport& report);

// Matrix CSV: header row of mode counts, one row per photon number, exact
// integers.
std::string capacity_to_csv(const std::vector<std::vector<std::int64_t>>& table,
                            int m_min, int n_min);

// Reproducibility stamp embedded in every output artifact.  The digest is
// FNV-1a over the payload before embedding; wall-clock time is deliberately
// excluded so identical runs emit identical bytes.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> args;
  std::uint64_t seed = 0;
  std::string version;
};

// JSON payloads gain a top-level "manifest" object; CSV payloads gain a
// single leading "# manifest …" comment line.
std::string embed_manifest_json(const std::string& payload, const RunManifest& m);
std::string embed_manifest_csv(const std::string& payload, const RunManifest& m);

}  // namespace fockforge
