// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "fockforge/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace fockforge {

namespace {

using nlohmann::json;

constexpr double kEmitTol = 1e-15;  // amplitudes below this are not serialized

json parse_checked(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

const json& require_key(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw std::invalid_argument(std::string("missing key \"") + key + "\"");
  }
  return *it;
}

int require_int(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string("key \"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

double require_number(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_number()) {
    throw std::invalid_argument(std::string("key \"") + key + "\" must be a number");
  }
  return v.get<double>();
}

json complex_to_json(Complex z) {
  return json{{"re", round_float(z.real())}, {"im", round_float(z.imag())}};
}

Complex complex_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("complex entry must be an object");
  return Complex(require_number(j, "re"), require_number(j, "im"));
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("matrix must be a non-empty array of rows");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
      throw std::invalid_argument("matrix rows must have equal length");
    }
    for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Occupation occupation_from_json(const json& j, const char* what, int expect_size) {
  if (!j.is_array() || static_cast<int>(j.size()) != expect_size) {
    throw std::invalid_argument(std::string(what) + " must be an array of the declared length");
  }
  Occupation occ;
  occ.reserve(j.size());
  for (const json& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 0) {
      throw std::invalid_argument(std::string(what) + " entries must be non-negative integers");
    }
    occ.push_back(v.get<int>());
  }
  return occ;
}

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Subtraction: return "subtract";
    case Scheme::Projection: return "project";
    case Scheme::Program: return "program";
  }
  return "subtract";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "subtract") return Scheme::Subtraction;
  if (name == "project") return Scheme::Projection;
  if (name == "program") return Scheme::Program;
  throw std::invalid_argument("unknown scheme \"" + name +
                              "\" (expected subtract|project|program)");
}

json signature_to_json(const ClassSignature& sig) {
  return json{{"counts", sig.counts},
              {"modes", sig.modes},
              {"rendered", sig.to_string()}};
}

json manifest_to_json(const RunManifest& m, const std::string& digest) {
  json args = json::array();
  for (const auto& [flag, value] : m.args) {
    args.push_back(json::array({flag, value}));
  }
  return json{{"command", m.command},
              {"args", std::move(args)},
              {"seed", m.seed},
              {"version", m.version},
              {"digest", digest}};
}

}  // namespace

std::string format_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

double round_float(double x) {
  return std::strtod(format_float(x).c_str(), nullptr);
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string state_to_json(const FockState& s) {
  json amplitudes = json::array();
  for (const auto& [occ, amp] : s.amplitudes()) {
    if (std::abs(amp) < kEmitTol) continue;
    amplitudes.push_back(json{{"occ", occ},
                              {"re", round_float(amp.real())},
                              {"im", round_float(amp.imag())}});
  }
  return json{{"modes", s.modes()},
              {"photons", s.photons()},
              {"amplitudes", std::move(amplitudes)}}
      .dump(2);
}

FockState state_from_json(const std::string& text) {
  const json j = parse_checked(text);
  if (!j.is_object()) throw std::invalid_argument("state must be a JSON object");
  const int modes = require_int(j, "modes");
  const int photons = require_int(j, "photons");
  if (modes < 1) throw std::invalid_argument("state needs modes >= 1");
  if (photons < 0) throw std::invalid_argument("state needs photons >= 0");
  const json& amplitudes = require_key(j, "amplitudes");
  if (!amplitudes.is_array()) {
    throw std::invalid_argument("\"amplitudes\" must be an array");
  }
  FockState state(modes, photons);
  for (const json& entry : amplitudes) {
    const Occupation occ = occupation_from_json(require_key(entry, "occ"), "occ", modes);
    if (std::accumulate(occ.begin(), occ.end(), 0) != photons) {
      throw std::invalid_argument("occupation does not sum to the declared photon number");
    }
    state.add_amplitude(occ, Complex(require_number(entry, "re"),
                                     require_number(entry, "im")));
  }
  return state;
}

std::string polynomial_to_json(const HomogeneousPolynomial& p) {
  json terms = json::array();
  for (const auto& [exp, coeff] : p.terms()) {
    if (std::abs(coeff) < kEmitTol) continue;
    terms.push_back(json{{"exp", exp},
                         {"re", round_float(coeff.real())},
                         {"im", round_float(coeff.imag())}});
  }
  return json{{"vars", p.vars()}, {"degree", p.degree()}, {"terms", std::move(terms)}}
      .dump(2);
}

HomogeneousPolynomial polynomial_from_json(const std::string& text) {
  const json j = parse_checked(text);
  if (!j.is_object()) throw std::invalid_argument("polynomial must be a JSON object");
  const int vars = require_int(j, "vars");
  const int degree = require_int(j, "degree");
  if (vars < 1 || degree < 0) {
    throw std::invalid_argument("polynomial needs vars >= 1 and degree >= 0");
  }
  const json& terms = require_key(j, "terms");
  if (!terms.is_array()) throw std::invalid_argument("\"terms\" must be an array");
  HomogeneousPolynomial p(vars, degree);
  for (const json& entry : terms) {
    const Occupation exp = occupation_from_json(require_key(entry, "exp"), "exp", vars);
    if (std::accumulate(exp.begin(), exp.end(), 0) != degree) {
      throw std::invalid_argument("exponent does not sum to the declared degree");
    }
    p.add_coefficient(exp, Complex(require_number(entry, "re"),
                                   require_number(entry, "im")));
  }
  return p;
}

std::string circuit_to_json(const CircuitProgram& prog) {
  json ops = json::array();
  for (const Instruction& ins : prog.ops) {
    switch (ins.kind) {
      case OpKind::Add:
        ops.push_back(json{{"op", "add"}, {"mode", ins.mode + 1}});
        break;
      case OpKind::Unitary:
        ops.push_back(json{{"op", "unitary"}, {"matrix", matrix_to_json(ins.matrix)}});
        break;
      case OpKind::Subtract:
        ops.push_back(json{{"op", "subtract"}, {"mode", ins.mode + 1}});
        break;
      case OpKind::Project:
        ops.push_back(json{{"op", "project"}, {"mode", ins.mode + 1}});
        break;
    }
  }
  return json{{"modes", prog.modes}, {"ops", std::move(ops)}}.dump(2);
}

CircuitProgram circuit_from_json(const std::string& text) {
  const json j = parse_checked(text);
  if (!j.is_object()) throw std::invalid_argument("circuit must be a JSON object");
  CircuitProgram prog;
  prog.modes = require_int(j, "modes");
  if (prog.modes < 1) throw std::invalid_argument("circuit needs modes >= 1");
  const json& ops = require_key(j, "ops");
  if (!ops.is_array()) throw std::invalid_argument("\"ops\" must be an array");
  int cur_modes = prog.modes;
  int photons = 0;
  int index = 0;
  for (const json& entry : ops) {
    const std::string prefix = "op " + std::to_string(index) + ": ";
    const json& kind = require_key(entry, "op");
    if (!kind.is_string()) throw std::invalid_argument(prefix + "\"op\" must be a string");
    const std::string name = kind.get<std::string>();
    if (name == "unitary") {
      const ComplexMatrix u = matrix_from_json(require_key(entry, "matrix"));
      if (u.rows() != cur_modes || u.cols() != cur_modes) {
        throw std::invalid_argument(prefix + "matrix must be " +
                                    std::to_string(cur_modes) + "x" +
                                    std::to_string(cur_modes) + " here");
      }
      prog.ops.push_back(Instruction::unitary(u));
    } else {
      const int mode = require_int(entry, "mode");
      if (mode < 1 || mode > cur_modes) {
        throw std::invalid_argument(prefix + "mode " + std::to_string(mode) +
                                    " out of range 1.." + std::to_string(cur_modes));
      }
      if (name == "add") {
        prog.ops.push_back(Instruction::add(mode - 1));
        ++photons;
      } else if (name == "subtract") {
        if (photons < 1) throw std::invalid_argument(prefix + "subtract from zero photons");
        prog.ops.push_back(Instruction::subtract(mode - 1));
        --photons;
      } else if (name == "project") {
        if (photons < 1) throw std::invalid_argument(prefix + "project from zero photons");
        if (cur_modes < 2) throw std::invalid_argument(prefix + "project needs >= 2 modes");
        prog.ops.push_back(Instruction::project(mode - 1));
        --photons;
        --cur_modes;
      } else {
        throw std::invalid_argument(prefix + "unknown op \"" + name + "\"");
      }
    }
    ++index;
  }
  return prog;
}

std::string classification_to_json(const FactorizationResult& r) {
  json factors = json::array();
  for (const HomogeneousPolynomial& f : r.factors) {
    factors.push_back(json::parse(polynomial_to_json(f)));
  }
  return json{{"signature", r.signature.counts},
              {"modes", r.signature.modes},
              {"residual", round_float(r.residual)},
              {"restarts", r.restarts_used},
              {"factors", std::move(factors)},
              {"rendered", r.signature.to_string()},
              {"scale", complex_to_json(r.scale)}}
      .dump(2);
}

std::string task_to_json(const OptimizationTask& task) {
  return json{{"target", json::parse(state_to_json(task.target))},
              {"scheme", scheme_name(task.scheme)},
              {"layers", task.subtract_layers},
              {"restarts", task.restarts},
              {"steps", task.steps},
              {"learning_rate", round_float(task.learning_rate)},
              {"seed", task.seed}}
      .dump(2);
}

OptimizationTask task_from_json(const std::string& text) {
  const json j = parse_checked(text);
  if (!j.is_object()) throw std::invalid_argument("task must be a JSON object");
  OptimizationTask task;
  task.target = state_from_json(require_key(j, "target").dump());
  if (task.target.is_zero()) throw std::invalid_argument("task target is the zero state");
  const json& scheme = require_key(j, "scheme");
  if (!scheme.is_string()) throw std::invalid_argument("\"scheme\" must be a string");
  task.scheme = scheme_from_name(scheme.get<std::string>());
  if (j.contains("layers")) task.subtract_layers = require_int(j, "layers");
  if (j.contains("restarts")) task.restarts = require_int(j, "restarts");
  if (j.contains("steps")) task.steps = require_int(j, "steps");
  if (j.contains("learning_rate")) task.learning_rate = require_number(j, "learning_rate");
  if (j.contains("seed")) task.seed = require_key(j, "seed").get<std::uint64_t>();
  if (j.contains("stop_fidelity")) task.stop_fidelity = require_number(j, "stop_fidelity");
  if (j.contains("threads")) task.threads = require_int(j, "threads");
  if (task.subtract_layers < 0) throw std::invalid_argument("layers must be >= 0");
  if (task.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (task.steps < 0) throw std::invalid_argument("steps must be >= 0");
  return task;
}

std::string optimization_report_to_json(const OptimizationReport& report,
                                        const OptimizationTask& task) {
  json fids = json::array();
  for (double f : report.restart_fidelities) fids.push_back(round_float(f));
  json unitaries = json::array();
  for (const ComplexMatrix& u : report.best_unitaries) {
    unitaries.push_back(matrix_to_json(u));
  }
  return json{{"scheme", scheme_name(task.scheme)},
              {"best_fidelity", round_float(report.best_fidelity)},
              {"herald_weight", round_float(report.herald_weight)},
              {"iterations", report.iterations},
              {"seed", report.seed},
              {"restart_fidelities", std::move(fids)},
              {"gamma", matrix_to_json(report.best_gamma)},
              {"unitaries", std::move(unitaries)}}
      .dump(2);
}

std::string invariance_report_to_json(const InvarianceReport& report) {
  json per_trial = json::array();
  for (const ClassSignature& sig : report.per_trial) {
    per_trial.push_back(sig.to_string());
  }
  return json{{"base", signature_to_json(report.base)},
              {"trials", report.trials},
              {"agreements", report.agreements},
              {"per_trial", std::move(per_trial)}}
      .dump(2);
}

std::string capacity_to_csv(const std::vector<std::vector<std::int64_t>>& table,
                            int m_min, int n_min) {
  std::string out = "photons";
  if (!table.empty()) {
    for (std::size_t c = 0; c < table[0].size(); ++c) {
      out += "," + std::to_string(m_min + static_cast<int>(c));
    }
  }
  out += "\n";
  for (std::size_t r = 0; r < table.size(); ++r) {
    out += std::to_string(n_min + static_cast<int>(r));
    for (std::int64_t v : table[r]) out += "," + std::to_string(v);
    out += "\n";
  }
  return out;
}

std::string embed_manifest_json(const std::string& payload, const RunManifest& m) {
  json j = parse_checked(payload);
  if (!j.is_object()) throw std::invalid_argument("manifest host must be a JSON object");
  j["manifest"] = manifest_to_json(m, fnv1a_digest(payload));
  return j.dump(2);
}

std::string embed_manifest_csv(const std::string& payload, const RunManifest& m) {
  return "# manifest " + manifest_to_json(m, fnv1a_digest(payload)).dump() + "\n" +
         payload;
}

}  // namespace fockforge
