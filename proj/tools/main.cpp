// Copyright (c) 2026 The FockForge Authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Batch front end: JSON in, JSON/CSV out, no interactive mode.  Every
// output embeds a manifest (command, arguments, seed, version, payload
// digest) and is byte-identical across reruns; wall-clock goes to stderr.
//
// Exit codes: 0 success, 2 input error, 3 numeric failure, 4 failed
// heralding.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockforge/capacity.hpp"
#include "fockforge/circuit.hpp"
#include "fockforge/classifier.hpp"
#include "fockforge/fock.hpp"
#include "fockforge/json_io.hpp"
#include "fockforge/optimizer.hpp"
#include "fockforge/polynomial.hpp"
#include "fockforge/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitHerald = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + out_path);
    out << text;
  }
}

fockforge::RunManifest make_manifest(
    const std::string& command,
    std::vector<std::pair<std::string, std::string>> args, std::uint64_t seed) {
  fockforge::RunManifest m;
  m.command = command;
  m.args = std::move(args);
  m.seed = seed;
  m.version = fockforge::kVersionString;
  return m;
}

fockforge::FockState suite_target(int index) {
  using fockforge::FockState;
  using fockforge::Occupation;
  const auto make = [](int modes, std::vector<Occupation> occs) {
    int photons = 0;
    for (int s : occs[0]) photons += s;
    FockState f(modes, photons);
    for (const Occupation& occ : occs) f.set_amplitude(occ, 1.0);
    return f.normalized();
  };
  switch (index) {
    case 1: return make(3, {{2,0,0},{0,2,0},{0,0,2}});
    case 2: return make(3, {{3,0,0},{0,3,0},{0,0,3}});
    case 3: return make(3, {{4,0,0},{0,4,0},{0,0,4}});
    case 4: return make(4, {{2,0,0,0},{0,2,0,0},{0,0,2,0},{0,0,0,2}});
    case 5: return make(3, {{0,1,2},{1,2,0},{2,0,1},{0,2,1},{1,0,2},{2,1,0}});
    case 6: return make(3, {{1,1,0},{1,0,1},{0,1,1}});
    case 7: return make(3, {{2,2,0},{2,0,2},{0,2,2}});
    default: throw std::invalid_argument("suite target index out of range");
  }
}

int cmd_classify(const std::string& state_file, int restarts, std::uint64_t seed,
                 double tol, int threads, const std::string& out_path) {
  const fockforge::FockState state =
      fockforge::state_from_json(read_file(state_file));
  if (state.is_zero()) {
    std::cerr << "classify: input is the zero state\n";
    return kExitNumeric;
  }
  (void)threads;
  const fockforge::HomogeneousPolynomial p = fockforge::from_fock_state(state);
  const fockforge::FactorizationResult result =
      fockforge::classify(p, restarts, seed, tol);
  const std::string payload = fockforge::classification_to_json(result);
  const auto manifest = make_manifest(
      "classify",
      {{"state", state_file},
       {"--restarts", std::to_string(restarts)},
       {"--seed", std::to_string(seed)},
       {"--tol", fockforge::format_float(tol)}},
      seed);
  write_output(fockforge::embed_manifest_json(payload, manifest) + "\n", out_path);
  return kExitOk;
}

int cmd_run(const std::string& circuit_file, bool emit_class, int restarts,
            std::uint64_t seed, const std::string& out_path) {
  const fockforge::CircuitProgram prog =
      fockforge::circuit_from_json(read_file(circuit_file));
  const fockforge::RunResult result = fockforge::run_program(prog);

  nlohmann::json j;
  j["zero"] = result.zero;
  j["weight"] = fockforge::round_float(result.weight);
  nlohmann::json heralds = nlohmann::json::array();
  for (double w : result.herald_weights) heralds.push_back(fockforge::round_float(w));
  j["heralds"] = std::move(heralds);
  if (!result.zero) {
    const fockforge::FockState dense =
        fockforge::termsum_to_fock(result.state).normalized();
    j["state"] = nlohmann::json::parse(fockforge::state_to_json(dense));
    if (emit_class) {
      const fockforge::FactorizationResult cls =
          fockforge::classify(fockforge::from_fock_state(dense), restarts, seed);
      j["class"] = nlohmann::json::parse(fockforge::classification_to_json(cls));
    }
  } else {
    j["state"] = nlohmann::json::parse(fockforge::state_to_json(
        fockforge::FockState(result.state.modes(), result.state.photons())));
  }
  const std::string payload = j.dump(2);

  std::vector<std::pair<std::string, std::string>> args = {
      {"circuit", circuit_file},
      {"--emit-class", emit_class ? "true" : "false"}};
  const auto manifest = make_manifest("run", std::move(args), seed);
  write_output(fockforge::embed_manifest_json(payload, manifest) + "\n", out_path);
  return result.zero ? kExitHerald : kExitOk;
}

int cmd_optimize(const std::string& task_file, const std::string& scheme_flag,
                 int restarts, int steps, std::uint64_t seed, bool suite,
                 int threads, const std::string& out_path) {
  using fockforge::OptimizationTask;
  using fockforge::Scheme;
  if (suite) {
    std::string csv = "target,class,subtraction,projection\n";
    static const char* kClasses[] = {"[2^1]_3", "[3^1]_3", "[4^1]_3", "[2^1]_4",
                                     "[3^1]_3", "[2^1]_3", "[4^1]_3"};
    for (int i = 1; i <= 7; ++i) {
      OptimizationTask task;
      task.target = suite_target(i);
      task.restarts = restarts;
      task.steps = steps;
      task.seed = seed;
      task.threads = threads;
      task.scheme = Scheme::Subtraction;
      const double sub = fockforge::optimize(task).best_fidelity;
      task.scheme = Scheme::Projection;
      const double proj = fockforge::optimize(task).best_fidelity;
      csv += "psi" + std::to_string(i) + "," + kClasses[i - 1] + "," +
             fockforge::format_float(fockforge::round_float(sub)) + "," +
             fockforge::format_float(fockforge::round_float(proj)) + "\n";
    }
    const auto manifest = make_manifest(
        "optimize",
        {{"--suite", "true"},
         {"--restarts", std::to_string(restarts)},
         {"--steps", std::to_string(steps)},
         {"--seed", std::to_string(seed)}},
        seed);
    write_output(fockforge::embed_manifest_csv(csv, manifest), out_path);
    return kExitOk;
  }

  if (task_file.empty()) {
    throw std::invalid_argument("optimize: need a task file or --suite");
  }
  OptimizationTask task = fockforge::task_from_json(read_file(task_file));
  if (!scheme_flag.empty()) {
    if (scheme_flag == "subtract") task.scheme = Scheme::Subtraction;
    else if (scheme_flag == "project") task.scheme = Scheme::Projection;
    else if (scheme_flag == "program") task.scheme = Scheme::Program;
    else throw std::invalid_argument("unknown scheme: " + scheme_flag);
  }
  if (restarts > 0) task.restarts = restarts;
  if (steps > 0) task.steps = steps;
  if (seed != 0) task.seed = seed;
  task.threads = threads;
  const fockforge::OptimizationReport report =
      task.scheme == Scheme::Program ? fockforge::optimize_program(task)
                                     : fockforge::optimize(task);
  if (!std::isfinite(report.best_fidelity)) {
    std::cerr << "optimize: non-finite fidelity\n";
    return kExitNumeric;
  }
  const std::string payload = fockforge::optimization_report_to_json(report, task);
  const auto manifest = make_manifest(
      "optimize",
      {{"task", task_file},
       {"--restarts", std::to_string(task.restarts)},
       {"--steps", std::to_string(task.steps)},
       {"--seed", std::to_string(task.seed)}},
      task.seed);
  write_output(fockforge::embed_manifest_json(payload, manifest) + "\n", out_path);
  return kExitOk;
}

int cmd_capacity(int m_min, int m_max, int n_min, int n_max,
                 const std::string& out_path) {
  const auto table = fockforge::capacity_table(m_min, m_max, n_min, n_max);
  std::vector<std::vector<std::int64_t>> slack(table.size());
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (const fockforge::SlackEntry& e : table[r]) slack[r].push_back(e.slack);
  }
  const std::string csv = fockforge::capacity_to_csv(slack, m_min, n_min);
  const auto manifest = make_manifest(
      "capacity",
      {{"--m-min", std::to_string(m_min)},
       {"--m-max", std::to_string(m_max)},
       {"--n-min", std::to_string(n_min)},
       {"--n-max", std::to_string(n_max)}},
      0);
  write_output(fockforge::embed_manifest_csv(csv, manifest), out_path);
  return kExitOk;
}

int cmd_invariance(const std::string& state_file, int trials, std::uint64_t seed,
                   int restarts, int threads, const std::string& out_path) {
  const fockforge::FockState state =
      fockforge::state_from_json(read_file(state_file));
  if (state.is_zero()) {
    std::cerr << "invariance: input is the zero state\n";
    return kExitNumeric;
  }
  const fockforge::InvarianceReport report = fockforge::check_unitary_invariance(
      fockforge::from_fock_state(state), trials, seed, restarts, threads);
  const std::string payload = fockforge::invariance_report_to_json(report);
  const auto manifest = make_manifest(
      "invariance",
      {{"state", state_file},
       {"--trials", std::to_string(trials)},
       {"--seed", std::to_string(seed)}},
      seed);
  write_output(fockforge::embed_manifest_json(payload, manifest) + "\n", out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fockforge: N-photon M-mode state synthesis and classification"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("-o,--output", out_path, "write payload to a file instead of stdout");

  // classify
  std::string classify_state;
  int classify_restarts = 32;
  std::uint64_t classify_seed = 0;
  double classify_tol = fockforge::kFactorResidualTol;
  int classify_threads = 0;
  auto* classify = app.add_subcommand("classify", "class signature of a state");
  classify->add_option("state", classify_state, "state JSON file")->required();
  classify->add_option("--restarts", classify_restarts, "fit restarts");
  classify->add_option("--seed", classify_seed, "RNG seed");
  classify->add_option("--tol", classify_tol, "residual tolerance");
  classify->add_option("--threads", classify_threads, "worker threads (0 = auto)");

  // run
  std::string run_circuit;
  bool run_emit_class = false;
  int run_restarts = 32;
  std::uint64_t run_seed = 0;
  auto* run = app.add_subcommand("run", "execute a circuit program");
  run->add_option("circuit", run_circuit, "circuit JSON file")->required();
  run->add_flag("--emit-class", run_emit_class, "classify the output state");
  run->add_option("--restarts", run_restarts, "classifier restarts for --emit-class");
  run->add_option("--seed", run_seed, "classifier seed for --emit-class");

  // optimize
  std::string opt_task;
  std::string opt_scheme;
  int opt_restarts = 0;
  int opt_steps = 0;
  std::uint64_t opt_seed = 0;
  bool opt_suite = false;
  int opt_threads = 0;
  auto* optimize = app.add_subcommand("optimize", "fit circuit parameters to a target");
  optimize->add_option("task", opt_task, "task JSON file");
  optimize->add_option("--scheme", opt_scheme, "subtract|project|program");
  optimize->add_option("--restarts", opt_restarts, "restart count override");
  optimize->add_option("--steps", opt_steps, "descent steps override");
  optimize->add_option("--seed", opt_seed, "seed override");
  optimize->add_flag("--suite", opt_suite, "run the built-in seven-target suite");
  optimize->add_option("--threads", opt_threads, "worker threads (0 = auto)");

  // capacity
  int cap_m_min = 2, cap_m_max = 7, cap_n_min = 2, cap_n_max = 12;
  auto* capacity = app.add_subcommand("capacity", "single-annihilation parameter slack table");
  capacity->add_option("--m-min", cap_m_min, "first mode count");
  capacity->add_option("--m-max", cap_m_max, "last mode count");
  capacity->add_option("--n-min", cap_n_min, "first photon number");
  capacity->add_option("--n-max", cap_n_max, "last photon number");

  // invariance
  std::string inv_state;
  int inv_trials = 20;
  std::uint64_t inv_seed = 0;
  int inv_restarts = 32;
  int inv_threads = 0;
  auto* invariance = app.add_subcommand("invariance", "signature stability under Haar rotations");
  invariance->add_option("state", inv_state, "state JSON file")->required();
  invariance->add_option("--trials", inv_trials, "rotation count");
  invariance->add_option("--seed", inv_seed, "RNG seed");
  invariance->add_option("--restarts", inv_restarts, "classifier restarts");
  invariance->add_option("--threads", inv_threads, "worker threads (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  const auto t0 = std::chrono::steady_clock::now();
  int rc = kExitOk;
  try {
    if (classify->parsed()) {
      rc = cmd_classify(classify_state, classify_restarts, classify_seed,
                        classify_tol, classify_threads, out_path);
    } else if (run->parsed()) {
      rc = cmd_run(run_circuit, run_emit_class, run_restarts, run_seed, out_path);
    } else if (optimize->parsed()) {
      rc = cmd_optimize(opt_task, opt_scheme, opt_restarts, opt_steps, opt_seed,
                        opt_suite, opt_threads, out_path);
    } else if (capacity->parsed()) {
      rc = cmd_capacity(cap_m_min, cap_m_max, cap_n_min, cap_n_max, out_path);
    } else if (invariance->parsed()) {
      rc = cmd_invariance(inv_state, inv_trials, inv_seed, inv_restarts,
                          inv_threads, out_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  std::fprintf(stderr, "# wall-clock %.1f ms\n", ms);
  return rc;
}
