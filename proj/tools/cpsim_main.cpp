// Copyright 2026 The cpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "experiment.hpp"

using namespace cpsim;
using namespace cpsim::cli;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAls = 2;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + path + " for writing");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

json log_config(const ExperimentSpec& s) {
  json c = to_json(s);
  if (s.alg == "qft" || s.alg == "qft-random" || s.alg == "phase")
    c["qft_convention"] =
        "output amplitude j = 2^-n/2 sum_k exp(+2 pi i jk / 2^n) x_k; controlled phases "
        "diag(1, exp(+2 pi i / 2^k)), inverse uses exp(-2 pi i / 2^k)";
  return c;
}

int cmd_run(const ExperimentSpec& s) {
  s.validate();
  if (!s.dump_circuit.empty()) write_text(s.dump_circuit, circuit_to_json(experiment_circuit(s), 2));

  std::string text;
  json runs = json::array();
  for (int i = 0; i < s.repeat; ++i) {
    ExperimentSpec one = s;
    one.seed = s.seed + static_cast<std::uint64_t>(i);
    const RunResult r = run_experiment(one);
    if (!s.dump_state.empty() && i == 0) write_text(s.dump_state, state_to_json(r.state, 2));
    if (s.format == "csv") {
      std::string body = run_log_csv(r);
      if (s.repeat > 1) {
        // Prefix each row with the seed.
        std::istringstream in(body);
        std::ostringstream out;
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
          if (header) {
            if (i == 0) out << "seed," << line << '\n';
            header = false;
          } else {
            out << one.seed << ',' << line << '\n';
          }
        }
        body = out.str();
      }
      text += body;
    } else {
      runs.push_back(json::parse(
          run_log_json(r, log_config(one).dump(), -1, !s.deterministic)));
    }
  }
  if (s.format == "json") text = (s.repeat == 1 ? runs.front() : json{{"runs", runs}}).dump(2);
  write_text(s.out, text);
  return kExitOk;
}

int cmd_reproduce(const std::string& table, const ExperimentSpec& s, bool quiet) {
  const auto rows = reproduce(table, s.repeat, s.seed, [&](const TableRow& r) {
    if (quiet) return;
    std::cerr << r.table << " q=" << r.qubits << " r=" << r.rank_limit << " seed=" << r.seed
              << ": " << r.status;
    if (r.fidelity_estimate) std::cerr << " F=" << *r.fidelity_estimate;
    if (r.marked_probability) std::cerr << " p=" << *r.marked_probability;
    std::cerr << '\n';
  });
  write_text(s.out, s.format == "csv" ? rows_to_csv(rows) : rows_to_json(rows).dump(2));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpsim: low-rank CP simulation of quantum circuits"};
  app.require_subcommand(1);

  ExperimentSpec flags;
  std::string config_path;
  std::string marked_csv;
  double theta = 0.0;
  long iterations = -1;

  CLI::App* run = app.add_subcommand("run", "Run one experiment and write its run log");
  run->add_option("--config", config_path, "JSON file with ExperimentSpec fields; flags override")
      ->check(CLI::ExistingFile);
  auto* o_alg = run->add_option("--alg", flags.alg, "qft | qft-random | phase | grover | walk")
                    ->check(CLI::IsMember({"qft", "qft-random", "phase", "grover", "walk"}));
  auto* o_qubits = run->add_option("--qubits", flags.qubits, "Total number of qubits");
  auto* o_input =
      run->add_option("--input", flags.input, "basis:<idx or bits> | random-rank1 | h");
  auto* o_theta = run->add_option("--theta", theta, "Phase estimation eigenphase in [0, 1)");
  auto* o_marked = run->add_option(
      "--marked", marked_csv, "Comma-separated marked items (bit strings or indices)");
  auto* o_mcount = run->add_option("--marked-count", flags.marked_count,
                                   "Number of seeded random marked items (grover)");
  auto* o_graph = run->add_option("--graph", flags.graph,
                                  "complete-loops | bipartite | cyclic | complete")
                      ->check(CLI::IsMember({"complete-loops", "bipartite", "cyclic", "complete"}));
  auto* o_m = run->add_option("--cycle-m", flags.cycle_m, "Cyclic graph: a = 2^m - 1");
  auto* o_rank = run->add_option("--rank-limit", flags.rank_limit, "Maximum CP rank (0: none)");
  auto* o_strat = run->add_option("--strategy", flags.strategy, "direct | als | direct-then-als")
                      ->check(CLI::IsMember({"direct", "als", "direct-then-als"}));
  auto* o_restarts =
      run->add_option("--als-restarts", flags.als_restarts, "Random initial guesses per ALS call");
  auto* o_sweeps = run->add_option("--als-sweeps", flags.als_sweeps, "Maximum ALS sweeps");
  auto* o_tol = run->add_option("--als-tol", flags.als_tol, "ALS fidelity change tolerance");
  auto* o_warm = run->add_flag("--warm-start", flags.warm_start,
                               "Seed ALS restart 0 from the previous state");
  auto* o_dom = run->add_flag("--dominant-terms", flags.dominant_terms,
                              "Grover: keep the largest terms instead of ALS");
  auto* o_seed = run->add_option("--seed", flags.seed, "Master seed");
  auto* o_iter =
      run->add_option("--iterations", iterations, "Grover/walk iteration override");
  auto* o_verify =
      run->add_flag("--verify-dense", flags.verify_dense, "Compare with the dense simulator");
  auto* o_repeat = run->add_option("--repeat", flags.repeat, "Runs with seeds seed, seed+1, ...");
  auto* o_dstate = run->add_option("--dump-state", flags.dump_state, "Write the final CP state");
  auto* o_dcirc = run->add_option("--dump-circuit", flags.dump_circuit, "Write the circuit");
  auto* o_out = run->add_option("--out", flags.out, "Output path (default stdout)");
  auto* o_fmt = run->add_option("--format", flags.format, "json | csv")
                    ->check(CLI::IsMember({"json", "csv"}));
  auto* o_det = run->add_flag("--deterministic", flags.deterministic,
                              "Leave timings out of the JSON run log");

  std::string table;
  ExperimentSpec rep;
  rep.format = "csv";
  bool quiet = false;
  CLI::App* repro = app.add_subcommand("reproduce", "Run a preset result table");
  repro->add_option("table", table, "t2 | t4 | t5 | t6 | t7 | t8 | t10 | t12 | t13")
      ->required()
      ->check(CLI::IsMember(table_ids()));
  repro->add_option("--seed", rep.seed, "First seed");
  repro->add_option("--repeat", rep.repeat, "Seeds per configuration");
  repro->add_option("--out", rep.out, "Output path (default stdout)");
  repro->add_option("--format", rep.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  repro->add_flag("--quiet", quiet, "No progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*repro) return cmd_reproduce(table, rep, quiet);

    ExperimentSpec s;
    if (!config_path.empty()) s = spec_from_json(json::parse(read_text(config_path)));
    auto set = [](CLI::Option* o, auto& dst, const auto& src) {
      if (o->count() > 0) dst = src;
    };
    set(o_alg, s.alg, flags.alg);
    set(o_qubits, s.qubits, flags.qubits);
    set(o_input, s.input, flags.input);
    if (o_theta->count() > 0) s.theta = theta;
    if (o_marked->count() > 0) {
      s.marked.clear();
      std::stringstream ss(marked_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) s.marked.push_back(tok);
    }
    set(o_mcount, s.marked_count, flags.marked_count);
    set(o_graph, s.graph, flags.graph);
    set(o_m, s.cycle_m, flags.cycle_m);
    set(o_rank, s.rank_limit, flags.rank_limit);
    set(o_strat, s.strategy, flags.strategy);
    set(o_restarts, s.als_restarts, flags.als_restarts);
    set(o_sweeps, s.als_sweeps, flags.als_sweeps);
    set(o_tol, s.als_tol, flags.als_tol);
    set(o_warm, s.warm_start, flags.warm_start);
    set(o_dom, s.dominant_terms, flags.dominant_terms);
    set(o_seed, s.seed, flags.seed);
    set(o_iter, s.iterations, iterations);
    set(o_verify, s.verify_dense, flags.verify_dense);
    set(o_repeat, s.repeat, flags.repeat);
    set(o_dstate, s.dump_state, flags.dump_state);
    set(o_dcirc, s.dump_circuit, flags.dump_circuit);
    set(o_out, s.out, flags.out);
    set(o_fmt, s.format, flags.format);
    set(o_det, s.deterministic, flags.deterministic);
    return cmd_run(s);
  } catch (const AlsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAls;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
