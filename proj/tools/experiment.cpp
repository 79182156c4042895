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

#include "experiment.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cpsim::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kAlgs = {"qft", "qft-random", "phase", "grover", "walk"};

bool is_walk(const ExperimentSpec& s) { return s.alg == "walk"; }

int walk_register(const ExperimentSpec& s) {
  const WalkFamily f = parse_walk_family(s.graph);
  if (s.qubits % 2 != 0) throw std::invalid_argument("walk: --qubits must be even");
  const int n = f == WalkFamily::bipartite ? s.qubits / 2 - 1 : s.qubits / 2;
  if (n < 1) throw std::invalid_argument("walk: too few qubits for the graph family");
  return n;
}

// Bit strings of the register width, or decimal indices.
Bits parse_item(const std::string& tok, int width) {
  if (static_cast<int>(tok.size()) == width &&
      tok.find_first_not_of("01") == std::string::npos)
    return parse_bits(tok);
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty())
    throw std::invalid_argument("marked item '" + tok + "' is neither a " +
                                std::to_string(width) + "-bit string nor an index");
  if (width < 64 && v >> width)
    throw std::invalid_argument("marked index " + tok + " out of range");
  return bits_from_index(v, width);
}

}  // namespace

void ExperimentSpec::validate() const {
  if (!kAlgs.count(alg)) throw std::invalid_argument("unknown --alg: " + alg);
  if (qubits < 1 || qubits > 64) throw std::invalid_argument("--qubits must be in [1, 64]");
  if (rank_limit < 0) throw std::invalid_argument("--rank-limit must be >= 0");
  if (als_restarts < 1 || als_sweeps < 1 || !(als_tol >= 0.0))
    throw std::invalid_argument("ALS restarts/sweeps must be >= 1 and tol >= 0");
  if (repeat < 1) throw std::invalid_argument("--repeat must be >= 1");
  if (format != "json" && format != "csv") throw std::invalid_argument("--format is json or csv");
  if (marked_count < 1) throw std::invalid_argument("--marked-count must be >= 1");
  parse_strategy(strategy);
  if (is_walk(*this)) {
    walk_register(*this);
    if (marked.size() > 1) throw std::invalid_argument("walk: exactly one marked vertex");
  }
  if (alg == "grover" && static_cast<double>(marked_count) > std::ldexp(1.0, qubits))
    throw std::invalid_argument("grover: more marked items than basis states");
  if (alg == "qft" || alg == "phase") input_state(*this);
}

json to_json(const ExperimentSpec& s) {
  json j{{"alg", s.alg},
         {"qubits", s.qubits},
         {"input", s.input},
         {"marked", s.marked},
         {"marked_count", s.marked_count},
         {"graph", s.graph},
         {"cycle_m", s.cycle_m},
         {"rank_limit", s.rank_limit},
         {"strategy", s.strategy},
         {"als_restarts", s.als_restarts},
         {"als_sweeps", s.als_sweeps},
         {"als_tol", s.als_tol},
         {"warm_start", s.warm_start},
         {"dominant_terms", s.dominant_terms},
         {"seed", s.seed},
         {"iterations", s.iterations},
         {"verify_dense", s.verify_dense},
         {"repeat", s.repeat},
         {"format", s.format}};
  j["theta"] = s.theta ? json(*s.theta) : json(nullptr);
  return j;
}

ExperimentSpec spec_from_json(const json& j, ExperimentSpec s) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (k == "alg") s.alg = v.get<std::string>();
    else if (k == "qubits") s.qubits = v.get<int>();
    else if (k == "input") s.input = v.get<std::string>();
    else if (k == "theta") s.theta = v.is_null() ? std::nullopt : std::optional(v.get<double>());
    else if (k == "marked") s.marked = v.get<std::vector<std::string>>();
    else if (k == "marked_count") s.marked_count = v.get<int>();
    else if (k == "graph") s.graph = v.get<std::string>();
    else if (k == "cycle_m") s.cycle_m = v.get<int>();
    else if (k == "rank_limit") s.rank_limit = v.get<long>();
    else if (k == "strategy") s.strategy = v.get<std::string>();
    else if (k == "als_restarts") s.als_restarts = v.get<int>();
    else if (k == "als_sweeps") s.als_sweeps = v.get<int>();
    else if (k == "als_tol") s.als_tol = v.get<double>();
    else if (k == "warm_start") s.warm_start = v.get<bool>();
    else if (k == "dominant_terms") s.dominant_terms = v.get<bool>();
    else if (k == "seed") s.seed = v.get<std::uint64_t>();
    else if (k == "iterations") s.iterations = v.get<long>();
    else if (k == "verify_dense") s.verify_dense = v.get<bool>();
    else if (k == "repeat") s.repeat = v.get<int>();
    else if (k == "out") s.out = v.get<std::string>();
    else if (k == "format") s.format = v.get<std::string>();
    else if (k == "dump_state") s.dump_state = v.get<std::string>();
    else if (k == "dump_circuit") s.dump_circuit = v.get<std::string>();
    else if (k == "deterministic") s.deterministic = v.get<bool>();
    else throw std::invalid_argument("unknown config key: " + k);
  }
  return s;
}

RunConfig run_config(const ExperimentSpec& s) {
  RunConfig c;
  c.r_max = s.rank_limit == 0 ? kUnlimitedRank : s.rank_limit;
  c.strategy = parse_strategy(s.strategy);
  c.als.restarts = s.als_restarts;
  c.als.max_sweeps = s.als_sweeps;
  c.als.tol = s.als_tol;
  c.seed = s.seed;
  c.verify_dense = s.verify_dense;
  c.warm_start = s.warm_start;
  c.dominant_terms = s.dominant_terms;
  if (s.iterations >= 0) c.iterations = s.iterations;
  return c;
}

std::vector<Bits> marked_items(const ExperimentSpec& s) {
  const int width = is_walk(s) ? walk_register(s) : s.qubits;
  std::vector<Bits> out;
  if (!s.marked.empty()) {
    std::set<Bits> seen;
    for (const auto& tok : s.marked) {
      Bits b = parse_item(tok, width);
      if (!seen.insert(b).second) throw std::invalid_argument("duplicate marked item " + tok);
      out.push_back(std::move(b));
    }
    return out;
  }
  if (is_walk(s)) return {bits_from_index(1, width)};
  // Distinct seeded draws.
  std::mt19937_64 rng(derive_seed(s.seed, 0x6d61726bULL, 0));
  std::set<std::uint64_t> seen;
  while (static_cast<int>(out.size()) < s.marked_count) {
    const std::uint64_t v = width >= 64 ? rng() : rng() >> (64 - width);
    if (seen.insert(v).second) out.push_back(bits_from_index(v, width));
  }
  return out;
}

WalkSpec walk_spec(const ExperimentSpec& s) {
  WalkSpec w;
  w.family = parse_walk_family(s.graph);
  w.n = walk_register(s);
  w.m = s.cycle_m;
  w.marked = marked_items(s).front();
  w.validate();
  return w;
}

CPState input_state(const ExperimentSpec& s) {
  if (s.alg == "phase") {
    const double theta = s.theta.value_or(0.5 * (1.0 + std::ldexp(1.0, -s.qubits)));
    if (!(theta >= 0.0 && theta < 1.0)) throw std::invalid_argument("--theta must be in [0, 1)");
    return build_phase_estimation_register(s.qubits, theta);
  }
  const std::string in = s.alg == "qft-random" ? "random-rank1" : s.input;
  if (in == "h") return uniform_state(s.qubits);
  if (in == "random-rank1") {
    std::mt19937_64 rng(derive_seed(s.seed, 0x696e707574ULL, 0));
    return normalize(random_real_state(s.qubits, 1, rng));
  }
  if (in.rfind("basis:", 0) == 0) return basis_state(parse_item(in.substr(6), s.qubits));
  throw std::invalid_argument("unknown --input: " + in);
}

Circuit experiment_circuit(const ExperimentSpec& s) {
  if (s.alg == "qft" || s.alg == "qft-random") return build_qft(s.qubits);
  if (s.alg == "phase") return build_inverse_qft(s.qubits);
  if (s.alg == "grover") {
    const GroverOps g = build_grover(s.qubits, marked_items(s), s.dominant_terms);
    Circuit c(s.qubits, "grover_iteration");
    c.add(g.oracle);
    c.append(g.diffusion);
    c.params["iterations"] = static_cast<double>(g.iterations);
    return c;
  }
  return build_walk(walk_spec(s)).step;
}

RunResult run_experiment(const ExperimentSpec& s) {
  s.validate();
  const RunConfig cfg = run_config(s);
  if (s.alg == "grover") return run_grover(s.qubits, marked_items(s), cfg);
  if (s.alg == "walk") return run_walk(walk_spec(s), cfg);
  return simulate(experiment_circuit(s), input_state(s), cfg);
}

// --- presets ----------------------------------------------------------------

namespace {

struct Preset {
  ExperimentSpec spec;
  bool desk = true;
};

ExperimentSpec base(const std::string& alg, int q, long r, const std::string& strategy) {
  ExperimentSpec s;
  s.alg = alg;
  s.qubits = q;
  s.rank_limit = r;
  s.strategy = strategy;
  return s;
}

std::vector<Preset> presets(const std::string& table) {
  std::vector<Preset> out;
  auto add = [&](ExperimentSpec s, bool desk = true) { out.push_back({std::move(s), desk}); };
  if (table == "t2") {
    for (int n : {18, 20, 22, 24, 26, 28, 30, 32, 40, 60}) {
      ExperimentSpec s = base("qft", n, 1, "direct-then-als");
      s.input = "basis:1";
      add(s);
    }
  } else if (table == "t4") {
    for (auto [n, r] : std::vector<std::pair<int, long>>{
             {16, 256}, {20, 256}, {24, 256}, {26, 256}, {27, 256}, {28, 256}, {40, 1024}, {40, 2048}}) {
      ExperimentSpec s = base("qft-random", n, r, "als");
      s.warm_start = true;
      s.als_sweeps = 5;
      s.als_restarts = 1;
      add(s, n <= 20);
    }
  } else if (table == "t5") {
    for (int n : {18, 20, 22, 24, 26, 28, 30, 32, 40, 60})
      add(base("phase", n, 20, "direct-then-als"), n <= 32);
  } else if (table == "t6") {
    for (auto [n, a, restarts] : std::vector<std::tuple<int, int, int>>{
             {8, 1, 3}, {10, 1, 3}, {12, 1, 3}, {14, 1, 3}, {16, 1, 3}, {16, 1, 10},
             {8, 20, 3}, {10, 20, 3}, {12, 20, 3}, {14, 20, 3}, {16, 20, 3}}) {
      ExperimentSpec s = base("grover", n, 2, "als");
      s.marked_count = a;
      s.als_restarts = restarts;
      add(s);
    }
  } else if (table == "t7") {
    for (auto [n, r] : std::vector<std::pair<int, long>>{
             {12, 2}, {16, 2}, {20, 2}, {20, 5}, {24, 5}, {24, 20}}) {
      ExperimentSpec s = base("walk", n, r, "als");
      s.graph = "complete-loops";
      add(s);
    }
    for (auto [n, r] : std::vector<std::pair<int, long>>{
             {8, 4}, {12, 4}, {16, 4}, {20, 4}, {20, 10}, {24, 10}, {24, 40}}) {
      ExperimentSpec s = base("walk", n, r, "als");
      s.graph = "bipartite";
      add(s);
    }
  } else if (table == "t8") {
    for (int a : {1, 20})
      for (int n : {10, 15, 20, 25, 30}) {
        // a + 1 terms span the exact iterate, so a = 20 needs rank 21.
        ExperimentSpec s = base("grover", n, a == 1 ? 2 : a + 1, "direct");
        s.marked_count = a;
        add(s, n <= 25);
      }
  } else if (table == "t10") {
    for (int n : {12, 16, 20, 24, 28, 32}) {
      ExperimentSpec s = base("walk", n, 2, "direct");
      s.graph = "complete-loops";
      add(s);
    }
  } else if (table == "t12") {
    for (int n : {8, 12, 16, 20, 24, 28, 32, 36}) {
      ExperimentSpec s = base("walk", n, 4, "direct");
      s.graph = "bipartite";
      add(s);
    }
  } else if (table == "t13") {
    for (auto [n, r] : std::vector<std::pair<int, long>>{{6, 16}, {10, 64}, {14, 256}}) {
      ExperimentSpec s = base("walk", n, r, "als");
      s.graph = "cyclic";
      s.verify_dense = n <= 12;
      add(s, n <= 10);
    }
  } else {
    throw std::invalid_argument("unknown table id: " + table);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& table_ids() {
  static const std::vector<std::string> ids = {"t2", "t4", "t5", "t6", "t7",
                                               "t8", "t10", "t12", "t13"};
  return ids;
}

std::vector<TableRow> reproduce(const std::string& table, int repeat, std::uint64_t seed,
                                const std::function<void(const TableRow&)>& progress) {
  if (repeat < 1) throw std::invalid_argument("repeat must be >= 1");
  std::vector<TableRow> rows;
  for (const Preset& p : presets(table)) {
    for (int i = 0; i < (p.desk ? repeat : 1); ++i) {
      ExperimentSpec s = p.spec;
      s.seed = seed + static_cast<std::uint64_t>(i);
      TableRow row;
      row.table = table;
      row.alg = s.alg;
      row.graph = s.alg == "walk" ? s.graph : "";
      row.qubits = s.qubits;
      row.rank_limit = s.rank_limit;
      row.marked_count = s.alg == "grover" ? s.marked_count : (s.alg == "walk" ? 1 : 0);
      row.restarts = s.strategy == "direct" ? 0 : s.als_restarts;
      row.seed = s.seed;
      if (!p.desk) {
        row.status = "skipped: beyond desk scale";
      } else {
        try {
          const RunResult r = run_experiment(s);
          row.status = "ok";
          row.fidelity_estimate = r.fidelity_estimate;
          row.marked_probability = r.marked_probability;
          row.exact_fidelity = r.exact_fidelity;
        } catch (const AlsError&) {
          row.status = "als-failure";
        }
      }
      if (progress) progress(row);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string rows_to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(10);
  auto opt = [&os](const std::optional<double>& v) {
    if (v) os << *v;
  };
  os << "table,alg,graph,qubits,rank_limit,marked_count,restarts,seed,status,"
        "fidelity_estimate,marked_probability,exact_fidelity\n";
  for (const auto& r : rows) {
    os << r.table << ',' << r.alg << ',' << r.graph << ',' << r.qubits << ',' << r.rank_limit
       << ',' << r.marked_count << ',' << r.restarts << ',' << r.seed << ',' << r.status << ',';
    opt(r.fidelity_estimate);
    os << ',';
    opt(r.marked_probability);
    os << ',';
    opt(r.exact_fidelity);
    os << '\n';
  }
  return os.str();
}

json rows_to_json(const std::vector<TableRow>& rows) {
  json out = json::array();
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& r : rows)
    out.push_back({{"table", r.table},
                   {"alg", r.alg},
                   {"graph", r.graph},
                   {"qubits", r.qubits},
                   {"rank_limit", r.rank_limit},
                   {"marked_count", r.marked_count},
                   {"restarts", r.restarts},
                   {"seed", r.seed},
                   {"status", r.status},
                   {"fidelity_estimate", opt(r.fidelity_estimate)},
                   {"marked_probability", opt(r.marked_probability)},
                   {"exact_fidelity", opt(r.exact_fidelity)}});
  return out;
}

}  // namespace cpsim::cli
