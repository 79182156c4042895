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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpsim/cpsim.hpp"

namespace cpsim::cli {

/** Everything one `run` invocation needs; field names double as config keys. */
struct ExperimentSpec {
  std::string alg = "qft";  // qft | qft-random | phase | grover | walk
  int qubits = 8;
  std::string input = "basis:0";  // basis:<idx> | random-rank1 | h
  std::optional<double> theta;
  std::vector<std::string> marked;
  int marked_count = 1;
  std::string graph = "complete-loops";
  int cycle_m = 1;
  long rank_limit = 0;  // 0: unlimited
  std::string strategy = "direct-then-als";
  int als_restarts = 3;
  int als_sweeps = 100;
  double als_tol = 1e-10;
  bool warm_start = false;
  bool dominant_terms = false;
  std::uint64_t seed = 0;
  long iterations = -1;  // -1: algorithm default
  bool verify_dense = false;
  int repeat = 1;
  std::string out;
  std::string format = "json";
  std::string dump_state;
  std::string dump_circuit;
  bool deterministic = false;

  /** Throws std::invalid_argument on bad combinations. */
  void validate() const;
};

nlohmann::json to_json(const ExperimentSpec& s);
/** Overlays the keys of `j` on `base`; unknown keys are rejected. */
ExperimentSpec spec_from_json(const nlohmann::json& j, ExperimentSpec base = {});

RunConfig run_config(const ExperimentSpec& s);
std::vector<Bits> marked_items(const ExperimentSpec& s);
WalkSpec walk_spec(const ExperimentSpec& s);
/** Input state for the circuit algorithms (qft, qft-random, phase). */
CPState input_state(const ExperimentSpec& s);
/** Circuit that `run` simulates; one iteration for grover and walk. */
Circuit experiment_circuit(const ExperimentSpec& s);

RunResult run_experiment(const ExperimentSpec& s);

struct TableRow {
  std::string table;
  std::string alg;
  std::string graph;
  int qubits = 0;
  long rank_limit = 0;
  int marked_count = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  std::string status;  // ok | als-failure | skipped: beyond desk scale
  std::optional<double> fidelity_estimate;
  std::optional<double> marked_probability;
  std::optional<double> exact_fidelity;
};

const std::vector<std::string>& table_ids();

/**
 * Runs every desk-scale column of a preset table, `repeat` seeds each starting
 * at `seed`. `progress` sees each row as it finishes.
 */
std::vector<TableRow> reproduce(const std::string& table, int repeat, std::uint64_t seed,
                                const std::function<void(const TableRow&)>& progress = {});

std::string rows_to_csv(const std::vector<TableRow>& rows);
nlohmann::json rows_to_json(const std::vector<TableRow>& rows);

}  // namespace cpsim::cli
