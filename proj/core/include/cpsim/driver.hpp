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

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpsim/circuits.hpp"
#include "cpsim/reduction.hpp"

namespace cpsim {

inline constexpr Index kUnlimitedRank = std::numeric_limits<Index>::max();

struct RunConfig {
  Index r_max = kUnlimitedRank;
  Strategy strategy = Strategy::direct_then_als;
  /** Restarts, sweeps, tolerance and cutoff; the target rank comes from r_max. */
  AlsConfig als;
  std::uint64_t seed = 0;
  bool track_fidelity = true;
  /** Compare against the dense simulator at the end (n <= dense cap). */
  bool verify_dense = false;
  /**
   * Circuits: seed ALS restart 0 with the previous state pushed through the
   * layer by apply_gate_rank1; the remaining restarts stay random.
   */
  bool warm_start = false;
  /** Grover only: keep the r_max dominant terms instead of running ALS. */
  bool dominant_terms = false;
  /** Grover/walk iteration override. */
  std::optional<long> iterations;

  void validate() const;
};

struct RunResult {
  CPState state;
  double fidelity_estimate = 1.0;
  /** One record per layer (method none when no reduction ran). */
  std::vector<ReductionReport> reports;
  /** Rank after each layer. */
  std::vector<Index> rank_trace;
  std::map<std::string, double> phase_ms;
  double wall_ms = 0.0;
  long iterations = 0;
  std::optional<double> exact_fidelity;
  std::optional<double> marked_probability;
};

RunResult simulate(const Circuit& circuit, const CPState& input, const RunConfig& cfg);
RunResult run_grover(int n, const std::vector<Bits>& marked, const RunConfig& cfg);
RunResult run_walk(const WalkSpec& spec, const RunConfig& cfg);

}  // namespace cpsim
