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

#include <map>
#include <string>
#include <vector>

#include "cpsim/gates.hpp"

namespace cpsim {

using Layer = std::vector<GateOp>;

/** Ordered layers; gates within a layer act on disjoint qubits. */
struct Circuit {
  int n = 0;
  std::vector<Layer> layers;
  std::string name;
  std::map<std::string, double> params;

  Circuit() = default;
  Circuit(int qubits, std::string nm) : n(qubits), name(std::move(nm)) {}

  void add(GateOp g) { layers.push_back(Layer{std::move(g)}); }
  void add_layer(Layer l) { layers.push_back(std::move(l)); }
  void append(const Circuit& c);
  std::size_t depth() const { return layers.size(); }
  std::size_t gate_count() const;
  /** Number of gates whose name is `name` ("H", "CU", "SWAP", ...). */
  std::size_t count(const std::string& name) const;
  /** Throws DimensionError on overlapping or out-of-range qubits. */
  void validate() const;
};

Circuit inverse(const Circuit& c);
/** Copy of `c` acting on qubits offset..offset+c.n-1 of an n-qubit system. */
Circuit embed(const Circuit& c, int n, int offset);

Circuit build_qft(int n);
Circuit build_inverse_qft(int n);

/** Phase-kickback register for eigenphase theta in [0,1). */
CPState build_phase_estimation_register(int n, double theta);

struct GroverOps {
  int n = 0;
  std::vector<Bits> marked;
  KronSum oracle;
  Circuit diffusion;
  long iterations = 0;
};

/** rank2_mode selects the floor(pi/4 sqrt N) schedule used with a rank-2 cap. */
GroverOps build_grover(int n, const std::vector<Bits>& marked, bool rank2_mode = false);
long grover_iterations(int n, std::size_t a);

enum class WalkFamily { complete_loops, bipartite, cyclic };
enum class BipartiteOracle { first_register, tagged };

std::string to_string(WalkFamily f);
WalkFamily parse_walk_family(const std::string& s);

struct WalkSpec {
  WalkFamily family = WalkFamily::complete_loops;
  /** Bits per vertex register (n1 for the bipartite family). */
  int n = 1;
  /** Cyclic family: neighbours y with (y - x) mod N >= a, a = 2^m - 1. */
  int m = 1;
  Bits marked;
  BipartiteOracle bipartite_oracle = BipartiteOracle::first_register;

  int total_qubits() const;
  void validate() const;
};

/** One search step plus everything needed to run and score it. */
struct WalkProgram {
  WalkSpec spec;
  Circuit step;
  CPState initial;
  long iterations = 0;
  std::vector<int> metric_register;
};

WalkProgram build_walk_complete_loops(int n, const Bits& marked);
WalkProgram build_walk_bipartite(int n1, const Bits& marked,
                                 BipartiteOracle oracle = BipartiteOracle::first_register);
WalkProgram build_walk_cyclic(int n, int m, const Bits& marked);
WalkProgram build_walk(const WalkSpec& spec);

/** |y> -> |y+1 mod 2^k> on `reg` (MSB first), gated by extra controls. */
Circuit build_increment(int n, const std::vector<int>& reg,
                        const std::vector<Control>& extra = {});
/** Maps |0...0> on `reg` to the uniform superposition of non-zero strings. */
Circuit build_k_complete(int n, const std::vector<int>& reg);
/** sum_x |x><x| (x) L^x with x on reg_a and the shift on reg_b. */
Circuit build_shift_cascade(int n, const std::vector<int>& reg_a,
                            const std::vector<int>& reg_b);

}  // namespace cpsim
