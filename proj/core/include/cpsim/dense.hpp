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

// Brute-force state-vector reference used by tests and --verify-dense.

#pragma once

#include <optional>

#include "cpsim/circuits.hpp"

namespace cpsim {

/** Dense qubit cap; CPSIM_DENSE_CAP overrides the default of 14. */
int dense_cap();

class DenseCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct DenseState {
  int n = 0;
  Eigen::VectorXcd amp;
};

DenseState materialize(const CPState& x, std::optional<int> cap = std::nullopt);
DenseState dense_basis(int n, std::uint64_t index);

void apply_dense_gate(DenseState& x, const GateOp& g);
DenseState apply_dense(const Circuit& c, DenseState x);
/** Full unitary of a circuit, n <= 10. */
Eigen::MatrixXcd circuit_matrix(const Circuit& c);

/** F_{jk} = exp(2 pi i jk / N) / sqrt N. */
Eigen::MatrixXcd dft_matrix(int n);
/** Cyclic increment |y> -> |y+1 mod N>. */
Eigen::MatrixXcd shift_matrix(int n);
/** Amplitude transition matrix: 1/sqrt(N-a) where (y-x) mod N >= a. */
Eigen::MatrixXd transition_matrix(int n, int m);

double dense_fidelity(const DenseState& a, const DenseState& b);
double dense_marked_probability(const DenseState& x, const std::vector<Bits>& marked,
                                const std::vector<int>& reg);

/** Best rank-s fidelity found by dense ALS over `restarts` random starts. */
double best_rank_fidelity(const DenseState& x, Index s, int restarts = 20,
                          std::uint64_t seed = 0);

/** Textbook Grover from |h>, oracle then reflection about |h>. */
DenseState dense_grover(int n, const std::vector<Bits>& marked, long iterations);

/**
 * Szegedy search on the graph of transition_matrix(n, m): start in
 * |h> (x) column 0 of P and apply U_o (S U_d)^2 `iterations` times.
 */
DenseState dense_walk_cyclic(int n, int m, const Bits& marked, long iterations);

}  // namespace cpsim
