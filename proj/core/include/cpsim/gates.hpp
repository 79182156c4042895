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

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cpsim/cp_state.hpp"

namespace cpsim {

using Mat2 = Eigen::Matrix2cd;

namespace gates {
Mat2 H();
Mat2 X();
Mat2 Z();
/** diag(1, exp(-2 pi i / 2^k)). */
Mat2 Rn(int k);
/** [[cos, -sin], [sin, cos]]. */
Mat2 Ry(double theta);
/** Projectors |0><0| and |1><1|. */
Mat2 E(int bit);
}  // namespace gates

/**
 * Look up a registry name such as "H", "Rn(3)" or "Ry(0.5)".
 * A trailing "^dag" selects the adjoint.
 */
std::optional<Mat2> named_matrix(const std::string& name);

bool is_unitary(const Mat2& u, double tol = 1e-10);

struct Control {
  int qubit;
  int bit;  // 1: act when the control is |1>, 0: act when |0>
};

struct OneQubit {
  int target;
  Mat2 u;
  std::string label;
};

/** One control uses the two-branch split; several use I + P (U - I). */
struct Controlled {
  std::vector<Control> controls;
  int target;
  Mat2 u;
  std::string label;
};

struct Swap {
  int q1;
  int q2;
};

/** coeff * (tensor product of ops), identity on unlisted qubits. */
struct KronTerm {
  cplx coeff{1.0};
  std::vector<std::pair<int, Mat2>> ops;
};

struct KronSum {
  std::vector<KronTerm> terms;
  std::string label;
};

using GateOp = std::variant<OneQubit, Controlled, Swap, KronSum>;

OneQubit make_one_qubit(const std::string& name, int target);
Controlled make_controlled(const std::string& name, std::vector<Control> controls,
                           int target);

/** Qubits touched by a gate, in no particular order. */
std::vector<int> gate_qubits(const GateOp& g);
/** Throws DimensionError on invalid or repeated qubit indices. */
void validate_gate(const GateOp& g, int n);
GateOp adjoint(const GateOp& g);
std::string gate_name(const GateOp& g);

CPState apply_one_qubit(const CPState& x, int target, const Mat2& u);
CPState apply_swap(const CPState& x, int q1, int q2);
CPState apply_controlled(const CPState& x, int control, int on_bit, int target,
                         const Mat2& u);
CPState apply_multi_controlled(const CPState& x, const std::vector<Control>& controls,
                               int target, const Mat2& u);
CPState apply_kron_sum(const CPState& x, const KronSum& op);
CPState apply_gate(const CPState& x, const GateOp& g);

/**
 * Rank-preserving approximation of apply_gate: exact for one-qubit gates and
 * swaps; for a singly-controlled gate each term's two-qubit block is replaced
 * by its leading singular pair. Empty for other gate kinds.
 */
std::optional<CPState> apply_gate_rank1(const CPState& x, const GateOp& g);

/** Identity minus twice the projector onto each marked string on `reg`. */
KronSum marked_reflection(const std::vector<Bits>& marked, const std::vector<int>& reg);
/** 2|v><v| - I with |v> the product state given per qubit of `reg`. */
KronSum product_reflection(const std::vector<Eigen::Vector2cd>& v,
                           const std::vector<int>& reg);

}  // namespace cpsim
