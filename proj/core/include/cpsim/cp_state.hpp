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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpsim {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using Factor = Eigen::Matrix<cplx, 2, Eigen::Dynamic>;
using Bits = std::vector<std::uint8_t>;

/** Thrown on mismatched qubit counts, bad indices or malformed input. */
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/** Absolute column-norm threshold below which split branches are dropped. */
inline constexpr double kPruneTol = 1e-12;

/**
 * An n-qubit state stored as a rank-R CP decomposition.
 *
 * Factor q is a 2xR matrix; column k across all factors is rank-1 term k.
 * Qubit 0 is the most significant bit of a basis index. Rank 0 is the
 * zero state.
 */
class CPState {
 public:
  CPState() = default;
  CPState(int n, Index rank);
  explicit CPState(std::vector<Factor> factors);

  int n() const { return static_cast<int>(factors_.size()); }
  Index rank() const { return factors_.empty() ? 0 : factors_[0].cols(); }

  const Factor& factor(int q) const { return factors_.at(q); }
  Factor& factor(int q) { return factors_.at(q); }
  const std::vector<Factor>& factors() const { return factors_; }
  std::vector<Factor>& factors() { return factors_; }

  bool all_finite() const;

 private:
  std::vector<Factor> factors_;
};

/** Read-only view of one rank-1 term. */
struct TermView {
  Index index;
  std::vector<Eigen::Vector2cd> columns;

  double norm() const;
};

TermView term(const CPState& x, Index k);

/** Product-state constructors. */
CPState basis_state(int n, std::uint64_t index);
CPState basis_state(const Bits& bits);
CPState uniform_state(int n);
CPState product_state(const std::vector<Eigen::Vector2cd>& qubits);

/** Real entries uniform on [0,1], as used for random circuit inputs. */
CPState random_real_state(int n, Index rank, std::mt19937_64& rng);
/** Complex entries with independent normal real and imaginary parts. */
CPState random_complex_state(int n, Index rank, std::mt19937_64& rng);

cplx inner_product(const CPState& x, const CPState& y);
double norm(const CPState& x);
double fidelity(const CPState& x, const CPState& y);
cplx amplitude(const CPState& x, const Bits& basis);
double marked_probability(const CPState& x, const std::vector<Bits>& marked,
                          const std::vector<int>& reg);
double marked_probability(const CPState& x, const std::vector<Bits>& marked);
CPState normalize(const CPState& x);
CPState concat_terms(const CPState& x, const CPState& y);
CPState scale(const CPState& x, cplx s);
CPState select_terms(const CPState& x, const std::vector<Index>& keep);

/** Term norms, O(nR). */
Eigen::VectorXd term_norms(const CPState& x);

/** Rescale columns so every factor column of a term has the same norm. */
void balance_terms(CPState& x);

Bits bits_from_index(std::uint64_t index, int n);
std::uint64_t index_from_bits(const Bits& bits);
Bits parse_bits(const std::string& s);
std::string format_bits(const Bits& bits);

}  // namespace cpsim
