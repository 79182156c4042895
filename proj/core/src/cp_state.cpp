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

#include "cpsim/cp_state.hpp"

#include <algorithm>
#include <cmath>

namespace cpsim {

CPState::CPState(int n, Index rank) {
  if (n <= 0) throw DimensionError("CPState: qubit count must be positive");
  if (rank < 0) throw DimensionError("CPState: negative rank");
  factors_.assign(n, Factor::Zero(2, rank));
}

CPState::CPState(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty())
    throw DimensionError("CPState: qubit count must be positive");
  for (const auto& f : factors_) {
    if (f.cols() != factors_[0].cols())
      throw DimensionError("CPState: factor column counts differ");
  }
}

bool CPState::all_finite() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const Factor& f) { return f.allFinite(); });
}

double TermView::norm() const {
  double p = 1.0;
  for (const auto& c : columns) p *= c.norm();
  return p;
}

TermView term(const CPState& x, Index k) {
  if (k < 0 || k >= x.rank()) throw DimensionError("term: index out of range");
  TermView t{k, {}};
  t.columns.reserve(x.n());
  for (int q = 0; q < x.n(); ++q) t.columns.emplace_back(x.factor(q).col(k));
  return t;
}

CPState basis_state(int n, std::uint64_t index) {
  if (n <= 0 || n > 64) throw DimensionError("basis_state: bad qubit count");
  if (n < 64 && (index >> n) != 0)
    throw DimensionError("basis_state: index out of range");
  return basis_state(bits_from_index(index, n));
}

CPState basis_state(const Bits& bits) {
  CPState x(static_cast<int>(bits.size()), 1);
  for (int q = 0; q < x.n(); ++q) x.factor(q)(bits[q] ? 1 : 0, 0) = 1.0;
  return x;
}

CPState uniform_state(int n) {
  CPState x(n, 1);
  const double h = 1.0 / std::sqrt(2.0);
  for (int q = 0; q < n; ++q) x.factor(q).setConstant(h);
  return x;
}

CPState product_state(const std::vector<Eigen::Vector2cd>& qubits) {
  CPState x(static_cast<int>(qubits.size()), 1);
  for (int q = 0; q < x.n(); ++q) x.factor(q).col(0) = qubits[q];
  return x;
}

CPState random_real_state(int n, Index rank, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CPState x(n, rank);
  for (auto& f : x.factors())
    for (Index k = 0; k < rank; ++k)
      for (int r = 0; r < 2; ++r) f(r, k) = u(rng);
  return x;
}

CPState random_complex_state(int n, Index rank, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CPState x(n, rank);
  for (auto& f : x.factors())
    for (Index k = 0; k < rank; ++k)
      for (int r = 0; r < 2; ++r) f(r, k) = cplx(g(rng), g(rng));
  return x;
}

cplx inner_product(const CPState& x, const CPState& y) {
  if (x.n() != y.n()) throw DimensionError("inner_product: qubit count mismatch");
  if (x.rank() == 0 || y.rank() == 0) return 0.0;
  Eigen::MatrixXcd g = x.factor(0).adjoint() * y.factor(0);
  for (int q = 1; q < x.n(); ++q)
    g.array() *= (x.factor(q).adjoint() * y.factor(q)).array();
  return g.sum();
}

double norm(const CPState& x) {
  if (x.rank() == 0) return 0.0;
  return std::sqrt(std::abs(inner_product(x, x)));
}

double fidelity(const CPState& x, const CPState& y) {
  return std::clamp(std::norm(inner_product(x, y)), 0.0, 1.0);
}

cplx amplitude(const CPState& x, const Bits& basis) {
  if (static_cast<int>(basis.size()) != x.n())
    throw DimensionError("amplitude: basis length mismatch");
  if (x.rank() == 0) return 0.0;
  Eigen::RowVectorXcd p = x.factor(0).row(basis[0] ? 1 : 0);
  for (int q = 1; q < x.n(); ++q)
    p.array() *= x.factor(q).row(basis[q] ? 1 : 0).array();
  return p.sum();
}

double marked_probability(const CPState& x, const std::vector<Bits>& marked,
                          const std::vector<int>& reg) {
  std::vector<char> in_reg(x.n(), 0);
  for (int q : reg) {
    if (q < 0 || q >= x.n() || in_reg[q])
      throw DimensionError("marked_probability: bad register");
    in_reg[q] = 1;
  }
  for (const auto& m : marked)
    if (m.size() != reg.size())
      throw DimensionError("marked_probability: string/register mismatch");
  if (x.rank() == 0 || marked.empty()) return 0.0;

  // Gram of the unregistered qubits, shared by every marked string.
  Eigen::MatrixXcd rest = Eigen::MatrixXcd::Ones(x.rank(), x.rank());
  for (int q = 0; q < x.n(); ++q)
    if (!in_reg[q]) rest.array() *= (x.factor(q).adjoint() * x.factor(q)).array();

  double total = 0.0;
  for (const auto& m : marked) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Ones(x.rank());
    for (std::size_t i = 0; i < reg.size(); ++i)
      c.array() *= x.factor(reg[i]).row(m[i] ? 1 : 0).transpose().array();
    total += std::abs(c.dot(rest * c));
  }
  return total;
}

double marked_probability(const CPState& x, const std::vector<Bits>& marked) {
  std::vector<int> all(x.n());
  for (int q = 0; q < x.n(); ++q) all[q] = q;
  return marked_probability(x, marked, all);
}

CPState normalize(const CPState& x) {
  const double nrm = norm(x);
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw std::domain_error("normalize: zero-norm state");
  return scale(x, 1.0 / nrm);
}

CPState concat_terms(const CPState& x, const CPState& y) {
  if (x.n() != y.n()) throw DimensionError("concat_terms: qubit count mismatch");
  CPState out(x.n(), x.rank() + y.rank());
  for (int q = 0; q < x.n(); ++q) {
    out.factor(q).leftCols(x.rank()) = x.factor(q);
    out.factor(q).rightCols(y.rank()) = y.factor(q);
  }
  return out;
}

CPState scale(const CPState& x, cplx s) {
  CPState out = x;
  if (out.rank() > 0) out.factor(0) *= s;
  return out;
}

CPState select_terms(const CPState& x, const std::vector<Index>& keep) {
  CPState out(x.n(), static_cast<Index>(keep.size()));
  for (int q = 0; q < x.n(); ++q)
    for (std::size_t j = 0; j < keep.size(); ++j)
      out.factor(q).col(j) = x.factor(q).col(keep[j]);
  return out;
}

Eigen::VectorXd term_norms(const CPState& x) {
  Eigen::VectorXd r = Eigen::VectorXd::Ones(x.rank());
  for (const auto& f : x.factors()) r.array() *= f.colwise().norm().transpose().array();
  return r;
}

void balance_terms(CPState& x) {
  const int n = x.n();
  for (Index k = 0; k < x.rank(); ++k) {
    double logsum = 0.0;
    bool zero = false;
    for (int q = 0; q < n; ++q) {
      const double c = x.factor(q).col(k).norm();
      if (c == 0.0) zero = true;
      else logsum += std::log(c);
    }
    if (zero) continue;
    const double target = std::exp(logsum / n);
    for (int q = 0; q < n; ++q) {
      auto col = x.factor(q).col(k);
      col *= target / col.norm();
    }
  }
}

Bits bits_from_index(std::uint64_t index, int n) {
  Bits b(n);
  for (int q = 0; q < n; ++q) b[q] = (index >> (n - 1 - q)) & 1U;
  return b;
}

std::uint64_t index_from_bits(const Bits& bits) {
  std::uint64_t idx = 0;
  for (auto b : bits) idx = (idx << 1) | (b ? 1U : 0U);
  return idx;
}

Bits parse_bits(const std::string& s) {
  Bits b;
  b.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw DimensionError("parse_bits: expected 0/1 string");
    b.push_back(c == '1');
  }
  if (b.empty()) throw DimensionError("parse_bits: empty string");
  return b;
}

std::string format_bits(const Bits& bits) {
  std::string s;
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace cpsim
