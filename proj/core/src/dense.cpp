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

#include "cpsim/dense.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>

namespace cpsim {

int dense_cap() {
  if (const char* env = std::getenv("CPSIM_DENSE_CAP")) {
    try {
      const int v = std::stoi(env);
      if (v > 0 && v <= 30) return v;
    } catch (const std::exception&) {
    }
  }
  return 14;
}

namespace {
void check_cap(int n, std::optional<int> cap) {
  const int c = cap.value_or(dense_cap());
  if (n > c)
    throw DenseCapError("dense oracle: " + std::to_string(n) + " qubits exceeds cap " +
                        std::to_string(c));
}

std::uint64_t bit_of(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

void apply_local(Eigen::VectorXcd& v, int n, int q, const Mat2& u) {
  const std::uint64_t b = bit_of(n, q);
  const std::uint64_t dim = v.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & b) continue;
    const cplx a0 = v(i), a1 = v(i | b);
    v(i) = u(0, 0) * a0 + u(0, 1) * a1;
    v(i | b) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}
}  // namespace

DenseState materialize(const CPState& x, std::optional<int> cap) {
  check_cap(x.n(), cap);
  const int n = x.n();
  const std::uint64_t dim = std::uint64_t{1} << n;
  DenseState d{n, Eigen::VectorXcd::Zero(dim)};
  for (Index k = 0; k < x.rank(); ++k) {
    // Build the Kronecker product of the term's columns, qubit 0 outermost.
    Eigen::VectorXcd t = Eigen::VectorXcd::Ones(1);
    for (int q = 0; q < n; ++q) {
      Eigen::VectorXcd next(t.size() * 2);
      for (Index i = 0; i < t.size(); ++i) {
        next(2 * i) = t(i) * x.factor(q)(0, k);
        next(2 * i + 1) = t(i) * x.factor(q)(1, k);
      }
      t.swap(next);
    }
    d.amp += t;
  }
  return d;
}

DenseState dense_basis(int n, std::uint64_t index) {
  check_cap(n, std::nullopt);
  DenseState d{n, Eigen::VectorXcd::Zero(std::uint64_t{1} << n)};
  d.amp(index) = 1.0;
  return d;
}

void apply_dense_gate(DenseState& x, const GateOp& g) {
  const int n = x.n;
  validate_gate(g, n);
  if (const auto* o = std::get_if<OneQubit>(&g)) {
    apply_local(x.amp, n, o->target, o->u);
  } else if (const auto* c = std::get_if<Controlled>(&g)) {
    const std::uint64_t tb = bit_of(n, c->target);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(x.amp.size()); ++i) {
      if (i & tb) continue;
      bool on = true;
      for (const auto& ct : c->controls)
        if (((i & bit_of(n, ct.qubit)) != 0) != (ct.bit == 1)) on = false;
      if (!on) continue;
      const cplx a0 = x.amp(i), a1 = x.amp(i | tb);
      x.amp(i) = c->u(0, 0) * a0 + c->u(0, 1) * a1;
      x.amp(i | tb) = c->u(1, 0) * a0 + c->u(1, 1) * a1;
    }
  } else if (const auto* s = std::get_if<Swap>(&g)) {
    const std::uint64_t b1 = bit_of(n, s->q1), b2 = bit_of(n, s->q2);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(x.amp.size()); ++i)
      if ((i & b1) && !(i & b2)) std::swap(x.amp(i), x.amp((i & ~b1) | b2));
  } else {
    const auto& k = std::get<KronSum>(g);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(x.amp.size());
    for (const auto& t : k.terms) {
      Eigen::VectorXcd v = x.amp;
      for (const auto& [q, m] : t.ops) apply_local(v, n, q, m);
      out += t.coeff * v;
    }
    x.amp.swap(out);
  }
}

DenseState apply_dense(const Circuit& c, DenseState x) {
  if (c.n != x.n) throw DimensionError("apply_dense: qubit count mismatch");
  for (const auto& l : c.layers)
    for (const auto& g : l) apply_dense_gate(x, g);
  return x;
}

Eigen::MatrixXcd circuit_matrix(const Circuit& c) {
  check_cap(c.n, 10);
  const Index dim = Index{1} << c.n;
  Eigen::MatrixXcd u(dim, dim);
  for (Index j = 0; j < dim; ++j) u.col(j) = apply_dense(c, dense_basis(c.n, j)).amp;
  return u;
}

Eigen::MatrixXcd dft_matrix(int n) {
  check_cap(n, 12);
  const Index dim = Index{1} << n;
  Eigen::MatrixXcd f(dim, dim);
  const double s = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Index j = 0; j < dim; ++j)
    for (Index k = 0; k < dim; ++k)
      f(j, k) = std::polar(s, 2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) /
                                  static_cast<double>(dim));
  return f;
}

Eigen::MatrixXcd shift_matrix(int n) {
  check_cap(n, 12);
  const Index dim = Index{1} << n;
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(dim, dim);
  for (Index y = 0; y < dim; ++y) l((y + 1) % dim, y) = 1.0;
  return l;
}

Eigen::MatrixXd transition_matrix(int n, int m) {
  if (m < 0 || m >= n) throw DimensionError("transition_matrix: need 0 <= m < n");
  check_cap(n, 12);
  const Index big_n = Index{1} << n;
  const Index a = (Index{1} << m) - 1;
  const double v = 1.0 / std::sqrt(static_cast<double>(big_n - a));
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(big_n, big_n);
  for (Index x = 0; x < big_n; ++x)
    for (Index y = 0; y < big_n; ++y)
      if (((y - x) % big_n + big_n) % big_n >= a) p(y, x) = v;
  return p;
}

double dense_fidelity(const DenseState& a, const DenseState& b) {
  const double na = a.amp.squaredNorm(), nb = b.amp.squaredNorm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::norm(a.amp.dot(b.amp)) / (na * nb);
}

double dense_marked_probability(const DenseState& x, const std::vector<Bits>& marked,
                                const std::vector<int>& reg) {
  double p = 0.0;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(x.amp.size()); ++i) {
    for (const auto& m : marked) {
      bool match = true;
      for (std::size_t j = 0; j < reg.size() && match; ++j)
        match = (((i & bit_of(x.n, reg[j])) != 0) == (m[j] == 1));
      if (match) {
        p += std::norm(x.amp(i));
        break;
      }
    }
  }
  return p;
}

double best_rank_fidelity(const DenseState& x, Index s, int restarts, std::uint64_t seed) {
  const int n = x.n;
  if (n > 10) throw DenseCapError("best_rank_fidelity: n must be <= 10");
  const double nt2 = x.amp.squaredNorm();
  if (nt2 == 0.0) return 1.0;
  // Any n-qubit tensor has CP rank at most 2^(n-1).
  if (s >= (Index{1} << (n - 1))) return 1.0;
  const std::uint64_t dim = x.amp.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  double best = 0.0;
  for (int rs = 0; rs < restarts; ++rs) {
    std::vector<Eigen::MatrixXcd> b(n, Eigen::MatrixXcd(2, s));
    for (auto& f : b)
      for (Index i = 0; i < f.size(); ++i) f(i) = cplx(g(rng), g(rng));
    double prev = -1.0, fid = 0.0;
    for (int sweep = 0; sweep < 500; ++sweep) {
      for (int i = 0; i < n; ++i) {
        Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Ones(s, s);
        for (int j = 0; j < n; ++j)
          if (j != i) gamma.array() *= (b[j].transpose() * b[j].conjugate()).array();
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, s);
        for (std::uint64_t idx = 0; idx < dim; ++idx) {
          Eigen::RowVectorXcd w = Eigen::RowVectorXcd::Ones(s);
          for (int j = 0; j < n; ++j)
            if (j != i) w.array() *= b[j].row((idx >> (n - 1 - j)) & 1).conjugate().array();
          m.row((idx >> (n - 1 - i)) & 1) += x.amp(idx) * w;
        }
        b[i] = m * gamma.completeOrthogonalDecomposition().pseudoInverse();
      }
      Eigen::VectorXcd model = Eigen::VectorXcd::Zero(dim);
      for (std::uint64_t idx = 0; idx < dim; ++idx) {
        Eigen::RowVectorXcd w = Eigen::RowVectorXcd::Ones(s);
        for (int j = 0; j < n; ++j) w.array() *= b[j].row((idx >> (n - 1 - j)) & 1).array();
        model(idx) = w.sum();
      }
      const double nm2 = model.squaredNorm();
      fid = nm2 > 0.0 ? std::norm(model.dot(x.amp)) / (nm2 * nt2) : 0.0;
      if (std::abs(fid - prev) < 1e-13) break;
      prev = fid;
    }
    best = std::max(best, fid);
  }
  return std::min(best, 1.0);
}

DenseState dense_grover(int n, const std::vector<Bits>& marked, long iterations) {
  check_cap(n, 26);
  const std::uint64_t dim = std::uint64_t{1} << n;
  const double h = 1.0 / std::sqrt(static_cast<double>(dim));
  DenseState x{n, Eigen::VectorXcd::Constant(dim, h)};
  for (long t = 0; t < iterations; ++t) {
    for (const auto& m : marked) x.amp(index_from_bits(m)) *= -1.0;
    const cplx overlap = x.amp.sum() * h;
    x.amp = (2.0 * overlap * h) * Eigen::VectorXcd::Ones(dim) - x.amp;
  }
  return x;
}

DenseState dense_walk_cyclic(int n, int m, const Bits& marked, long iterations) {
  check_cap(2 * n, std::nullopt);
  const Eigen::MatrixXd p = transition_matrix(n, m);
  const Index big_n = p.rows();
  const Index xs = static_cast<Index>(index_from_bits(marked));
  // Amplitudes as a matrix psi(x, y) for |x>|y>.
  Eigen::MatrixXcd psi(big_n, big_n);
  for (Index x = 0; x < big_n; ++x)
    psi.row(x) = p.col(0).transpose().cast<cplx>() / std::sqrt(static_cast<double>(big_n));
  auto diffuse = [&]() {
    for (Index x = 0; x < big_n; ++x) {
      const Eigen::VectorXcd phi = p.col(x).cast<cplx>();
      const cplx c = phi.dot(psi.row(x).transpose());
      psi.row(x) = (2.0 * c * phi).transpose() - psi.row(x);
    }
  };
  for (long t = 0; t < iterations; ++t) {
    for (int rep = 0; rep < 2; ++rep) {
      diffuse();
      psi.transposeInPlace();
    }
    psi.row(xs) *= -1.0;
  }
  DenseState out{2 * n, Eigen::VectorXcd(big_n * big_n)};
  for (Index x = 0; x < big_n; ++x)
    for (Index y = 0; y < big_n; ++y) out.amp(x * big_n + y) = psi(x, y);
  return out;
}

}  // namespace cpsim
