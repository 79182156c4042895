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

#include "cpsim/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace cpsim {

std::string to_string(Method m) {
  switch (m) {
    case Method::none: return "none";
    case Method::direct: return "direct";
    case Method::als: return "als";
    case Method::dominant: return "dominant";
  }
  return "none";
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::direct: return "direct";
    case Strategy::als: return "als";
    case Strategy::direct_then_als: return "direct-then-als";
  }
  return "direct";
}

Strategy parse_strategy(const std::string& s) {
  if (s == "direct") return Strategy::direct;
  if (s == "als") return Strategy::als;
  if (s == "direct-then-als" || s == "direct_then_als") return Strategy::direct_then_als;
  throw std::invalid_argument("unknown strategy: " + s);
}

void AlsConfig::validate() const {
  if (rank < 1) throw std::invalid_argument("AlsConfig: rank must be >= 1");
  if (restarts < 1) throw std::invalid_argument("AlsConfig: restarts must be >= 1");
  if (max_sweeps < 1) throw std::invalid_argument("AlsConfig: max_sweeps must be >= 1");
  if (!(pinv_cutoff > 0.0)) throw std::invalid_argument("AlsConfig: cutoff must be > 0");
  if (target_norm2 && !(std::isfinite(*target_norm2) && *target_norm2 >= 0.0))
    throw std::invalid_argument("AlsConfig: target_norm2 must be finite and >= 0");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t restart, std::uint64_t layer) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ restart) ^ (layer * 0x632be59bd9b4e019ULL));
}

double normalized_overlap(const CPState& a, const CPState& b) {
  const double na = std::abs(inner_product(a, a));
  const double nb = std::abs(inner_product(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(std::norm(inner_product(a, b)) / (na * nb), 0.0, 1.0);
}

Reduced direct_eliminate(const CPState& x, double tol) {
  const int n = x.n();
  const Index r = x.rank();
  std::vector<Factor> unit(n);
  Eigen::VectorXd alpha = Eigen::VectorXd::Ones(r);
  for (int q = 0; q < n; ++q) {
    const Eigen::RowVectorXd cn = x.factor(q).colwise().norm();
    alpha.array() *= cn.transpose().array();
    unit[q] = x.factor(q);
    for (Index k = 0; k < r; ++k)
      if (cn(k) > 0.0) unit[q].col(k) /= cn(k);
  }
  std::vector<char> alive(r);
  for (Index k = 0; k < r; ++k) alive[k] = alpha(k) >= kPruneTol;
  std::vector<cplx> s(r, 1.0);

  for (Index p = 0; p < r; ++p) {
    if (!alive[p]) continue;
    for (Index q = p + 1; q < r; ++q) {
      if (!alive[q]) continue;
      cplx c = 1.0;
      for (int m = 0; m < n && std::abs(c) >= 1.0 - tol - 1e-15; ++m)
        c *= unit[m].col(p).dot(unit[m].col(q));
      if (std::abs(std::abs(c) - 1.0) <= tol) {
        s[p] += c * alpha(q) / alpha(p);
        alive[q] = 0;
      }
    }
    if (std::abs(s[p]) * alpha(p) < kPruneTol) alive[p] = 0;
  }

  std::vector<Index> keep;
  for (Index k = 0; k < r; ++k)
    if (alive[k]) keep.push_back(k);
  CPState out = select_terms(x, keep);
  for (std::size_t j = 0; j < keep.size(); ++j) out.factor(0).col(j) *= s[keep[j]];

  Reduced res{std::move(out), {}};
  res.report.method = Method::direct;
  res.report.rank_in = r;
  res.report.rank_out = res.state.rank();
  res.report.fidelity = res.state.rank() == r ? 1.0 : normalized_overlap(res.state, x);
  return res;
}

namespace {

struct Solver {
  Eigen::LLT<Eigen::MatrixXcd> llt;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig;
  Eigen::MatrixXcd scaled, rhs;

  // Solves B * gamma = m for B. Gamma is Jacobi-scaled first so that tiny but
  // independent columns do not push the Cholesky rcond under the threshold;
  // columns whose diagonal is below cutoff * max act as pinv null space.
  // Returns false if gamma is numerically zero.
  bool solve(const Eigen::MatrixXcd& gamma, const Eigen::MatrixXcd& m, double cutoff,
             Factor& out) {
    const Index s = gamma.rows();
    const Eigen::VectorXd diag = gamma.diagonal().real();
    const double dmax = diag.maxCoeff();
    if (!(dmax > 0.0) || !std::isfinite(dmax)) return false;
    Eigen::VectorXd w(s);
    for (Index i = 0; i < s; ++i) w(i) = diag(i) > cutoff * dmax ? 1.0 / std::sqrt(diag(i)) : 0.0;
    scaled = w.asDiagonal() * gamma * w.asDiagonal();
    for (Index i = 0; i < s; ++i)
      if (w(i) == 0.0) scaled(i, i) = 1.0;
    rhs = w.asDiagonal() * m.adjoint();
    llt.compute(scaled);
    if (llt.info() == Eigen::Success && llt.rcond() > 1e-10) {
      out = (w.asDiagonal() * llt.solve(rhs)).adjoint();
      return true;
    }
    eig.compute(scaled);
    const Eigen::VectorXd& lam = eig.eigenvalues();
    const double smax = lam.cwiseAbs().maxCoeff();
    Eigen::VectorXd inv(lam.size());
    for (Index i = 0; i < lam.size(); ++i)
      inv(i) = std::abs(lam(i)) > cutoff * smax ? 1.0 / lam(i) : 0.0;
    const Eigen::MatrixXcd& v = eig.eigenvectors();
    out = (w.asDiagonal() * (v * (inv.asDiagonal() * (v.adjoint() * rhs)))).adjoint();
    return true;
  }
};

struct RestartResult {
  std::vector<Factor> b;
  double fidelity = -1.0;
  int sweeps = 0;
  int failed_mode = -1;
};

// Plain complex product; std::complex operator* takes the slow C99 NaN path.
inline cplx mul(cplx x, cplx y) {
  return {x.real() * y.real() - x.imag() * y.imag(), x.real() * y.imag() + x.imag() * y.real()};
}

// dst(k, l) = src(k, l) * (a(0, k) conj(b(0, l)) + a(1, k) conj(b(1, l))), the
// cross product of one mode folded into a Hadamard product without storing it.
void fold_cross(const Factor& a, const Factor& b, const Eigen::MatrixXcd& src,
                Eigen::MatrixXcd& dst) {
  const Index r = a.cols();
  const Index s = b.cols();
  dst.resize(r, s);
  for (Index l = 0; l < s; ++l) {
    const cplx b0 = std::conj(b(0, l));
    const cplx b1 = std::conj(b(1, l));
    const cplx* in = src.col(l).data();
    cplx* out = dst.col(l).data();
    for (Index k = 0; k < r; ++k) out[k] = mul(in[k], mul(a(0, k), b0) + mul(a(1, k), b1));
  }
}

// m = a * (p .* q) without the R x s temporary.
void mttkrp(const Factor& a, const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& q,
            Eigen::Matrix<cplx, 2, Eigen::Dynamic>& m) {
  const Index r = a.cols();
  const Index s = p.cols();
  m.resize(2, s);
  for (Index l = 0; l < s; ++l) {
    const cplx* pc = p.col(l).data();
    const cplx* qc = q.col(l).data();
    cplx m0 = 0.0, m1 = 0.0;
    for (Index k = 0; k < r; ++k) {
      const cplx h = mul(pc[k], qc[k]);
      m0 += mul(a(0, k), h);
      m1 += mul(a(1, k), h);
    }
    m(0, l) = m0;
    m(1, l) = m1;
  }
}

RestartResult run_restart(const CPState& x, double norm_t2, const AlsConfig& cfg,
                          std::vector<Factor> b, int restart) {
  const int n = x.n();
  const Index r = x.rank();
  const Index s = cfg.rank;
  RestartResult res;

  std::vector<Eigen::MatrixXcd> gram(n);
  for (int j = 0; j < n; ++j) gram[j] = b[j].transpose() * b[j].conjugate();
  std::vector<Eigen::MatrixXcd> suf_s(n + 1), suf_c(n + 1);
  suf_s[n] = Eigen::MatrixXcd::Ones(s, s);
  suf_c[n] = Eigen::MatrixXcd::Ones(r, s);
  Eigen::MatrixXcd pre_s, pre_c, gamma;
  Eigen::Matrix<cplx, 2, Eigen::Dynamic> m;
  Solver solver;
  double prev = -1.0;

  for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    for (int j = n - 1; j >= 1; --j) {
      suf_s[j] = gram[j].cwiseProduct(suf_s[j + 1]);
      fold_cross(x.factor(j), b[j], suf_c[j + 1], suf_c[j]);
    }
    pre_s = Eigen::MatrixXcd::Ones(s, s);
    pre_c = Eigen::MatrixXcd::Ones(r, s);
    for (int i = 0; i < n; ++i) {
      gamma = pre_s.cwiseProduct(suf_s[i + 1]);
      if (cfg.observer && cfg.observer->on_mode) cfg.observer->on_mode(restart, sweep, i, gamma);
      mttkrp(x.factor(i), pre_c, suf_c[i + 1], m);
      if (!solver.solve(gamma, m, cfg.pinv_cutoff, b[i])) {
        res.failed_mode = i;
        return res;
      }
      gram[i] = b[i].transpose() * b[i].conjugate();
      pre_s.array() *= gram[i].array();
      fold_cross(x.factor(i), b[i], pre_c, pre_c);
    }
    const double norm_x2 = std::abs(pre_s.sum());
    const double f = norm_x2 > 0.0 ? std::norm(pre_c.sum()) / (norm_x2 * norm_t2) : 0.0;
    res.sweeps = sweep;
    if (cfg.observer && cfg.observer->on_sweep)
      cfg.observer->on_sweep(restart, sweep, CPState(b), f);
    if (!b[0].allFinite()) {
      res.failed_mode = 0;
      return res;
    }
    res.fidelity = f;
    if (std::abs(f - prev) < cfg.tol) break;
    prev = f;
  }
  res.b = std::move(b);
  return res;
}

std::vector<Factor> random_guess(int n, Index s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Factor> b(n, Factor(2, s));
  for (auto& f : b)
    for (Index k = 0; k < s; ++k)
      for (int row = 0; row < 2; ++row) f(row, k) = u(rng);
  return b;
}

}  // namespace

Reduced cp_als(const CPState& x, const AlsConfig& cfg, const CPState* warm) {
  cfg.validate();
  Reduced out{x, {}};
  out.report.rank_in = x.rank();
  out.report.rank_out = x.rank();
  out.report.layer = static_cast<long>(cfg.layer);
  if (x.rank() <= cfg.rank) return out;
  const double norm_t2 = cfg.target_norm2 ? *cfg.target_norm2 : std::abs(inner_product(x, x));
  if (norm_t2 == 0.0) {
    out.state = CPState(x.n(), 0);
    out.report.rank_out = 0;
    return out;
  }
  if (warm && (warm->n() != x.n() || warm->rank() > cfg.rank))
    throw DimensionError("cp_als: warm start has wrong shape");

  RestartResult best;
  int best_restart = -1;
  int failed_mode = -1;
  for (int rs = 0; rs < cfg.restarts; ++rs) {
    std::vector<Factor> b = random_guess(x.n(), cfg.rank, derive_seed(cfg.seed, rs, cfg.layer));
    if (rs == 0 && warm) {
      // Pad a lower-rank warm start with the random columns.
      for (int q = 0; q < x.n(); ++q) b[q].leftCols(warm->rank()) = warm->factor(q);
    }
    RestartResult rr = run_restart(x, norm_t2, cfg, std::move(b), rs);
    if (rr.failed_mode >= 0) {
      failed_mode = rr.failed_mode;
      continue;
    }
    if (rr.fidelity > best.fidelity) {
      best = std::move(rr);
      best_restart = rs;
    }
  }
  if (best_restart < 0)
    throw AlsError("cp_als: Gram product singular in every restart at mode " +
                       std::to_string(failed_mode),
                   failed_mode);

  CPState model(std::move(best.b));
  const double norm_x = norm(model);
  if (!(norm_x > 0.0))
    throw AlsError("cp_als: fitted model vanished", 0);
  model.factor(0) *= std::sqrt(norm_t2) / norm_x;
  balance_terms(model);

  out.state = std::move(model);
  out.report.method = Method::als;
  out.report.rank_out = out.state.rank();
  // The model now has norm^2 norm_t2, so only the cross term is needed.
  out.report.fidelity =
      std::clamp(std::norm(inner_product(out.state, x)) / (norm_t2 * norm_t2), 0.0, 1.0);
  out.report.sweeps = best.sweeps;
  out.report.restart = best_restart;
  return out;
}

Reduced keep_dominant(const CPState& x, Index limit) {
  Reduced out{x, {}};
  out.report.rank_in = x.rank();
  out.report.rank_out = x.rank();
  if (x.rank() <= limit) return out;
  const Eigen::VectorXd nrm = term_norms(x);
  std::vector<Index> order(x.rank());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&nrm](Index a, Index b) { return nrm(a) > nrm(b); });
  order.resize(limit);
  std::sort(order.begin(), order.end());
  out.state = select_terms(x, order);
  out.report.method = Method::dominant;
  out.report.rank_out = limit;
  out.report.fidelity = normalized_overlap(out.state, x);
  return out;
}

Reduced reduce(const CPState& x, Index limit, Strategy strategy, const AlsConfig& cfg,
               const CPState* warm) {
  if (limit < 1) throw std::invalid_argument("reduce: limit must be >= 1");
  Reduced out{x, {}};
  out.report.layer = static_cast<long>(cfg.layer);
  out.report.rank_in = x.rank();
  out.report.rank_out = x.rank();
  if (x.rank() <= limit) return out;

  AlsConfig c = cfg;
  c.rank = limit;
  switch (strategy) {
    case Strategy::direct:
      out = direct_eliminate(x);
      break;
    case Strategy::als:
      out = cp_als(x, c, warm);
      break;
    case Strategy::direct_then_als: {
      Reduced d = direct_eliminate(x);
      if (d.state.rank() <= limit) {
        out = std::move(d);
        break;
      }
      out = cp_als(d.state, c, warm);
      out.report.fidelity *= d.report.fidelity;
      out.report.rank_in = x.rank();
      break;
    }
  }
  out.report.layer = static_cast<long>(cfg.layer);
  return out;
}

}  // namespace cpsim
