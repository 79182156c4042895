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

#include "cpsim/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace cpsim {

void Circuit::append(const Circuit& c) {
  if (c.n != n) throw DimensionError("Circuit::append: qubit count mismatch");
  layers.insert(layers.end(), c.layers.begin(), c.layers.end());
}

std::size_t Circuit::gate_count() const {
  std::size_t k = 0;
  for (const auto& l : layers) k += l.size();
  return k;
}

std::size_t Circuit::count(const std::string& nm) const {
  std::size_t k = 0;
  for (const auto& l : layers)
    for (const auto& g : l)
      if (gate_name(g) == nm) ++k;
  return k;
}

void Circuit::validate() const {
  if (n <= 0) throw DimensionError("Circuit: qubit count must be positive");
  for (const auto& l : layers) {
    std::vector<char> used(n, 0);
    for (const auto& g : l) {
      validate_gate(g, n);
      for (int q : gate_qubits(g)) {
        if (used[q]) throw DimensionError("Circuit: gates in a layer overlap");
        used[q] = 1;
      }
    }
  }
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.n, c.name + "^dag");
  out.params = c.params;
  for (auto it = c.layers.rbegin(); it != c.layers.rend(); ++it) {
    Layer l;
    for (const auto& g : *it) l.push_back(adjoint(g));
    out.layers.push_back(std::move(l));
  }
  return out;
}

Circuit embed(const Circuit& c, int n, int offset) {
  if (offset < 0 || offset + c.n > n) throw DimensionError("embed: out of range");
  Circuit out(n, c.name);
  out.params = c.params;
  for (const auto& l : c.layers) {
    Layer nl;
    for (const auto& g : l) {
      nl.push_back(std::visit(
          [offset](auto op) -> GateOp {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, OneQubit>) {
              op.target += offset;
            } else if constexpr (std::is_same_v<T, Controlled>) {
              op.target += offset;
              for (auto& ct : op.controls) ct.qubit += offset;
            } else if constexpr (std::is_same_v<T, Swap>) {
              op.q1 += offset;
              op.q2 += offset;
            } else {
              for (auto& t : op.terms)
                for (auto& p : t.ops) p.first += offset;
            }
            return op;
          },
          g));
    }
    out.layers.push_back(std::move(nl));
  }
  return out;
}

Circuit build_qft(int n) {
  if (n < 1) throw DimensionError("build_qft: n must be >= 1");
  Circuit c(n, "qft");
  c.params["n"] = n;
  for (int j = 0; j < n; ++j) {
    c.add(make_one_qubit("H", j));
    for (int k = j + 1; k < n; ++k)
      c.add(make_controlled("Rn(" + std::to_string(k - j + 1) + ")^dag", {{k, 1}}, j));
  }
  if (n >= 2) {
    Layer swaps;
    for (int j = 0; j < n / 2; ++j) swaps.push_back(Swap{j, n - 1 - j});
    c.add_layer(std::move(swaps));
  }
  return c;
}

Circuit build_inverse_qft(int n) {
  Circuit c = inverse(build_qft(n));
  c.name = "inverse_qft";
  return c;
}

CPState build_phase_estimation_register(int n, double theta) {
  if (n < 1) throw DimensionError("phase register: n must be >= 1");
  if (!(theta >= 0.0 && theta < 1.0)) throw DimensionError("phase register: theta not in [0,1)");
  std::vector<Eigen::Vector2cd> q(n);
  const double h = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < n; ++j) {
    const double frac = std::fmod(std::ldexp(theta, n - 1 - j), 1.0);
    q[j] << h, std::polar(h, 2.0 * std::numbers::pi * frac);
  }
  return product_state(q);
}

long grover_iterations(int n, std::size_t a) {
  if (a == 0) throw DimensionError("grover: empty marked set");
  const double big_n = std::ldexp(1.0, n);
  return static_cast<long>(std::floor(std::numbers::pi / 4.0 * std::sqrt(big_n / a)));
}

GroverOps build_grover(int n, const std::vector<Bits>& marked, bool rank2_mode) {
  if (n < 1) throw DimensionError("build_grover: n must be >= 1");
  if (marked.empty()) throw DimensionError("build_grover: marked set is empty");
  std::set<Bits> seen;
  for (const auto& m : marked) {
    if (static_cast<int>(m.size()) != n) throw DimensionError("build_grover: bad string length");
    if (!seen.insert(m).second) throw DimensionError("build_grover: duplicate marked string");
  }
  std::vector<int> all(n);
  for (int q = 0; q < n; ++q) all[q] = q;

  GroverOps g;
  g.n = n;
  g.marked = marked;
  g.oracle = marked_reflection(marked, all);
  g.diffusion = Circuit(n, "diffusion");
  Layer hs;
  for (int q = 0; q < n; ++q) hs.push_back(make_one_qubit("H", q));
  g.diffusion.add_layer(hs);
  g.diffusion.add(product_reflection(
      std::vector<Eigen::Vector2cd>(n, Eigen::Vector2cd(1.0, 0.0)), all));
  g.diffusion.add_layer(hs);
  g.iterations = rank2_mode ? grover_iterations(n, 1) : grover_iterations(n, marked.size());
  return g;
}

std::string to_string(WalkFamily f) {
  switch (f) {
    case WalkFamily::complete_loops: return "complete-loops";
    case WalkFamily::bipartite: return "bipartite";
    case WalkFamily::cyclic: return "cyclic";
  }
  return "complete-loops";
}

WalkFamily parse_walk_family(const std::string& s) {
  if (s == "complete-loops") return WalkFamily::complete_loops;
  if (s == "bipartite") return WalkFamily::bipartite;
  if (s == "cyclic" || s == "complete") return WalkFamily::cyclic;
  throw std::invalid_argument("unknown graph family: " + s);
}

int WalkSpec::total_qubits() const {
  return family == WalkFamily::bipartite ? 2 * n + 2 : 2 * n;
}

void WalkSpec::validate() const {
  if (n < 1) throw DimensionError("walk: register size must be >= 1");
  if (static_cast<int>(marked.size()) != n) throw DimensionError("walk: marked vertex has wrong length");
  if (family == WalkFamily::cyclic && (m < 1 || m >= n))
    throw DimensionError("walk: cyclic family requires 1 <= m < n");
}

namespace {
std::vector<int> range(int from, int count) {
  std::vector<int> r(count);
  for (int i = 0; i < count; ++i) r[i] = from + i;
  return r;
}

Eigen::Vector2cd h_vec() { return Eigen::Vector2cd::Constant(1.0 / std::sqrt(2.0)); }

Layer swap_layer(const std::vector<int>& a, const std::vector<int>& b) {
  Layer l;
  for (std::size_t i = 0; i < a.size(); ++i) l.push_back(Swap{a[i], b[i]});
  return l;
}

long walk_iterations(int n) { return grover_iterations(n, 1); }
}  // namespace

WalkProgram build_walk_complete_loops(int n, const Bits& marked) {
  WalkProgram w;
  w.spec = WalkSpec{WalkFamily::complete_loops, n, 1, marked, BipartiteOracle::first_register};
  w.spec.validate();
  const auto r1 = range(0, n), r2 = range(n, n);
  w.step = Circuit(2 * n, "walk_complete_loops");
  w.step.params["n"] = n;
  const std::vector<Eigen::Vector2cd> hv(n, h_vec());
  w.step.add(product_reflection(hv, r1));
  w.step.add(product_reflection(hv, r2));
  w.step.add(marked_reflection({marked}, r1));
  w.initial = uniform_state(2 * n);
  w.iterations = walk_iterations(n);
  w.metric_register = r1;
  return w;
}

WalkProgram build_walk_bipartite(int n1, const Bits& marked, BipartiteOracle oracle) {
  WalkProgram w;
  w.spec = WalkSpec{WalkFamily::bipartite, n1, 1, marked, oracle};
  w.spec.validate();
  const int t1 = 0, t2 = n1 + 1;
  const auto x1 = range(1, n1), x2 = range(n1 + 2, n1);
  const int total = 2 * n1 + 2;

  const Mat2 hh = h_vec() * h_vec().adjoint();
  KronSum ud{{KronTerm{-1.0, {}}}, "bipartite_diffusion"};
  for (int tag = 0; tag < 2; ++tag) {
    KronTerm t{2.0, {{t1, gates::E(tag)}, {t2, gates::E(1 - tag)}}};
    for (int q : x2) t.ops.emplace_back(q, hh);
    ud.terms.push_back(std::move(t));
  }
  std::vector<int> reg_a{t1}, reg_b{t2};
  reg_a.insert(reg_a.end(), x1.begin(), x1.end());
  reg_b.insert(reg_b.end(), x2.begin(), x2.end());

  KronSum uo;
  if (oracle == BipartiteOracle::tagged) {
    Bits full{0};
    full.insert(full.end(), marked.begin(), marked.end());
    full.push_back(1);
    std::vector<int> reg = reg_a;
    reg.push_back(t2);
    uo = marked_reflection({full}, reg);
  } else {
    uo = marked_reflection({marked}, x1);
  }

  w.step = Circuit(total, "walk_bipartite");
  w.step.params["n1"] = n1;
  w.step.add(ud);
  w.step.add_layer(swap_layer(reg_a, reg_b));
  w.step.add(ud);
  w.step.add_layer(swap_layer(reg_a, reg_b));
  w.step.add(uo);

  // (|0>|h>|1>|h> + |1>|h>|0>|h>) / sqrt 2
  CPState init(total, 2);
  for (int q = 0; q < total; ++q) init.factor(q).setConstant(h_vec()(0));
  for (int k = 0; k < 2; ++k) {
    init.factor(t1).col(k) = Eigen::Vector2cd::Unit(k);
    init.factor(t2).col(k) = Eigen::Vector2cd::Unit(1 - k);
  }
  init.factor(t1) *= 1.0 / std::sqrt(2.0);
  w.initial = init;
  w.iterations = walk_iterations(n1);
  w.metric_register = x1;
  return w;
}

Circuit build_increment(int n, const std::vector<int>& reg, const std::vector<Control>& extra) {
  Circuit c(n, "increment");
  const int len = static_cast<int>(reg.size());
  for (int j = 0; j < len; ++j) {
    std::vector<Control> ctl = extra;
    for (int i = j + 1; i < len; ++i) ctl.push_back({reg[i], 1});
    if (ctl.empty()) c.add(make_one_qubit("X", reg[j]));
    else c.add(make_controlled("X", std::move(ctl), reg[j]));
  }
  return c;
}

Circuit build_shift_cascade(int n, const std::vector<int>& reg_a, const std::vector<int>& reg_b) {
  if (reg_a.size() != reg_b.size()) throw DimensionError("shift cascade: register sizes differ");
  Circuit c(n, "shift_cascade");
  for (std::size_t k = 0; k < reg_a.size(); ++k) {
    // Control qubit k carries weight 2^(L-1-k): increment the top k+1 bits.
    std::vector<int> top(reg_b.begin(), reg_b.begin() + static_cast<long>(k) + 1);
    c.append(build_increment(n, top, {{reg_a[k], 1}}));
  }
  return c;
}

Circuit build_k_complete(int n, const std::vector<int>& reg) {
  Circuit c(n, "k_complete");
  const int len = static_cast<int>(reg.size());
  auto theta = [len](int i) {
    const double num = std::ldexp(1.0, len - i) - 1.0;
    const double den = std::ldexp(1.0, len - i + 1) - 1.0;
    return std::acos(std::sqrt(num / den));
  };
  c.add(OneQubit{reg[0], gates::Ry(theta(1)), "Ry(" + std::to_string(theta(1)) + ")"});
  for (int i = 2; i <= len; ++i) {
    const int q = reg[i - 1];
    std::vector<Control> ctl;
    for (int p = 0; p < i - 1; ++p) ctl.push_back({reg[p], 0});
    // H unless every earlier qubit is |0>, in which case Ry(theta_i).
    c.add(make_one_qubit("H", q));
    c.add(Controlled{std::move(ctl), q, gates::Ry(theta(i)) * gates::H(), "U"});
  }
  return c;
}

WalkProgram build_walk_cyclic(int n, int m, const Bits& marked) {
  WalkProgram w;
  w.spec = WalkSpec{WalkFamily::cyclic, n, m, marked, BipartiteOracle::first_register};
  w.spec.validate();
  if (m != 1)
    throw DimensionError("walk: cyclic graphs with a > 1 are only available in the dense oracle");
  const auto r1 = range(0, n), r2 = range(n, n);
  const int total = 2 * n;

  const Circuit shift = build_shift_cascade(total, r1, r2);
  const Circuit k = build_k_complete(total, r2);
  Mat2 xzx = gates::X() * gates::Z() * gates::X();
  Circuit d(total, "reflect_zero");
  if (n == 1) {
    d.add(OneQubit{r2[0], xzx, "U"});
  } else {
    std::vector<Control> ctl;
    for (int i = 0; i + 1 < n; ++i) ctl.push_back({r2[i], 0});
    d.add(Controlled{std::move(ctl), r2[n - 1], xzx, "U"});
  }

  Circuit ud(total, "walk_diffusion");
  ud.append(inverse(shift));
  ud.append(inverse(k));
  ud.append(d);
  ud.append(k);
  ud.append(shift);

  w.step = Circuit(total, "walk_cyclic");
  w.step.params["n"] = n;
  w.step.params["m"] = m;
  for (int rep = 0; rep < 2; ++rep) {
    w.step.append(ud);
    w.step.add_layer(swap_layer(r1, r2));
  }
  w.step.add(marked_reflection({marked}, r1));

  // |h> (x) (sum_{y != 0} |y>) / sqrt(N - 1)
  const double big_n = std::ldexp(1.0, n);
  CPState init(total, 2);
  for (int q = 0; q < total; ++q) init.factor(q).setConstant(h_vec()(0));
  for (int q : r2) init.factor(q).col(1) = Eigen::Vector2cd(1.0, 0.0);
  init.factor(0).col(0) *= std::sqrt(big_n / (big_n - 1.0));
  init.factor(0).col(1) *= -1.0 / std::sqrt(big_n - 1.0);
  w.initial = init;
  w.iterations = walk_iterations(n);
  w.metric_register = r1;
  return w;
}

WalkProgram build_walk(const WalkSpec& spec) {
  switch (spec.family) {
    case WalkFamily::complete_loops: return build_walk_complete_loops(spec.n, spec.marked);
    case WalkFamily::bipartite: return build_walk_bipartite(spec.n, spec.marked, spec.bipartite_oracle);
    case WalkFamily::cyclic: return build_walk_cyclic(spec.n, spec.m, spec.marked);
  }
  throw DimensionError("walk: unknown family");
}

}  // namespace cpsim
