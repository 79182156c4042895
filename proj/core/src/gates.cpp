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

#include "cpsim/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cpsim {

namespace gates {
Mat2 H() {
  const double h = 1.0 / std::sqrt(2.0);
  Mat2 m;
  m << h, h, h, -h;
  return m;
}
Mat2 X() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}
Mat2 Z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}
Mat2 Rn(int k) {
  if (k < 1) throw DimensionError("Rn: k must be >= 1");
  Mat2 m = Mat2::Identity();
  m(1, 1) = std::polar(1.0, -2.0 * std::numbers::pi / std::ldexp(1.0, k));
  return m;
}
Mat2 Ry(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}
Mat2 E(int bit) {
  Mat2 m = Mat2::Zero();
  m(bit ? 1 : 0, bit ? 1 : 0) = 1.0;
  return m;
}
}  // namespace gates

std::optional<Mat2> named_matrix(const std::string& full) {
  std::string name = full;
  bool dag = false;
  if (name.size() > 4 && name.ends_with("^dag")) {
    dag = true;
    name.resize(name.size() - 4);
  }
  std::optional<Mat2> m;
  auto arg = [&](const std::string& prefix) -> std::optional<std::string> {
    if (name.size() > prefix.size() + 2 && name.starts_with(prefix + "(") &&
        name.back() == ')')
      return name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    return std::nullopt;
  };
  try {
    if (name == "H") m = gates::H();
    else if (name == "X") m = gates::X();
    else if (name == "Z") m = gates::Z();
    else if (name == "I") m = Mat2::Identity();
    else if (auto a = arg("Rn")) m = gates::Rn(std::stoi(*a));
    else if (auto b = arg("Ry")) m = gates::Ry(std::stod(*b));
  } catch (const std::logic_error&) {
    return std::nullopt;
  }
  if (m && dag) m = m->adjoint().eval();
  return m;
}

bool is_unitary(const Mat2& u, double tol) {
  return ((u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff() <= tol);
}

OneQubit make_one_qubit(const std::string& name, int target) {
  auto m = named_matrix(name);
  if (!m) throw DimensionError("unknown gate name: " + name);
  return OneQubit{target, *m, name};
}

Controlled make_controlled(const std::string& name, std::vector<Control> controls,
                           int target) {
  auto m = named_matrix(name);
  if (!m) throw DimensionError("unknown gate name: " + name);
  return Controlled{std::move(controls), target, *m, name};
}

std::vector<int> gate_qubits(const GateOp& g) {
  return std::visit(
      [](const auto& op) -> std::vector<int> {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, OneQubit>) {
          return {op.target};
        } else if constexpr (std::is_same_v<T, Controlled>) {
          std::vector<int> q{op.target};
          for (const auto& c : op.controls) q.push_back(c.qubit);
          return q;
        } else if constexpr (std::is_same_v<T, Swap>) {
          return {op.q1, op.q2};
        } else {
          std::vector<int> q;
          for (const auto& t : op.terms)
            for (const auto& [qq, m] : t.ops) q.push_back(qq);
          std::sort(q.begin(), q.end());
          q.erase(std::unique(q.begin(), q.end()), q.end());
          return q;
        }
      },
      g);
}

void validate_gate(const GateOp& g, int n) {
  auto in_range = [n](int q) { return q >= 0 && q < n; };
  if (const auto* k = std::get_if<KronSum>(&g)) {
    for (const auto& t : k->terms) {
      std::vector<int> seen;
      for (const auto& [q, m] : t.ops) {
        if (!in_range(q)) throw DimensionError("KronSum: qubit out of range");
        if (std::find(seen.begin(), seen.end(), q) != seen.end())
          throw DimensionError("KronSum: repeated qubit in a term");
        seen.push_back(q);
      }
    }
    return;
  }
  auto q = gate_qubits(g);
  for (int x : q)
    if (!in_range(x)) throw DimensionError("gate qubit out of range");
  std::sort(q.begin(), q.end());
  if (std::adjacent_find(q.begin(), q.end()) != q.end())
    throw DimensionError("gate qubits must be distinct");
  if (const auto* c = std::get_if<Controlled>(&g)) {
    if (c->controls.empty()) throw DimensionError("controlled gate without controls");
    for (const auto& ct : c->controls)
      if (ct.bit != 0 && ct.bit != 1) throw DimensionError("control bit must be 0 or 1");
  }
}

namespace {
std::string dag_label(const std::string& label) {
  if (label.empty()) return label;
  if (label.ends_with("^dag")) return label.substr(0, label.size() - 4);
  if (label == "H" || label == "X" || label == "Z" || label == "I") return label;
  return label + "^dag";
}
}  // namespace

GateOp adjoint(const GateOp& g) {
  return std::visit(
      [](const auto& op) -> GateOp {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, OneQubit>) {
          return OneQubit{op.target, op.u.adjoint(), dag_label(op.label)};
        } else if constexpr (std::is_same_v<T, Controlled>) {
          return Controlled{op.controls, op.target, op.u.adjoint(), dag_label(op.label)};
        } else if constexpr (std::is_same_v<T, Swap>) {
          return op;
        } else {
          KronSum out{{}, dag_label(op.label)};
          for (const auto& t : op.terms) {
            KronTerm a{std::conj(t.coeff), {}};
            for (const auto& [q, m] : t.ops) a.ops.emplace_back(q, m.adjoint());
            out.terms.push_back(std::move(a));
          }
          return out;
        }
      },
      g);
}

std::string gate_name(const GateOp& g) {
  if (const auto* o = std::get_if<OneQubit>(&g)) return o->label.empty() ? "U" : o->label;
  if (const auto* c = std::get_if<Controlled>(&g)) return c->controls.size() == 1 ? "CU" : "CCU";
  if (std::holds_alternative<Swap>(g)) return "SWAP";
  return "KRON";
}

namespace {
void check_qubit(const CPState& x, int q, const char* what) {
  if (q < 0 || q >= x.n()) throw DimensionError(std::string(what) + ": qubit out of range");
}

Eigen::Vector2cd project(const Eigen::Vector2cd& a, int bit) {
  Eigen::Vector2cd p = Eigen::Vector2cd::Zero();
  p(bit) = a(bit);
  return p;
}
}  // namespace

CPState apply_one_qubit(const CPState& x, int target, const Mat2& u) {
  check_qubit(x, target, "apply_one_qubit");
  CPState out = x;
  out.factor(target) = u * x.factor(target);
  return out;
}

CPState apply_swap(const CPState& x, int q1, int q2) {
  check_qubit(x, q1, "apply_swap");
  check_qubit(x, q2, "apply_swap");
  if (q1 == q2) throw DimensionError("apply_swap: equal qubits");
  CPState out = x;
  std::swap(out.factor(q1), out.factor(q2));
  return out;
}

CPState apply_controlled(const CPState& x, int control, int on_bit, int target,
                         const Mat2& u) {
  check_qubit(x, control, "apply_controlled");
  check_qubit(x, target, "apply_controlled");
  if (control == target) throw DimensionError("apply_controlled: control == target");
  const int n = x.n();
  const Index r = x.rank();
  CPState out(n, 2 * r);
  Index m = 0;
  for (Index k = 0; k < r; ++k) {
    const Eigen::Vector2cd a = x.factor(control).col(k);
    for (int branch = 0; branch < 2; ++branch) {
      const int bit = branch == 0 ? 1 - on_bit : on_bit;
      const Eigen::Vector2cd pc = project(a, bit);
      if (pc.norm() < kPruneTol) continue;
      for (int q = 0; q < n; ++q) out.factor(q).col(m) = x.factor(q).col(k);
      out.factor(control).col(m) = pc;
      if (branch == 1) out.factor(target).col(m) = u * x.factor(target).col(k);
      ++m;
    }
  }
  for (auto& f : out.factors()) f.conservativeResize(Eigen::NoChange, m);
  return out;
}

CPState apply_multi_controlled(const CPState& x, const std::vector<Control>& controls,
                               int target, const Mat2& u) {
  check_qubit(x, target, "apply_multi_controlled");
  for (const auto& c : controls) {
    check_qubit(x, c.qubit, "apply_multi_controlled");
    if (c.qubit == target) throw DimensionError("apply_multi_controlled: control == target");
  }
  const int n = x.n();
  const Index r = x.rank();
  const Mat2 d = u - Mat2::Identity();
  CPState out(n, 2 * r);
  Index m = 0;
  for (Index k = 0; k < r; ++k) {
    bool all_inside = true;  // every control column already lies in its projector
    bool any_empty = false;
    for (const auto& c : controls) {
      const Eigen::Vector2cd a = x.factor(c.qubit).col(k);
      if (project(a, c.bit).norm() < kPruneTol) any_empty = true;
      if (project(a, 1 - c.bit).norm() >= kPruneTol) all_inside = false;
    }
    for (int q = 0; q < n; ++q) out.factor(q).col(m) = x.factor(q).col(k);
    if (any_empty) {
      ++m;
      continue;
    }
    if (all_inside) {
      out.factor(target).col(m) = u * x.factor(target).col(k);
      ++m;
      continue;
    }
    ++m;
    const Eigen::Vector2cd t = d * x.factor(target).col(k);
    if (t.norm() < kPruneTol) continue;
    for (int q = 0; q < n; ++q) out.factor(q).col(m) = x.factor(q).col(k);
    for (const auto& c : controls)
      out.factor(c.qubit).col(m) = project(x.factor(c.qubit).col(k), c.bit);
    out.factor(target).col(m) = t;
    ++m;
  }
  for (auto& f : out.factors()) f.conservativeResize(Eigen::NoChange, m);
  return out;
}

CPState apply_kron_sum(const CPState& x, const KronSum& op) {
  validate_gate(op, x.n());
  const int n = x.n();
  const Index r = x.rank();
  CPState out(n, static_cast<Index>(op.terms.size()) * r);
  Index m = 0;
  for (const auto& t : op.terms) {
    if (t.coeff == cplx(0.0)) continue;
    for (Index k = 0; k < r; ++k) {
      bool zero = false;
      for (const auto& [q, mat] : t.ops) {
        if ((mat * x.factor(q).col(k)).norm() < kPruneTol) {
          zero = true;
          break;
        }
      }
      if (zero) continue;
      for (int q = 0; q < n; ++q) out.factor(q).col(m) = x.factor(q).col(k);
      for (const auto& [q, mat] : t.ops) out.factor(q).col(m) = mat * x.factor(q).col(k);
      const int cq = t.ops.empty() ? 0 : t.ops.front().first;
      out.factor(cq).col(m) *= t.coeff;
      ++m;
    }
  }
  for (auto& f : out.factors()) f.conservativeResize(Eigen::NoChange, m);
  return out;
}

CPState apply_gate(const CPState& x, const GateOp& g) {
  return std::visit(
      [&x](const auto& op) -> CPState {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, OneQubit>) {
          return apply_one_qubit(x, op.target, op.u);
        } else if constexpr (std::is_same_v<T, Controlled>) {
          if (op.controls.size() == 1)
            return apply_controlled(x, op.controls[0].qubit, op.controls[0].bit, op.target,
                                    op.u);
          return apply_multi_controlled(x, op.controls, op.target, op.u);
        } else if constexpr (std::is_same_v<T, Swap>) {
          return apply_swap(x, op.q1, op.q2);
        } else {
          return apply_kron_sum(x, op);
        }
      },
      g);
}

std::optional<CPState> apply_gate_rank1(const CPState& x, const GateOp& g) {
  if (std::holds_alternative<OneQubit>(g) || std::holds_alternative<Swap>(g))
    return apply_gate(x, g);
  const auto* c = std::get_if<Controlled>(&g);
  if (!c || c->controls.size() != 1) return std::nullopt;
  const int qc = c->controls[0].qubit, b = c->controls[0].bit, qt = c->target;
  check_qubit(x, qc, "apply_gate_rank1");
  check_qubit(x, qt, "apply_gate_rank1");
  CPState out = x;
  Eigen::JacobiSVD<Mat2> svd;
  for (Index k = 0; k < x.rank(); ++k) {
    const Eigen::Vector2cd a = x.factor(qc).col(k), t = x.factor(qt).col(k);
    const Eigen::Vector2cd ut = c->u * t;
    Mat2 m;  // m(i, j): control in |i>, target in |j>
    m.row(1 - b) = a(1 - b) * t.transpose();
    m.row(b) = a(b) * ut.transpose();
    svd.compute(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double s = svd.singularValues()(0);
    out.factor(qc).col(k) = std::sqrt(s) * svd.matrixU().col(0);
    out.factor(qt).col(k) = std::sqrt(s) * svd.matrixV().col(0).conjugate();
  }
  return out;
}

KronSum marked_reflection(const std::vector<Bits>& marked, const std::vector<int>& reg) {
  KronSum op{{KronTerm{1.0, {}}}, "oracle"};
  for (const auto& m : marked) {
    if (m.size() != reg.size()) throw DimensionError("marked string / register mismatch");
    KronTerm t{-2.0, {}};
    for (std::size_t i = 0; i < reg.size(); ++i) t.ops.emplace_back(reg[i], gates::E(m[i]));
    op.terms.push_back(std::move(t));
  }
  return op;
}

KronSum product_reflection(const std::vector<Eigen::Vector2cd>& v,
                           const std::vector<int>& reg) {
  if (v.size() != reg.size()) throw DimensionError("product_reflection: size mismatch");
  KronSum op{{KronTerm{-1.0, {}}}, "reflection"};
  KronTerm t{2.0, {}};
  for (std::size_t i = 0; i < reg.size(); ++i) t.ops.emplace_back(reg[i], v[i] * v[i].adjoint());
  op.terms.push_back(std::move(t));
  return op;
}

}  // namespace cpsim
