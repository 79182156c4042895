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

#include "cpsim/io.hpp"

#include <iomanip>
#include <json.hpp>
#include <sstream>

namespace cpsim {

using nlohmann::json;

namespace {

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DimensionError("expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json mat_json(const Mat2& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) rows.push_back(json::array({cplx_json(m(r, 0)), cplx_json(m(r, 1))}));
  return rows;
}

Mat2 mat_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw DimensionError("expected 2x2 matrix");
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2) throw DimensionError("expected 2x2 matrix");
    for (int c = 0; c < 2; ++c) m(r, c) = cplx_from(j[r][c]);
  }
  return m;
}

Mat2 gate_matrix(const json& j, const std::string& label) {
  if (j.contains("matrix")) return mat_from(j.at("matrix"));
  auto m = named_matrix(label);
  if (!m) throw DimensionError("unknown gate: " + label);
  return *m;
}

json gate_json(const GateOp& g) {
  json j;
  j["gate"] = gate_name(g);
  if (const auto* o = std::get_if<OneQubit>(&g)) {
    j["target"] = o->target;
    j["u"] = o->label.empty() ? "U" : o->label;
    j["matrix"] = mat_json(o->u);
  } else if (const auto* c = std::get_if<Controlled>(&g)) {
    json ctl = json::array();
    for (const auto& ct : c->controls) ctl.push_back({{"qubit", ct.qubit}, {"bit", ct.bit}});
    j["controls"] = ctl;
    j["target"] = c->target;
    j["u"] = c->label.empty() ? "U" : c->label;
    j["matrix"] = mat_json(c->u);
  } else if (const auto* s = std::get_if<Swap>(&g)) {
    j["qubits"] = {s->q1, s->q2};
  } else {
    const auto& k = std::get<KronSum>(g);
    j["label"] = k.label;
    json terms = json::array();
    for (const auto& t : k.terms) {
      json ops = json::array();
      for (const auto& [q, m] : t.ops) ops.push_back({{"qubit", q}, {"matrix", mat_json(m)}});
      terms.push_back({{"coeff", cplx_json(t.coeff)}, {"ops", ops}});
    }
    j["terms"] = terms;
  }
  return j;
}

GateOp gate_from(const json& j) {
  const std::string name = j.at("gate").get<std::string>();
  if (name == "SWAP") {
    const auto& q = j.at("qubits");
    return Swap{q.at(0).get<int>(), q.at(1).get<int>()};
  }
  if (name == "KRON") {
    KronSum k;
    k.label = j.value("label", "");
    for (const auto& t : j.at("terms")) {
      KronTerm term{cplx_from(t.at("coeff")), {}};
      for (const auto& op : t.at("ops"))
        term.ops.emplace_back(op.at("qubit").get<int>(), mat_from(op.at("matrix")));
      k.terms.push_back(std::move(term));
    }
    return k;
  }
  if (name == "CU" || name == "CCU") {
    const std::string label = j.value("u", "U");
    std::vector<Control> ctl;
    for (const auto& c : j.at("controls")) ctl.push_back({c.at("qubit").get<int>(), c.value("bit", 1)});
    return Controlled{std::move(ctl), j.at("target").get<int>(), gate_matrix(j, label), label};
  }
  // Any other name is a one-qubit registry gate ("H", "Rn(3)", ...) or "U".
  const std::string label = name == "U" ? j.value("u", "U") : name;
  return OneQubit{j.at("target").get<int>(), gate_matrix(j, label), label};
}

json report_json(const ReductionReport& r) {
  return {{"layer", r.layer},        {"rank_in", r.rank_in}, {"rank_out", r.rank_out},
          {"fidelity", r.fidelity},  {"method", to_string(r.method)},
          {"sweeps", r.sweeps},      {"restart", r.restart}};
}

}  // namespace

std::string state_to_json(const CPState& x, int indent) {
  json f = json::array();
  for (const auto& fac : x.factors()) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r) {
      json row = json::array();
      for (Index k = 0; k < fac.cols(); ++k) row.push_back(cplx_json(fac(r, k)));
      rows.push_back(row);
    }
    f.push_back(rows);
  }
  return json{{"n", x.n()}, {"rank", x.rank()}, {"factors", f}}.dump(indent);
}

CPState state_from_json(const std::string& text) {
  const json j = json::parse(text);
  const int n = j.at("n").get<int>();
  const Index rank = j.at("rank").get<Index>();
  const auto& f = j.at("factors");
  if (!f.is_array() || static_cast<int>(f.size()) != n) throw DimensionError("state json: factor count");
  CPState x(n, rank);
  for (int q = 0; q < n; ++q) {
    if (f[q].size() != 2) throw DimensionError("state json: factor must have 2 rows");
    for (int r = 0; r < 2; ++r) {
      if (static_cast<Index>(f[q][r].size()) != rank) throw DimensionError("state json: rank mismatch");
      for (Index k = 0; k < rank; ++k) x.factor(q)(r, k) = cplx_from(f[q][r][k]);
    }
  }
  if (!x.all_finite()) throw DimensionError("state json: non-finite entry");
  return x;
}

std::string circuit_to_json(const Circuit& c, int indent) {
  json layers = json::array();
  for (const auto& l : c.layers) {
    json lj = json::array();
    for (const auto& g : l) lj.push_back(gate_json(g));
    layers.push_back(lj);
  }
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  return json{{"n", c.n}, {"name", c.name}, {"params", params}, {"layers", layers}}.dump(indent);
}

Circuit circuit_from_json(const std::string& text) {
  const json j = json::parse(text);
  Circuit c(j.at("n").get<int>(), j.value("name", ""));
  if (j.contains("params"))
    for (const auto& [k, v] : j.at("params").items()) c.params[k] = v.get<double>();
  for (const auto& lj : j.at("layers")) {
    Layer l;
    for (const auto& g : lj) l.push_back(gate_from(g));
    c.layers.push_back(std::move(l));
  }
  c.validate();
  return c;
}

std::string run_log_json(const RunResult& r, const std::string& config_json, int indent,
                         bool include_timing) {
  json layers = json::array();
  for (const auto& rep : r.reports) layers.push_back(report_json(rep));
  json result{{"fidelity_estimate", r.fidelity_estimate},
              {"final_rank", r.state.rank()},
              {"iterations", r.iterations}};
  result["marked_probability"] =
      r.marked_probability ? json(*r.marked_probability) : json(nullptr);
  if (r.exact_fidelity) result["exact_fidelity"] = *r.exact_fidelity;
  if (include_timing) {
    result["wall_ms"] = r.wall_ms;
    json ph = json::object();
    for (const auto& [k, v] : r.phase_ms) ph[k] = v;
    result["phase_ms"] = ph;
  }
  json cfg = config_json.empty() ? json::object() : json::parse(config_json);
  return json{{"config", cfg}, {"per_layer", layers}, {"result", result}}.dump(indent);
}

std::string run_log_csv(const RunResult& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "layer,rank_in,rank_out,fidelity,method,sweeps,restart\n";
  for (const auto& rep : r.reports)
    os << rep.layer << ',' << rep.rank_in << ',' << rep.rank_out << ',' << rep.fidelity << ','
       << to_string(rep.method) << ',' << rep.sweeps << ',' << rep.restart << '\n';
  return os.str();
}

}  // namespace cpsim
