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

#include "cpsim/driver.hpp"

#include <chrono>

#include "cpsim/dense.hpp"

namespace cpsim {

void RunConfig::validate() const {
  if (r_max < 1) throw std::invalid_argument("RunConfig: r_max must be >= 1");
  AlsConfig c = als;
  c.rank = 1;
  c.validate();
  if (iterations && *iterations < 0) throw std::invalid_argument("RunConfig: negative iterations");
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

class Runner {
 public:
  Runner(const RunConfig& cfg, CPState init) : cfg_(cfg) {
    cfg_.validate();
    res_.state = std::move(init);
    t0_ = Clock::now();
  }

  void apply(const GateOp& g) {
    const auto t = Clock::now();
    res_.state = apply_gate(res_.state, g);
    res_.phase_ms["apply"] += ms_since(t);
  }

  void apply_layer(const Layer& l) {
    for (const auto& g : l) apply(g);
  }

  // Reduce if rank exceeds r_max, then log the layer.
  void finish_layer(const CPState* warm = nullptr) {
    AlsConfig als = cfg_.als;
    als.seed = cfg_.seed;
    als.layer = layer_;
    const auto t = Clock::now();
    Reduced r = reduce(res_.state, cfg_.r_max, cfg_.strategy, als, warm);
    record(std::move(r), t);
  }

  void finish_layer_dominant() {
    const auto t = Clock::now();
    Reduced r{res_.state, {}};
    r.report.rank_in = r.report.rank_out = res_.state.rank();
    if (res_.state.rank() > cfg_.r_max) {
      Reduced d = direct_eliminate(res_.state);
      Reduced k = keep_dominant(d.state, cfg_.r_max);
      k.report.rank_in = res_.state.rank();
      k.report.fidelity *= d.report.fidelity;
      if (k.report.method == Method::none) k.report.method = Method::direct;
      r = std::move(k);
    }
    record(std::move(r), t);
  }

  void eliminate() {
    const auto t = Clock::now();
    Reduced d = direct_eliminate(res_.state);
    res_.phase_ms["reduce"] += ms_since(t);
    if (cfg_.track_fidelity) res_.fidelity_estimate *= d.report.fidelity;
    res_.state = std::move(d.state);
  }

  CPState& state() { return res_.state; }
  long layer() const { return layer_; }

  RunResult finish() {
    res_.fidelity_estimate = std::clamp(res_.fidelity_estimate, 0.0, 1.0);
    res_.wall_ms = ms_since(t0_);
    return std::move(res_);
  }

  RunResult& result() { return res_; }

 private:
  void record(Reduced r, Clock::time_point t) {
    r.report.layer = layer_;
    if (r.report.method != Method::none) {
      res_.state = std::move(r.state);
      if (res_.state.rank() > 0) res_.state = normalize(res_.state);
      if (cfg_.track_fidelity) res_.fidelity_estimate *= r.report.fidelity;
    }
    res_.phase_ms["reduce"] += ms_since(t);
    res_.reports.push_back(r.report);
    res_.rank_trace.push_back(res_.state.rank());
    ++layer_;
  }

  RunConfig cfg_;
  RunResult res_;
  long layer_ = 0;
  Clock::time_point t0_;
};

void verify(RunResult& res, const DenseState& exact) {
  const auto t = Clock::now();
  res.exact_fidelity = dense_fidelity(materialize(res.state), exact);
  res.phase_ms["verify"] += ms_since(t);
}

void check_dense_allowed(const RunConfig& cfg, int n) {
  if (cfg.verify_dense && n > std::min(12, dense_cap()))
    throw DenseCapError("dense verification refused above 12 qubits (got " + std::to_string(n) +
                        ")");
}

}  // namespace

RunResult simulate(const Circuit& circuit, const CPState& input, const RunConfig& cfg) {
  if (circuit.n != input.n()) throw DimensionError("simulate: qubit count mismatch");
  circuit.validate();
  check_dense_allowed(cfg, circuit.n);
  Runner run(cfg, input);
  for (const auto& l : circuit.layers) {
    std::optional<CPState> warm;
    if (cfg.warm_start && cfg.strategy != Strategy::direct && run.state().rank() <= cfg.r_max) {
      warm = run.state();
      for (const auto& g : l) {
        if (!warm) break;
        warm = apply_gate_rank1(*warm, g);
      }
    }
    run.apply_layer(l);
    run.finish_layer(warm ? &*warm : nullptr);
  }
  RunResult res = run.finish();
  if (cfg.verify_dense) verify(res, apply_dense(circuit, materialize(input)));
  return res;
}

RunResult run_grover(int n, const std::vector<Bits>& marked, const RunConfig& cfg) {
  const GroverOps ops = build_grover(n, marked, cfg.dominant_terms);
  check_dense_allowed(cfg, n);
  const long iters = cfg.iterations.value_or(ops.iterations);
  const bool direct_first = cfg.strategy != Strategy::als || cfg.dominant_terms;
  Runner run(cfg, uniform_state(n));
  // The state before each iteration seeds ALS restart 0, including the input.
  CPState warm = uniform_state(n);
  for (long it = 0; it < iters; ++it) {
    run.apply(ops.oracle);
    if (direct_first) run.eliminate();
    for (const auto& l : ops.diffusion.layers) run.apply_layer(l);
    if (cfg.dominant_terms) {
      run.finish_layer_dominant();
    } else if (cfg.strategy != Strategy::direct && warm.rank() > 0) {
      run.finish_layer(&warm);
    } else {
      run.finish_layer();
    }
    if (run.state().rank() > 0 && run.result().reports.back().method == Method::none)
      run.state() = normalize(run.state());
    if (run.state().rank() <= cfg.r_max) warm = run.state();
  }
  RunResult res = run.finish();
  res.iterations = iters;
  res.marked_probability = marked_probability(res.state, marked);
  if (cfg.verify_dense) verify(res, dense_grover(n, marked, iters));
  return res;
}

RunResult run_walk(const WalkSpec& spec, const RunConfig& cfg) {
  const WalkProgram prog = build_walk(spec);
  check_dense_allowed(cfg, spec.total_qubits());
  const long iters = cfg.iterations.value_or(prog.iterations);
  Runner run(cfg, prog.initial);
  for (long it = 0; it < iters; ++it) {
    for (const auto& l : prog.step.layers) {
      run.apply_layer(l);
      run.finish_layer();
    }
  }
  RunResult res = run.finish();
  res.iterations = iters;
  res.marked_probability = marked_probability(res.state, {spec.marked}, prog.metric_register);
  if (cfg.verify_dense) {
    DenseState exact = materialize(prog.initial);
    for (long it = 0; it < iters; ++it) exact = apply_dense(prog.step, exact);
    verify(res, exact);
  }
  return res;
}

}  // namespace cpsim
