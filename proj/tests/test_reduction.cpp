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

#include <doctest.h>

#include "testing.hpp"

using namespace cpsim;
using cpsim::testing::max_abs_diff;

TEST_SUITE("reduction") {

TEST_CASE("direct elimination merges scalar multiples exactly") {
  std::mt19937_64 rng(1);
  const CPState a = random_complex_state(6, 3, rng);
  // Terms 3..5 repeat terms 0..2 with scaled and phased factors.
  CPState b = a;
  b.factor(1) *= cplx(0.0, 2.0);
  b.factor(4).col(2) *= -0.5;
  const CPState x = concat_terms(a, b);
  const Reduced r = direct_eliminate(x);
  CHECK(r.report.method == Method::direct);
  CHECK(r.state.rank() == 3);
  CHECK(r.report.fidelity == doctest::Approx(1.0));
  CHECK(max_abs_diff(materialize(r.state).amp, materialize(x).amp) < 1e-12);
}

TEST_CASE("direct elimination drops cancelling terms") {
  std::mt19937_64 rng(2);
  const CPState a = random_complex_state(5, 2, rng);
  const CPState x = concat_terms(a, scale(a, -1.0));
  const Reduced r = direct_eliminate(x);
  CHECK(r.state.rank() == 0);
  CHECK(materialize(r.state).amp.norm() == 0.0);
}

TEST_CASE("direct elimination leaves independent terms alone") {
  std::mt19937_64 rng(3);
  const CPState x = random_complex_state(7, 5, rng);
  const Reduced r = direct_eliminate(x);
  CHECK(r.state.rank() == 5);
  CHECK(r.report.fidelity == 1.0);
}

TEST_CASE("cp_als recovers a genuinely low-rank tensor") {
  std::mt19937_64 rng(4);
  const CPState t = random_complex_state(7, 3, rng);
  // Padding with tiny perturbations raises the nominal rank.
  CPState noise = random_complex_state(7, 5, rng);
  noise.factor(0) *= 1e-9;
  const CPState x = concat_terms(t, noise);
  AlsConfig cfg;
  cfg.rank = 3;
  cfg.restarts = 3;
  cfg.max_sweeps = 400;
  cfg.tol = 1e-14;
  cfg.seed = 9;
  const Reduced r = cp_als(x, cfg);
  CHECK(r.report.method == Method::als);
  CHECK(r.state.rank() == 3);
  CHECK(r.report.fidelity > 1.0 - 1e-8);
  CHECK(norm(r.state) == doctest::Approx(norm(x)).epsilon(1e-10));
}

TEST_CASE("cp_als leaves tensors within the limit untouched") {
  std::mt19937_64 rng(5);
  const CPState x = random_complex_state(4, 2, rng);
  AlsConfig cfg;
  cfg.rank = 2;
  const Reduced r = cp_als(x, cfg);
  CHECK(r.report.method == Method::none);
  CHECK(max_abs_diff(materialize(r.state).amp, materialize(x).amp) == 0.0);
}

TEST_CASE("cp_als residual is non-increasing and gamma is Hermitian PSD") {
  std::mt19937_64 rng(6);
  const CPState x = random_complex_state(6, 12, rng);
  const Eigen::VectorXcd dense = materialize(x).amp;
  std::vector<double> residual;
  double worst_herm = 0.0, min_eig = 1.0;
  AlsObserver obs;
  obs.on_mode = [&](int, int, int, const Eigen::MatrixXcd& g) {
    worst_herm = std::max(worst_herm, (g - g.adjoint()).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff());
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(g).eigenvalues();
    min_eig = std::min(min_eig, ev.minCoeff() / ev.cwiseAbs().maxCoeff());
  };
  obs.on_sweep = [&](int, int, const CPState& model, double) {
    residual.push_back((materialize(model).amp - dense).norm());
  };
  AlsConfig cfg;
  cfg.rank = 4;
  cfg.max_sweeps = 30;
  cfg.tol = 0.0;
  cfg.seed = 3;
  cfg.observer = &obs;
  cp_als(x, cfg);
  REQUIRE(residual.size() == 30);
  for (std::size_t i = 1; i < residual.size(); ++i)
    CHECK(residual[i] <= residual[i - 1] * (1.0 + 1e-9) + 1e-12);
  CHECK(worst_herm < 1e-12);
  CHECK(min_eig > -1e-10);
}

TEST_CASE("cp_als is deterministic in its seed") {
  std::mt19937_64 rng(7);
  const CPState x = random_complex_state(6, 10, rng);
  AlsConfig cfg;
  cfg.rank = 3;
  cfg.restarts = 2;
  cfg.seed = 42;
  const Reduced a = cp_als(x, cfg), b = cp_als(x, cfg);
  CHECK(a.report.fidelity == b.report.fidelity);
  CHECK(max_abs_diff(materialize(a.state).amp, materialize(b.state).amp) == 0.0);
  cfg.seed = 43;
  const Reduced c = cp_als(x, cfg);
  CHECK(max_abs_diff(materialize(a.state).amp, materialize(c.state).amp) > 0.0);
}

TEST_CASE("cp_als with a known target norm matches the computed one") {
  std::mt19937_64 rng(17);
  const CPState x = normalize(random_complex_state(7, 20, rng));
  AlsConfig cfg;
  cfg.rank = 3;
  cfg.seed = 5;
  const Reduced plain = cp_als(x, cfg);
  cfg.target_norm2 = 1.0;
  const Reduced hinted = cp_als(x, cfg);
  CHECK(hinted.report.fidelity == doctest::Approx(plain.report.fidelity).epsilon(1e-12));
  CHECK(max_abs_diff(materialize(plain.state).amp, materialize(hinted.state).amp) < 1e-12);
  CHECK(hinted.report.fidelity == doctest::Approx(normalized_overlap(hinted.state, x)).epsilon(1e-12));
  cfg.target_norm2 = -1.0;
  CHECK_THROWS_AS(cp_als(x, cfg), std::invalid_argument);
}

TEST_CASE("cp_als warm start is used as restart 0") {
  std::mt19937_64 rng(8);
  const CPState t = random_complex_state(6, 2, rng);
  CPState x = concat_terms(t, scale(random_complex_state(6, 4, rng), 1e-3));
  AlsConfig cfg;
  cfg.rank = 2;
  cfg.max_sweeps = 1;
  const Reduced warm = cp_als(x, cfg, &t);
  CHECK(warm.report.restart == 0);
  CHECK(warm.report.fidelity > 0.999);

  const CPState one = select_terms(t, {0});
  CHECK_NOTHROW(cp_als(x, cfg, &one));
  const CPState wrong = random_complex_state(6, 3, rng);
  CHECK_THROWS_AS(cp_als(x, cfg, &wrong), DimensionError);
}

TEST_CASE("cp_als is close to the dense reference on a QFT output") {
  // Baseline frozen from best_rank_fidelity (20 restarts, seed 0).
  constexpr double kDenseBaseline = 0.999975331311;
  std::mt19937_64 rng(42);
  const CPState in = normalize(random_real_state(8, 1, rng));
  const CPState out = simulate(build_qft(8), in, RunConfig{}).state;
  AlsConfig cfg;
  cfg.rank = 16;
  cfg.restarts = 3;
  cfg.max_sweeps = 500;
  cfg.tol = 1e-12;
  cfg.seed = 5;
  const Reduced r = cp_als(direct_eliminate(out).state, cfg);
  CHECK(r.report.fidelity > kDenseBaseline - 1e-3);
  CHECK(r.report.fidelity <= 1.0);
}

TEST_CASE("dense reference on trivial inputs") {
  std::mt19937_64 rng(9);
  const DenseState one = materialize(random_complex_state(5, 1, rng));
  CHECK(best_rank_fidelity(one, 1, 3) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(best_rank_fidelity(materialize(random_complex_state(5, 6, rng)), 16) == 1.0);
}

TEST_CASE("keep_dominant keeps the largest terms in order") {
  CPState x(2, 4);
  const double w[4] = {0.5, 3.0, 1.0, 3.0};
  for (Index k = 0; k < 4; ++k) {
    x.factor(0).col(k) = Eigen::Vector2cd(w[k], 0.0);
    x.factor(1).col(k) = Eigen::Vector2cd(0.0, 1.0);
  }
  const Reduced r = keep_dominant(x, 2);
  CHECK(r.report.method == Method::dominant);
  REQUIRE(r.state.rank() == 2);
  CHECK(r.state.factor(0)(0, 0).real() == 3.0);
  CHECK(r.state.factor(0)(0, 1).real() == 3.0);
}

TEST_CASE("reduce dispatches by strategy") {
  std::mt19937_64 rng(10);
  const CPState a = random_complex_state(5, 2, rng);
  const CPState x = concat_terms(a, scale(a, 0.5));
  AlsConfig cfg;
  cfg.seed = 1;
  CHECK(reduce(x, 4, Strategy::als, cfg).report.method == Method::none);
  const Reduced d = reduce(x, 2, Strategy::direct_then_als, cfg);
  CHECK(d.report.method == Method::direct);
  CHECK(d.state.rank() == 2);
  const Reduced als = reduce(x, 1, Strategy::direct_then_als, cfg);
  CHECK(als.report.method == Method::als);
  CHECK(als.report.rank_in == 4);
  CHECK(als.state.rank() == 1);
  CHECK_THROWS_AS(reduce(x, 0, Strategy::als, cfg), std::invalid_argument);
  CHECK(parse_strategy("direct-then-als") == Strategy::direct_then_als);
  CHECK_THROWS(parse_strategy("svd"));
}

TEST_CASE("derived seeds separate restarts and layers") {
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 1, 0));
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(1, 0, 0) != derive_seed(2, 0, 0));
  CHECK(derive_seed(5, 3, 9) == derive_seed(5, 3, 9));
}

}  // TEST_SUITE
