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

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "cpsim/cp_state.hpp"

namespace cpsim {

enum class Method { none, direct, als, dominant };
enum class Strategy { direct, als, direct_then_als };

std::string to_string(Method m);
std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& s);

/** Per-sweep hook used by tests and diagnostics. */
struct AlsObserver {
  /** Called with the Gram Hadamard product before each mode solve. */
  std::function<void(int restart, int sweep, int mode, const Eigen::MatrixXcd& gamma)> on_mode;
  /** Called after each full sweep with the current (unscaled) model. */
  std::function<void(int restart, int sweep, const CPState& model, double fidelity)> on_sweep;
};

struct AlsConfig {
  Index rank = 1;
  int max_sweeps = 100;
  double tol = 1e-10;
  int restarts = 1;
  std::uint64_t seed = 0;
  double pinv_cutoff = 1e-12;
  /** Squared norm of the input when the caller already knows it (e.g. a
   *  normalized state after unitary gates). Skips an O(n R^2) contraction. */
  std::optional<double> target_norm2;
  /** Mixed into restart seeds so each truncation draws fresh guesses. */
  std::uint64_t layer = 0;
  const AlsObserver* observer = nullptr;

  void validate() const;
};

struct ReductionReport {
  long layer = -1;
  Method method = Method::none;
  Index rank_in = 0;
  Index rank_out = 0;
  double fidelity = 1.0;
  int sweeps = 0;
  int restart = -1;
};

struct Reduced {
  CPState state;
  ReductionReport report;
};

class AlsError : public std::runtime_error {
 public:
  AlsError(const std::string& what, int mode) : std::runtime_error(what), mode_(mode) {}
  int mode() const { return mode_; }

 private:
  int mode_;
};

/** |<a|b>|^2 / (|a|^2 |b|^2), 0 when either is zero. */
double normalized_overlap(const CPState& a, const CPState& b);

/** Merge collinear terms and drop negligible ones. */
Reduced direct_eliminate(const CPState& x, double tol = 1e-12);

/**
 * Rank-cfg.rank CP-ALS fit of x. A warm start, when given, is used as
 * restart 0 in place of a random guess. The result is rescaled to the
 * norm of x.
 */
Reduced cp_als(const CPState& x, const AlsConfig& cfg, const CPState* warm = nullptr);

/** Keep the `limit` largest-norm terms (ties to the lower index). */
Reduced keep_dominant(const CPState& x, Index limit);

Reduced reduce(const CPState& x, Index limit, Strategy strategy, const AlsConfig& cfg,
               const CPState* warm = nullptr);

/** 64-bit seed for (master, restart, layer). */
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t restart, std::uint64_t layer);

}  // namespace cpsim
