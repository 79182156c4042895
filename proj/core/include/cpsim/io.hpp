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

#include <string>

#include "cpsim/driver.hpp"

namespace cpsim {

/** {"n", "rank", "factors": [qubit][row][column] as [re, im]}. */
std::string state_to_json(const CPState& x, int indent = -1);
CPState state_from_json(const std::string& text);

/** Layers of gates keyed by registry name; matrices always included. */
std::string circuit_to_json(const Circuit& c, int indent = -1);
Circuit circuit_from_json(const std::string& text);

/**
 * Run log: {config, per_layer: [...], result: {...}}. `config_json` is
 * embedded verbatim and must be a JSON object. Timing fields are the only
 * non-deterministic content and can be left out.
 */
std::string run_log_json(const RunResult& r, const std::string& config_json, int indent = 2,
                         bool include_timing = true);
/** One row per layer: layer,rank_in,rank_out,fidelity,method,sweeps,restart. */
std::string run_log_csv(const RunResult& r);

}  // namespace cpsim
