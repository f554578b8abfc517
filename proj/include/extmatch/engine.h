// Copyright 2026 The extmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EXTMATCH_ENGINE_H
#define EXTMATCH_ENGINE_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "extmatch/basis_state.h"
#include "extmatch/circuit.h"
#include "extmatch/gate_unitaries.h"

namespace extmatch {

struct EngineOptions {
    /// Worker threads; 0 means every hardware thread.
    unsigned threads = 1;
    /// Trajectories per chunk. Chunks are the unit of parallel work and of
    /// random-stream derivation, so results depend on this value.
    size_t chunk_size = 1024;
    /// Largest controlled-phase count accepted by exact enumeration.
    size_t exact_max_gates = 24;
    /// Round limit for the adaptive estimator.
    size_t max_rounds = 64;
    /// Take the LUCJ fast path when the circuit has that shape.
    bool use_lucj_fastpath = true;
};

struct EstimateResult {
    double probability = 0;
    /// Complex trajectory accumulator: alpha for raw estimates (of the final
    /// round for adaptive ones), the full trajectory sum for exact results.
    Complex accumulator{0, 0};
    double amplitude_accumulator_magnitude = 0;
    /// Trajectories sampled (all rounds for adaptive estimates), or 2^k for
    /// exact results.
    uint64_t trajectories_used = 0;
    double extent = 1;
    uint64_t seed = 0;
    std::optional<double> achieved_epsilon;
    std::optional<double> failure_probability;
    size_t rounds = 0;
};

struct RawMode {
    uint64_t trajectories;
};
struct AdaptiveMode {
    double epsilon;
    double delta;
};
struct ExactMode {};
using EstimateMode = std::variant<RawMode, AdaptiveMode, ExactMode>;

/// Monte Carlo estimate from t sampled trajectories:
///     alpha = sum_x i^{|x|} (-1)^{|m AND x|} <b|V(x)|a>,   p = extent / t^2 |alpha|^2.
/// The initial state of the circuit plays the role of |a>.
EstimateResult raw_estimate(const Circuit &circuit, const BasisState &b, uint64_t trajectories, uint64_t seed,
                            const EngineOptions &options = {});

/// Sum over all 2^k trajectories of w(x) <b|V(x)|a> with
///     w(x) = prod_j cos(theta_j/4)^{1-x_j} (i sin(theta_j/4))^{x_j}.
Complex exact_amplitude(const Circuit &circuit, const BasisState &b, const EngineOptions &options = {});

/// |exact_amplitude|^2.
double exact(const Circuit &circuit, const BasisState &b, const EngineOptions &options = {});

/// Adaptive estimate to additive error epsilon with failure probability at
/// most delta, tightening the probability upper bound between rounds and
/// doubling the trajectory count each round.
EstimateResult estimate(const Circuit &circuit, const BasisState &b, double epsilon, double delta, uint64_t seed,
                        const EngineOptions &options = {});

/// Evaluates every bitstring with the given mode. Entry i equals the
/// single-bitstring call made with random streams derived from (seed, i),
/// independent of the thread count.
std::vector<EstimateResult> batch_estimate(const Circuit &circuit, std::span<const BasisState> bitstrings,
                                           const EstimateMode &mode, uint64_t seed,
                                           const EngineOptions &options = {});

}  // namespace extmatch

#endif
