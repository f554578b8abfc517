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

#include "extmatch/engine.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "extmatch/bounds.h"
#include "extmatch/error.h"
#include "extmatch/lucj.h"
#include "extmatch/mode_matrix.h"
#include "extmatch/parallel.h"
#include "extmatch/rng.h"
#include "extmatch/trajectory.h"

namespace extmatch {

namespace {

struct Target {
    BasisState b;
    bool weight_mismatch = false;
    std::vector<size_t> rows;
    std::unique_ptr<LucjSession> session;
};

/// Shared, read-only per-call state: sampler tables and the optional LUCJ
/// factors. Targets own the per-bitstring memo sessions.
class Evaluator {
   public:
    Evaluator(const Circuit &circuit, const EngineOptions &options)
        : circuit_(circuit), options_(options), tables_(circuit), cols_(circuit.initial().occupied_modes()) {
        if (options.chunk_size == 0) {
            throw input_error("chunk size must be positive");
        }
        if (options.use_lucj_fastpath) {
            if (auto structure = detect_lucj(circuit)) {
                lucj_.emplace(*structure);
            }
        }
    }

    const Circuit &circuit() const {
        return circuit_;
    }
    const EngineOptions &options() const {
        return options_;
    }
    const SamplerTables &tables() const {
        return tables_;
    }
    std::span<const size_t> cols() const {
        return cols_;
    }
    bool uses_lucj() const {
        return lucj_.has_value();
    }

    Target make_target(const BasisState &b) const {
        Target target;
        target.b = b;
        target.weight_mismatch = b.hamming_weight() != circuit_.initial().hamming_weight();
        target.rows = b.occupied_modes();
        if (lucj_) {
            target.session = std::make_unique<LucjSession>(*lucj_, circuit_.initial(), b);
        }
        return target;
    }

    bool deterministic() const {
        for (const auto &e : tables_.entries()) {
            if (e.p_one != 0) {
                return false;
            }
        }
        return true;
    }

   private:
    const Circuit &circuit_;
    EngineOptions options_;
    SamplerTables tables_;
    std::vector<size_t> cols_;
    std::optional<LucjCache> lucj_;
};

/// Evaluates <b|V(x)|a> for one target; one instance per worker task.
class Kernel {
   public:
    Kernel(const Evaluator &evaluator, Target &target) : evaluator_(evaluator), target_(target) {
    }

    Complex operator()(const Trajectory &x) {
        if (target_.session) {
            return target_.session->amplitude(x, lucj_workspace_);
        }
        build_mode_columns(evaluator_.circuit(), evaluator_.tables(), x, evaluator_.cols(), v_);
        workspace_.gather_rows(v_, target_.rows);
        return workspace_.determinant();
    }

   private:
    const Evaluator &evaluator_;
    Target &target_;
    ModeMatrix v_;
    DeterminantWorkspace workspace_;
    LucjSession::Workspace lucj_workspace_;
};

Complex accumulate_chunk(const Evaluator &evaluator, Target &target, const StreamId &stream, uint64_t count) {
    StreamRng rng(stream);
    Kernel kernel(evaluator, target);
    Trajectory x;
    Complex alpha(0, 0);
    const SamplerTables &tables = evaluator.tables();
    for (uint64_t k = 0; k < count; k++) {
        sample_trajectory(tables, rng, x);
        Complex z = kernel(x);
        alpha += power_of_i(x.ones()) * (tables.sign(x) * z);
    }
    return alpha;
}

/// Raw accumulators for every listed target, chunks of all targets flattened
/// into one parallel loop and reduced in ascending chunk order.
std::vector<Complex> raw_accumulators(const Evaluator &evaluator, std::span<Target> targets,
                                      std::span<const size_t> stream_targets, uint64_t trajectories, uint64_t seed,
                                      uint64_t round, bool release_sessions) {
    size_t chunk_size = evaluator.options().chunk_size;
    uint64_t chunks = (trajectories + chunk_size - 1) / chunk_size;
    std::vector<Complex> partial(targets.size() * chunks);
    std::vector<std::atomic<uint64_t>> remaining(targets.size());
    for (auto &r : remaining) {
        r.store(chunks);
    }
    parallel_for(partial.size(), evaluator.options().threads, [&](size_t task) {
        size_t t_index = task / chunks;
        uint64_t chunk = task % chunks;
        Target &target = targets[t_index];
        if (!target.weight_mismatch) {
            uint64_t begin = chunk * chunk_size;
            uint64_t count = std::min<uint64_t>(chunk_size, trajectories - begin);
            StreamId stream{seed, stream_targets[t_index], chunk, round};
            partial[task] = accumulate_chunk(evaluator, target, stream, count);
        }
        if (release_sessions && remaining[t_index].fetch_sub(1) == 1 && target.session) {
            target.session->clear_memo();
        }
    });
    std::vector<Complex> result(targets.size(), Complex(0, 0));
    for (size_t i = 0; i < targets.size(); i++) {
        for (uint64_t c = 0; c < chunks; c++) {
            result[i] += partial[i * chunks + c];
        }
    }
    return result;
}

Complex trajectory_weight(const SamplerTables &tables, const Trajectory &x) {
    double magnitude = 1;
    auto entries = tables.entries();
    for (size_t j = 0; j < entries.size(); j++) {
        magnitude *= x.bit(j) ? entries[j].sin_quarter : entries[j].cos_quarter;
    }
    return power_of_i(x.ones()) * magnitude;
}

std::vector<Complex> exact_sums(const Evaluator &evaluator, std::span<Target> targets) {
    const auto &options = evaluator.options();
    size_t k = evaluator.circuit().num_controlled_phases();
    if (k > options.exact_max_gates) {
        throw capability_error("exact enumeration refused: " + std::to_string(k) +
                               " controlled-phase gates exceeds the cap of " + std::to_string(options.exact_max_gates));
    }
    uint64_t total = uint64_t{1} << k;
    uint64_t chunk_size = options.chunk_size;
    uint64_t chunks = (total + chunk_size - 1) / chunk_size;
    std::vector<Complex> partial(targets.size() * chunks);
    parallel_for(partial.size(), options.threads, [&](size_t task) {
        Target &target = targets[task / chunks];
        if (target.weight_mismatch) {
            return;
        }
        uint64_t begin = (task % chunks) * chunk_size;
        uint64_t end = std::min(total, begin + chunk_size);
        Kernel kernel(evaluator, target);
        Complex sum(0, 0);
        for (uint64_t index = begin; index < end; index++) {
            Trajectory x = Trajectory::from_index(k, index);
            Complex w = trajectory_weight(evaluator.tables(), x);
            if (w == Complex(0, 0)) {
                continue;
            }
            sum += w * kernel(x);
        }
        partial[task] = sum;
    });
    std::vector<Complex> result(targets.size(), Complex(0, 0));
    for (size_t i = 0; i < targets.size(); i++) {
        for (uint64_t c = 0; c < chunks; c++) {
            result[i] += partial[i * chunks + c];
        }
    }
    return result;
}

EstimateResult raw_result(const Evaluator &evaluator, Complex alpha, uint64_t trajectories, uint64_t seed) {
    EstimateResult r;
    double t = static_cast<double>(trajectories);
    r.extent = evaluator.tables().extent();
    r.accumulator = alpha;
    r.amplitude_accumulator_magnitude = std::abs(alpha);
    r.probability = r.extent / (t * t) * std::norm(alpha);
    r.trajectories_used = trajectories;
    r.seed = seed;
    r.rounds = 1;
    return r;
}

EstimateResult exact_result(const Evaluator &evaluator, Complex sum, uint64_t seed) {
    EstimateResult r;
    r.extent = evaluator.tables().extent();
    r.accumulator = sum;
    r.amplitude_accumulator_magnitude = std::abs(sum);
    r.probability = std::norm(sum);
    r.trajectories_used = uint64_t{1} << evaluator.circuit().num_controlled_phases();
    r.seed = seed;
    r.achieved_epsilon = 0.0;
    return r;
}

void check_estimate_arguments(double epsilon, double delta) {
    if (!(epsilon > 0) || !std::isfinite(epsilon)) {
        throw domain_error("epsilon must be positive and finite, got " + std::to_string(epsilon));
    }
    if (!(delta > 0 && delta < 1)) {
        throw domain_error("delta must lie in (0, 1), got " + std::to_string(delta));
    }
}

EstimateResult adaptive(const Evaluator &evaluator, Target &target, size_t stream_target, double epsilon,
                        double delta, uint64_t seed) {
    double xi = evaluator.tables().extent();
    EstimateResult result;
    result.seed = seed;
    result.extent = xi;
    if (target.weight_mismatch) {
        result.achieved_epsilon = 0.0;
        result.failure_probability = 0.0;
        return result;
    }
    if (evaluator.deterministic()) {
        // Every trajectory is x = 0, so one evaluation is exact.
        Trajectory x(evaluator.circuit().num_controlled_phases());
        Kernel kernel(evaluator, target);
        Complex z = kernel(x);
        result.accumulator = z;
        result.amplitude_accumulator_magnitude = std::abs(z);
        result.probability = std::norm(z);
        result.trajectories_used = 1;
        result.rounds = 1;
        result.achieved_epsilon = 0.0;
        result.failure_probability = 0.0;
        return result;
    }

    const size_t stream_targets[] = {stream_target};
    std::span<Target> one(&target, 1);
    double p_star = 1.0;
    double failure = 0.0;
    uint64_t total = 0;
    auto round_delta = [&](size_t r) { return 6.0 * delta / (std::numbers::pi * std::numbers::pi * r * r); };
    uint64_t t = trajectory_count(1.0, round_delta(1), p_star, xi);
    for (size_t round = 1; round <= evaluator.options().max_rounds; round++) {
        double delta_r = round_delta(round);
        failure += delta_r;
        double guaranteed = epsilon_from_count(t, delta_r, p_star, xi);
        Complex alpha = raw_accumulators(evaluator, one, stream_targets, t, seed, round, false)[0];
        total += t;
        double t_real = static_cast<double>(t);
        double p_hat = xi / (t_real * t_real) * std::norm(alpha);
        if (guaranteed <= epsilon) {
            result.probability = p_hat;
            result.accumulator = alpha;
            result.amplitude_accumulator_magnitude = std::abs(alpha);
            result.trajectories_used = total;
            result.rounds = round;
            result.achieved_epsilon = guaranteed;
            result.failure_probability = failure;
            return result;
        }
        p_star = std::clamp(std::min(p_star, p_hat + guaranteed), 0.0, 1.0);
        if (t > (uint64_t{1} << 61)) {
            break;
        }
        t *= 2;
    }
    throw capability_error("adaptive estimate did not reach epsilon = " + std::to_string(epsilon) + " within " +
                           std::to_string(evaluator.options().max_rounds) + " rounds");
}

void check_target(const Circuit &circuit, const BasisState &b, std::optional<size_t> index) {
    if (b.num_modes() != circuit.num_modes()) {
        std::string prefix = index ? "bitstring " + std::to_string(*index) + ": " : std::string();
        throw Error(ErrorKind::Input,
                    prefix + "has " + std::to_string(b.num_modes()) + " modes but the circuit has " +
                        std::to_string(circuit.num_modes()),
                    index);
    }
}

}  // namespace

EstimateResult raw_estimate(const Circuit &circuit, const BasisState &b, uint64_t trajectories, uint64_t seed,
                            const EngineOptions &options) {
    return batch_estimate(circuit, std::span(&b, 1), RawMode{trajectories}, seed, options)[0];
}

Complex exact_amplitude(const Circuit &circuit, const BasisState &b, const EngineOptions &options) {
    check_target(circuit, b, std::nullopt);
    Evaluator evaluator(circuit, options);
    Target target = evaluator.make_target(b);
    return exact_sums(evaluator, std::span(&target, 1))[0];
}

double exact(const Circuit &circuit, const BasisState &b, const EngineOptions &options) {
    return std::norm(exact_amplitude(circuit, b, options));
}

EstimateResult estimate(const Circuit &circuit, const BasisState &b, double epsilon, double delta, uint64_t seed,
                        const EngineOptions &options) {
    return batch_estimate(circuit, std::span(&b, 1), AdaptiveMode{epsilon, delta}, seed, options)[0];
}

std::vector<EstimateResult> batch_estimate(const Circuit &circuit, std::span<const BasisState> bitstrings,
                                           const EstimateMode &mode, uint64_t seed, const EngineOptions &options) {
    for (size_t i = 0; i < bitstrings.size(); i++) {
        check_target(circuit, bitstrings[i], i);
    }
    if (auto *raw = std::get_if<RawMode>(&mode); raw && raw->trajectories == 0) {
        throw input_error("trajectory count must be positive");
    }
    if (auto *adaptive_mode = std::get_if<AdaptiveMode>(&mode)) {
        check_estimate_arguments(adaptive_mode->epsilon, adaptive_mode->delta);
    }

    Evaluator evaluator(circuit, options);
    std::vector<Target> targets;
    targets.reserve(bitstrings.size());
    for (const auto &b : bitstrings) {
        targets.push_back(evaluator.make_target(b));
    }
    std::vector<EstimateResult> results;
    results.reserve(targets.size());

    if (auto *raw = std::get_if<RawMode>(&mode)) {
        std::vector<size_t> ids(targets.size());
        for (size_t i = 0; i < ids.size(); i++) {
            ids[i] = i;
        }
        auto alphas = raw_accumulators(evaluator, targets, ids, raw->trajectories, seed, 0, true);
        for (const auto &alpha : alphas) {
            results.push_back(raw_result(evaluator, alpha, raw->trajectories, seed));
        }
    } else if (auto *adaptive_mode = std::get_if<AdaptiveMode>(&mode)) {
        for (size_t i = 0; i < targets.size(); i++) {
            try {
                results.push_back(adaptive(evaluator, targets[i], i, adaptive_mode->epsilon, adaptive_mode->delta, seed));
            } catch (const Error &e) {
                throw Error(e.kind(), "bitstring " + std::to_string(i) + ": " + e.what(), i);
            }
            if (targets[i].session) {
                targets[i].session->clear_memo();
            }
        }
    } else {
        auto sums = exact_sums(evaluator, targets);
        for (const auto &sum : sums) {
            results.push_back(exact_result(evaluator, sum, seed));
        }
    }
    return results;
}

}  // namespace extmatch
