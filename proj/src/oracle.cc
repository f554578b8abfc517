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

#include "extmatch/oracle.h"

#include <string>

#include "extmatch/error.h"

namespace extmatch {

namespace {

void check_size(size_t n) {
    if (n > kOracleMaxModes) {
        throw capability_error("dense oracle supports at most " + std::to_string(kOracleMaxModes) +
                               " modes, circuit has " + std::to_string(n));
    }
}

}  // namespace

DenseState::DenseState(const BasisState &initial) : num_modes_(initial.num_modes()) {
    check_size(num_modes_);
    amplitudes_.assign(size_t{1} << num_modes_, Complex(0, 0));
    amplitudes_[initial.to_index()] = 1.0;
}

void DenseState::apply(size_t q1, size_t q2, const Eigen::Matrix4cd &gate) {
    size_t m1 = size_t{1} << q1;
    size_t m2 = size_t{1} << q2;
    std::array<size_t, 4> offsets{0, m1, m2, m1 | m2};
    for (size_t base = 0; base < amplitudes_.size(); base++) {
        if (base & (m1 | m2)) {
            continue;
        }
        Eigen::Vector4cd in;
        for (int k = 0; k < 4; k++) {
            in(k) = amplitudes_[base | offsets[k]];
        }
        Eigen::Vector4cd result = gate * in;
        for (int k = 0; k < 4; k++) {
            amplitudes_[base | offsets[k]] = result(k);
        }
    }
}

void DenseState::apply(const Gate &gate) {
    if (auto *mg = std::get_if<Matchgate>(&gate)) {
        apply(mg->lower_mode, mg->upper_mode(), matchgate_unitary(mg->u));
    } else {
        const auto &cp = std::get<ControlledPhase>(gate);
        apply(cp.mode_a, cp.mode_b, controlled_phase_unitary(cp.theta));
    }
}

double DenseState::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

double DenseState::probability(const BasisState &b) const {
    if (b.num_modes() != num_modes_) {
        throw input_error("oracle: bitstring has " + std::to_string(b.num_modes()) + " modes, circuit has " +
                          std::to_string(num_modes_));
    }
    return std::norm(amplitudes_[b.to_index()]);
}

DenseState simulate_dense(const Circuit &circuit) {
    DenseState state(circuit.initial());
    for (const Gate &gate : circuit.gates()) {
        state.apply(gate);
    }
    return state;
}

double oracle_probability(const Circuit &circuit, const BasisState &b) {
    check_size(circuit.num_modes());
    return simulate_dense(circuit).probability(b);
}

std::vector<std::pair<BasisState, double>> oracle_support(const Circuit &circuit) {
    DenseState state = simulate_dense(circuit);
    std::vector<std::pair<BasisState, double>> support;
    const auto &amps = state.amplitudes();
    for (size_t index = 0; index < amps.size(); index++) {
        double p = std::norm(amps[index]);
        if (p > kOracleSupportThreshold) {
            support.emplace_back(BasisState::from_index(circuit.num_modes(), index), p);
        }
    }
    return support;
}

}  // namespace extmatch
