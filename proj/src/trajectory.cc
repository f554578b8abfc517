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

#include "extmatch/trajectory.h"

#include <bit>
#include <cmath>

#include "extmatch/error.h"
#include "extmatch/gate_unitaries.h"

namespace extmatch {

Trajectory::Trajectory(size_t length) : length_(length), ones_(0), words_(words_for_bits(length), 0) {
}

Trajectory Trajectory::from_index(size_t length, uint64_t index) {
    if (length > 64) {
        throw input_error("trajectory index form supports at most 64 gates");
    }
    Trajectory x(length);
    if (length > 0) {
        x.words_[0] = length == 64 ? index : index & ((uint64_t{1} << length) - 1);
        x.ones_ = std::popcount(x.words_[0]);
    }
    return x;
}

void Trajectory::set(size_t j, bool value) {
    uint64_t mask = uint64_t{1} << (j & 63);
    uint64_t &word = words_[j >> 6];
    if (static_cast<bool>(word & mask) == value) {
        return;
    }
    word ^= mask;
    ones_ = value ? ones_ + 1 : ones_ - 1;
}

void Trajectory::reset() {
    std::fill(words_.begin(), words_.end(), 0);
    ones_ = 0;
}

SamplerTables::SamplerTables(const Circuit &circuit)
    : negative_mask_(words_for_bits(circuit.num_controlled_phases()), 0) {
    entries_.reserve(circuit.num_controlled_phases());
    size_t j = 0;
    for (const ControlledPhase &cp : circuit.controlled_phases()) {
        Entry e{};
        e.mode_a = cp.mode_a;
        e.mode_b = cp.mode_b;
        e.theta = cp.theta;
        e.cos_quarter = std::cos(cp.theta / 4);
        e.sin_quarter = std::sin(cp.theta / 4);
        e.cos_abs_quarter = std::cos(std::abs(cp.theta) / 4);
        e.sin_abs_quarter = std::sin(std::abs(cp.theta) / 4);
        e.p_one = e.sin_abs_quarter / (e.sin_abs_quarter + e.cos_abs_quarter);
        e.half_phase = std::polar(1.0, cp.theta / 2);
        e.half_phase_conj = std::polar(1.0, -cp.theta / 2);
        for (int branch = 0; branch < 2; branch++) {
            e.mode_phase[branch] = branch_mode_phase(cp.theta, branch);
        }
        if (cp.theta < 0) {
            negative_mask_[j >> 6] |= uint64_t{1} << (j & 63);
        }
        extent_ *= extent_factor(cp.theta);
        sqrt_extent_ *= e.cos_abs_quarter + e.sin_abs_quarter;
        entries_.push_back(e);
        j++;
    }
}

double SamplerTables::sign(const Trajectory &x) const {
    size_t overlap = 0;
    auto xw = x.words();
    for (size_t w = 0; w < negative_mask_.size(); w++) {
        overlap += std::popcount(negative_mask_[w] & xw[w]);
    }
    return (overlap & 1) ? -1.0 : 1.0;
}

Complex power_of_i(size_t ones) {
    static constexpr std::array<Complex, 4> table{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    return table[ones & 3];
}

void sample_trajectory(const SamplerTables &tables, StreamRng &rng, Trajectory &out) {
    size_t k = tables.size();
    if (out.length_ != k) {
        out = Trajectory(k);
    } else {
        out.reset();
    }
    auto entries = tables.entries();
    size_t ones = 0;
    for (size_t j = 0; j < k; j++) {
        if (rng.uniform() < entries[j].p_one) {
            out.words_[j >> 6] |= uint64_t{1} << (j & 63);
            ones++;
        }
    }
    out.ones_ = ones;
}

Trajectory sample_trajectory(const SamplerTables &tables, StreamRng &rng) {
    Trajectory x;
    sample_trajectory(tables, rng, x);
    return x;
}

namespace {

void check_length(const Circuit &circuit, const Trajectory &x) {
    if (x.length() != circuit.num_controlled_phases()) {
        throw input_error("trajectory length " + std::to_string(x.length()) + " does not match " +
                          std::to_string(circuit.num_controlled_phases()) + " controlled-phase gates");
    }
}

// Applies every gate of the circuit to the rows of `out`.
void apply_gates(const Circuit &circuit, const SamplerTables &tables, const Trajectory &x, ModeMatrix &out) {
    auto entries = tables.entries();
    size_t width = static_cast<size_t>(out.cols());
    size_t j = 0;
    for (const Gate &gate : circuit.gates()) {
        if (auto *mg = std::get_if<Matchgate>(&gate)) {
            size_t p = mg->lower_mode;
            const auto &u = mg->u;
            for (size_t c = 0; c < width; c++) {
                Complex lo = out(p, c);
                Complex hi = out(p + 1, c);
                out(p, c) = u(0, 0) * lo + u(0, 1) * hi;
                out(p + 1, c) = u(1, 0) * lo + u(1, 1) * hi;
            }
        } else {
            const auto &e = entries[j];
            Complex phase = e.mode_phase[x.bit(j)];
            out.row(e.mode_a) *= phase;
            out.row(e.mode_b) *= phase;
            j++;
        }
    }
}

}  // namespace

void build_mode_matrix(const Circuit &circuit, const SamplerTables &tables, const Trajectory &x, ModeMatrix &out) {
    check_length(circuit, x);
    size_t n = circuit.num_modes();
    out.setIdentity(n, n);
    apply_gates(circuit, tables, x, out);
}

void build_mode_columns(const Circuit &circuit, const SamplerTables &tables, const Trajectory &x,
                        std::span<const size_t> cols, ModeMatrix &out) {
    check_length(circuit, x);
    out.setZero(circuit.num_modes(), cols.size());
    for (size_t c = 0; c < cols.size(); c++) {
        out(cols[c], c) = 1.0;
    }
    apply_gates(circuit, tables, x, out);
}

ModeMatrix mode_matrix(const Circuit &circuit, const Trajectory &x) {
    SamplerTables tables(circuit);
    ModeMatrix v;
    build_mode_matrix(circuit, tables, x, v);
    return v;
}

}  // namespace extmatch
