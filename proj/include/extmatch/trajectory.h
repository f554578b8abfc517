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

#ifndef EXTMATCH_TRAJECTORY_H
#define EXTMATCH_TRAJECTORY_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "extmatch/basis_state.h"
#include "extmatch/circuit.h"
#include "extmatch/mode_matrix.h"
#include "extmatch/rng.h"

namespace extmatch {

class SamplerTables;

/// Branch choice per controlled-phase gate: bit j selects d_0 or d_1 for
/// the j-th controlled-phase gate in circuit order.
class Trajectory {
   public:
    Trajectory() = default;
    explicit Trajectory(size_t length);
    /// Bit j of `index` is x_j. Requires length <= 64.
    static Trajectory from_index(size_t length, uint64_t index);

    size_t length() const {
        return length_;
    }
    size_t ones() const {
        return ones_;
    }
    bool bit(size_t j) const {
        return (words_[j >> 6] >> (j & 63)) & 1;
    }
    void set(size_t j, bool value);
    /// Clears all bits, keeping the length.
    void reset();

    std::span<const uint64_t> words() const {
        return {words_.data(), words_.size()};
    }

   private:
    friend void sample_trajectory(const SamplerTables &, StreamRng &, Trajectory &);

    size_t length_ = 0;
    size_t ones_ = 0;
    BitWords words_;
};

/// Per-gate constants for trajectory sampling and weighting, computed once
/// per circuit.
class SamplerTables {
   public:
    struct Entry {
        size_t mode_a;
        size_t mode_b;
        double theta;
        double cos_quarter;      // cos(theta/4)
        double sin_quarter;      // sin(theta/4)
        double cos_abs_quarter;  // cos(|theta|/4)
        double sin_abs_quarter;  // sin(|theta|/4)
        double p_one;            // probability of branch d_1
        Complex half_phase;      // e^{i theta/2}
        Complex half_phase_conj; // e^{-i theta/2}
        /// Mode-space phase applied to both modes by branch d_0 / d_1,
        /// i.e. e^{i theta/2} and -e^{i theta/2}.
        std::array<Complex, 2> mode_phase;
    };

    explicit SamplerTables(const Circuit &circuit);

    std::span<const Entry> entries() const {
        return entries_;
    }
    size_t size() const {
        return entries_.size();
    }
    /// Bit j set iff theta_j < 0.
    std::span<const uint64_t> negative_mask() const {
        return {negative_mask_.data(), negative_mask_.size()};
    }
    double extent() const {
        return extent_;
    }
    /// Product over gates of cos(|theta|/4) + sin(|theta|/4).
    double sqrt_extent() const {
        return sqrt_extent_;
    }

    /// (-1)^{|m AND x|}.
    double sign(const Trajectory &x) const;

   private:
    std::vector<Entry> entries_;
    BitWords negative_mask_;
    double extent_ = 1.0;
    double sqrt_extent_ = 1.0;
};

/// i^ones.
Complex power_of_i(size_t ones);

/// Draws one uniform per controlled-phase gate and sets x_j = 1 iff the
/// draw falls below p(x_j = 1). `out` is resized to the table length.
void sample_trajectory(const SamplerTables &tables, StreamRng &rng, Trajectory &out);
Trajectory sample_trajectory(const SamplerTables &tables, StreamRng &rng);

/// Writes V(x) into `out`: gates are applied in circuit order, each one
/// left-multiplying the running product. Matchgates contribute their block
/// on (p, p + 1); controlled-phase gate j scales rows q1 and q2 by the mode
/// phase of branch x_j.
void build_mode_matrix(const Circuit &circuit, const SamplerTables &tables, const Trajectory &x, ModeMatrix &out);
ModeMatrix mode_matrix(const Circuit &circuit, const Trajectory &x);

/// Only the listed columns of V(x), as an n x |cols| matrix. Gates act on
/// rows, so each column evolves independently of the others.
void build_mode_columns(const Circuit &circuit, const SamplerTables &tables, const Trajectory &x,
                        std::span<const size_t> cols, ModeMatrix &out);

}  // namespace extmatch

#endif
