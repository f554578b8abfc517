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

#ifndef EXTMATCH_CIRCUIT_H
#define EXTMATCH_CIRCUIT_H

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "extmatch/basis_state.h"
#include "extmatch/gate_unitaries.h"

namespace extmatch {

/// Number-conserving nearest-neighbor matchgate on modes (lower, lower + 1).
/// Stored as its single-particle block; the global phase is irrelevant to
/// Born probabilities. Row/column 0 of `u` is the lower mode.
struct Matchgate {
    size_t lower_mode;
    Eigen::Matrix2cd u;

    size_t upper_mode() const {
        return lower_mode + 1;
    }
};

/// diag(1, 1, 1, e^{i theta}) on an arbitrary pair of distinct modes.
struct ControlledPhase {
    size_t mode_a;
    size_t mode_b;
    /// Normalized to (-pi, pi].
    double theta;
};

using Gate = std::variant<Matchgate, ControlledPhase>;

inline constexpr double kUnitarityTolerance = 1e-12;

/// Maps an angle to its representative in (-pi, pi].
double normalize_angle(double theta);

/// An initial occupation state followed by an ordered gate list.
/// Immutable after construction; the constructor validates every gate.
class Circuit {
   public:
    Circuit(BasisState initial, std::vector<Gate> gates);

    size_t num_modes() const {
        return initial_.num_modes();
    }
    const BasisState &initial() const {
        return initial_;
    }
    std::span<const Gate> gates() const {
        return gates_;
    }
    /// Number of controlled-phase gates (k).
    size_t num_controlled_phases() const {
        return angles_.size();
    }
    size_t num_matchgates() const {
        return gates_.size() - angles_.size();
    }
    /// Controlled-phase angles in circuit order.
    std::span<const double> angles() const {
        return angles_;
    }
    /// Controlled-phase gates in circuit order.
    std::span<const ControlledPhase> controlled_phases() const {
        return controlled_phases_;
    }

   private:
    BasisState initial_;
    std::vector<Gate> gates_;
    std::vector<double> angles_;
    std::vector<ControlledPhase> controlled_phases_;
};

/// Gate lists joined in order; both circuits must share the initial state.
Circuit concatenate(const Circuit &first, const Circuit &second);

Circuit parse_circuit(std::string_view text);
Circuit load_circuit(const std::filesystem::path &path);
std::string serialize_circuit(const Circuit &circuit);

struct ExtentReport {
    double extent;
    std::vector<double> per_gate_factors;
};

/// Product over controlled-phase gates of (cos(|theta|/4) + sin(|theta|/4))^2.
ExtentReport extent(const Circuit &circuit);

/// (cos(|theta|/4) + sin(|theta|/4))^2, evaluated as 1 + sin(|theta|/2).
double extent_factor(double theta);

}  // namespace extmatch

#endif
