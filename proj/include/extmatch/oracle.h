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

#ifndef EXTMATCH_ORACLE_H
#define EXTMATCH_ORACLE_H

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "extmatch/basis_state.h"
#include "extmatch/circuit.h"
#include "extmatch/gate_unitaries.h"

namespace extmatch {

inline constexpr size_t kOracleMaxModes = 16;
inline constexpr double kOracleSupportThreshold = 1e-14;

/// Full 2^n state vector; bit i of an index is the occupation of mode i.
/// Reference simulator for small instances.
class DenseState {
   public:
    explicit DenseState(const BasisState &initial);

    size_t num_modes() const {
        return num_modes_;
    }
    const std::vector<Complex> &amplitudes() const {
        return amplitudes_;
    }

    /// Applies a 4x4 gate indexed by occupation(q1) + 2 occupation(q2).
    void apply(size_t q1, size_t q2, const Eigen::Matrix4cd &gate);
    void apply(const Gate &gate);

    double norm_squared() const;
    double probability(const BasisState &b) const;

   private:
    size_t num_modes_;
    std::vector<Complex> amplitudes_;
};

DenseState simulate_dense(const Circuit &circuit);

/// |<b| Q |a>|^2 by dense state-vector simulation.
double oracle_probability(const Circuit &circuit, const BasisState &b);

/// Every basis state with probability above 1e-14, in ascending index order.
std::vector<std::pair<BasisState, double>> oracle_support(const Circuit &circuit);

}  // namespace extmatch

#endif
