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

#ifndef EXTMATCH_GATE_UNITARIES_H
#define EXTMATCH_GATE_UNITARIES_H

#include <complex>

#include <Eigen/Dense>

namespace extmatch {

using Complex = std::complex<double>;

// Two-mode gate convention shared by the dense oracle and the trajectory
// engine. A 4x4 gate acting on modes (q1, q2) is indexed by
// occupation(q1) + 2 * occupation(q2), so index 1 is "only q1 occupied" and
// index 2 is "only q2 occupied".

/// Number-conserving matchgate from its single-particle block u:
/// |00> -> |00>, single-particle sector -> u, |11> -> det(u) |11>.
Eigen::Matrix4cd matchgate_unitary(const Eigen::Matrix2cd &u);

/// diag(1, 1, 1, e^{i theta}).
Eigen::Matrix4cd controlled_phase_unitary(double theta);

/// Branch matrix d_0 or d_1 of the controlled-phase decomposition
///     c(theta) = e^{i theta/4} [cos(theta/4) d_0 + i sin(theta/4) d_1],
/// with d_b = diag(e^{-i theta/2}, (-1)^b, (-1)^b, e^{i theta/2}).
Eigen::Matrix4cd controlled_phase_branch(double theta, int branch);

/// Single-particle block of a number-conserving two-mode gate, with the
/// vacuum phase divided out. For a gate that is free-fermionic this is its
/// mode transformation on the pair of modes.
Eigen::Matrix2cd single_particle_block(const Eigen::Matrix4cd &gate);

/// Phase that controlled-phase branch `branch` applies to each of its two
/// modes in mode space: (-1)^branch e^{i theta/2}. Derived from
/// controlled_phase_branch so both simulators share one convention.
Complex branch_mode_phase(double theta, int branch);

}  // namespace extmatch

#endif
