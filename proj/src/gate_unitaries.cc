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

#include "extmatch/gate_unitaries.h"

#include <cmath>

namespace extmatch {

Eigen::Matrix4cd matchgate_unitary(const Eigen::Matrix2cd &u) {
    Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
    g(0, 0) = 1.0;
    g.block<2, 2>(1, 1) = u;
    g(3, 3) = u.determinant();
    return g;
}

Eigen::Matrix4cd controlled_phase_unitary(double theta) {
    Eigen::Matrix4cd g = Eigen::Matrix4cd::Identity();
    g(3, 3) = std::polar(1.0, theta);
    return g;
}

Eigen::Matrix4cd controlled_phase_branch(double theta, int branch) {
    double sign = branch == 0 ? 1.0 : -1.0;
    Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
    g(0, 0) = std::polar(1.0, -theta / 2);
    g(1, 1) = sign;
    g(2, 2) = sign;
    g(3, 3) = std::polar(1.0, theta / 2);
    return g;
}

Eigen::Matrix2cd single_particle_block(const Eigen::Matrix4cd &gate) {
    return gate.block<2, 2>(1, 1) / gate(0, 0);
}

Complex branch_mode_phase(double theta, int branch) {
    return single_particle_block(controlled_phase_branch(theta, branch))(0, 0);
}

}  // namespace extmatch
