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

#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "extmatch/circuit.h"
#include "extmatch/trajectory.h"
#include "support/random_circuits.h"

using namespace extmatch;

TEST(gate_unitaries, controlled_phase_splits_into_two_branches) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 200; i++) {
        double theta = dist(rng);
        Eigen::Matrix4cd sum = std::polar(1.0, theta / 4) *
                               (std::cos(theta / 4) * controlled_phase_branch(theta, 0) +
                                Complex(0, std::sin(theta / 4)) * controlled_phase_branch(theta, 1));
        ASSERT_LT((sum - controlled_phase_unitary(theta)).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(gate_unitaries, matchgate_is_unitary_and_free_fermionic) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; i++) {
        Eigen::Matrix2cd u = test_support::random_unitary2(rng);
        Eigen::Matrix4cd g = matchgate_unitary(u);
        ASSERT_LT((g.adjoint() * g - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-13);
        ASSERT_LT((single_particle_block(g) - u).cwiseAbs().maxCoeff(), 1e-15);
        ASSERT_LT(std::abs(g(3, 3) - single_particle_block(g).determinant()), 1e-15);
        // A[[a11,a12],[a21,a22]] block on {|00>,|11>} with det A = det B.
        Eigen::Matrix2cd a;
        a << g(0, 0), g(0, 3), g(3, 0), g(3, 3);
        ASSERT_LT(std::abs(a.determinant() - g.block<2, 2>(1, 1).determinant()), 1e-14);
    }
}

TEST(gate_unitaries, branches_are_free_fermionic_with_shared_mode_phases) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 200; i++) {
        double theta = dist(rng);
        for (int branch = 0; branch < 2; branch++) {
            Eigen::Matrix4cd d = controlled_phase_branch(theta, branch);
            Eigen::Matrix2cd block = single_particle_block(d);
            ASSERT_EQ(block(0, 1), Complex(0, 0));
            ASSERT_LT(std::abs(block(0, 0) - block(1, 1)), 1e-15);
            ASSERT_LT(std::abs(d(3, 3) / d(0, 0) - block.determinant()), 1e-14);
            Complex expected = (branch ? -1.0 : 1.0) * std::polar(1.0, theta / 2);
            ASSERT_LT(std::abs(branch_mode_phase(theta, branch) - expected), 1e-15);
        }
        // D_0^{-1} D_1 is -1 on both modes.
        ASSERT_LT(std::abs(branch_mode_phase(theta, 1) / branch_mode_phase(theta, 0) + 1.0), 1e-15);
    }
}

TEST(gate_unitaries, sampler_tables_use_the_shared_phases) {
    std::mt19937_64 rng(8);
    test_support::RandomCircuitShape shape{.num_modes = 6, .hamming_weight = 3, .num_matchgates = 3,
                                      .num_controlled_phases = 10};
    Circuit c = test_support::random_circuit(shape, rng);
    SamplerTables tables(c);
    for (size_t j = 0; j < tables.size(); j++) {
        const auto &e = tables.entries()[j];
        for (int branch = 0; branch < 2; branch++) {
            ASSERT_EQ(e.mode_phase[branch], branch_mode_phase(c.angles()[j], branch));
        }
    }
}
