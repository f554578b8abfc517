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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "extmatch/error.h"
#include "support/random_circuits.h"

using namespace extmatch;

namespace {

Circuit phases_on_two_modes(const std::vector<double> &angles) {
    std::vector<Gate> gates;
    for (double theta : angles) {
        gates.push_back(ControlledPhase{0, 1, theta});
    }
    return Circuit(BasisState::from_string("11"), gates);
}

double ones_frequency(double theta, size_t draws, uint64_t seed) {
    SamplerTables tables(phases_on_two_modes({theta}));
    StreamRng rng({seed, 0, 0, 0});
    Trajectory x;
    size_t ones = 0;
    for (size_t i = 0; i < draws; i++) {
        sample_trajectory(tables, rng, x);
        ones += x.ones();
    }
    return static_cast<double>(ones) / static_cast<double>(draws);
}

}  // namespace

TEST(sample_trajectory, zero_angle_never_takes_branch_one) {
    SamplerTables tables(phases_on_two_modes({0, 0, 0, 0}));
    StreamRng rng({1, 0, 0, 0});
    for (int i = 0; i < 10000; i++) {
        ASSERT_EQ(sample_trajectory(tables, rng).ones(), 0u);
    }
}

TEST(sample_trajectory, branch_frequencies_within_three_sigma) {
    const size_t draws = 100000;
    struct Case {
        double theta;
        double p;
    };
    const Case cases[] = {
        {std::numbers::pi, 0.5},
        {std::numbers::pi / 2, 0.2928932188134524},
        {-std::numbers::pi / 2, 0.2928932188134524},
        {1.0, std::sin(0.25) / (std::sin(0.25) + std::cos(0.25))},
    };
    for (const auto &c : cases) {
        double sigma = std::sqrt(c.p * (1 - c.p) / draws);
        EXPECT_NEAR(ones_frequency(c.theta, draws, 17), c.p, 3 * sigma) << c.theta;
    }
    SamplerTables half(phases_on_two_modes({std::numbers::pi / 2}));
    EXPECT_NEAR(half.entries()[0].p_one, 1 - 1 / std::sqrt(2.0), 1e-15);
}

TEST(sample_trajectory, branch_one_probability_at_most_half) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> dist(-std::numbers::pi, std::numbers::pi);
    std::vector<double> angles(200);
    for (auto &a : angles) {
        a = dist(rng);
    }
    angles.push_back(std::numbers::pi);
    SamplerTables tables(phases_on_two_modes(angles));
    for (const auto &e : tables.entries()) {
        ASSERT_GE(e.p_one, 0.0);
        ASSERT_LE(e.p_one, 0.5);
    }
}

TEST(sample_trajectory, consumes_exactly_one_draw_per_gate) {
    std::vector<double> angles = {0.3, -1.2, 0.0, 2.5, std::numbers::pi, -0.7, 1.9};
    SamplerTables tables(phases_on_two_modes(angles));
    StreamRng sampler({5, 6, 7, 8});
    StreamRng mirror({5, 6, 7, 8});
    Trajectory x;
    for (int round = 0; round < 1000; round++) {
        sample_trajectory(tables, sampler, x);
        for (size_t j = 0; j < angles.size(); j++) {
            bool expected = mirror.uniform() < tables.entries()[j].p_one;
            ASSERT_EQ(x.bit(j), expected);
        }
    }
}

TEST(sample_trajectory, sign_follows_negative_angles) {
    SamplerTables tables(phases_on_two_modes({0.5, -0.5, -1.0}));
    Trajectory x = Trajectory::from_index(3, 0b000);
    EXPECT_EQ(tables.sign(x), 1.0);
    EXPECT_EQ(tables.sign(Trajectory::from_index(3, 0b001)), 1.0);
    EXPECT_EQ(tables.sign(Trajectory::from_index(3, 0b010)), -1.0);
    EXPECT_EQ(tables.sign(Trajectory::from_index(3, 0b110)), 1.0);
    EXPECT_EQ(tables.sign(Trajectory::from_index(3, 0b111)), 1.0);
    EXPECT_EQ(tables.sign(Trajectory::from_index(3, 0b101)), -1.0);
}

TEST(mode_matrix, identity_circuit) {
    Circuit c(BasisState::from_string("0110"), {});
    ModeMatrix v = mode_matrix(c, Trajectory(0));
    EXPECT_TRUE(v.isApprox(ModeMatrix::Identity(4, 4)));
}

TEST(mode_matrix, single_phase_branches) {
    double theta = 0.8;
    Circuit c(BasisState::from_string("110"), {ControlledPhase{0, 2, theta}});
    ModeMatrix v0 = mode_matrix(c, Trajectory::from_index(1, 0));
    ModeMatrix v1 = mode_matrix(c, Trajectory::from_index(1, 1));
    Complex phase = std::polar(1.0, theta / 2);
    ModeMatrix expected = ModeMatrix::Identity(3, 3);
    expected(0, 0) = expected(2, 2) = phase;
    EXPECT_LT((v0 - expected).cwiseAbs().maxCoeff(), 1e-15);
    expected(0, 0) = expected(2, 2) = -phase;
    EXPECT_LT((v1 - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(mode_matrix, gates_compose_in_circuit_order) {
    std::mt19937_64 rng(3);
    Eigen::Matrix2cd u1 = test_support::random_unitary2(rng);
    Eigen::Matrix2cd u2 = test_support::random_unitary2(rng);
    Circuit c(BasisState::from_string("100"), {Matchgate{0, u1}, Matchgate{1, u2}});
    ModeMatrix e1 = ModeMatrix::Identity(3, 3);
    e1.block(0, 0, 2, 2) = u1;
    ModeMatrix e2 = ModeMatrix::Identity(3, 3);
    e2.block(1, 1, 2, 2) = u2;
    ModeMatrix v = mode_matrix(c, Trajectory(0));
    EXPECT_LT((v - e2 * e1).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(mode_matrix, unitary_on_random_circuits) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; trial++) {
        test_support::RandomCircuitShape shape{.num_modes = 10, .hamming_weight = 4, .num_matchgates = 40,
                                               .num_controlled_phases = 12};
        Circuit c = test_support::random_circuit(shape, rng);
        SamplerTables tables(c);
        StreamRng stream({static_cast<uint64_t>(trial), 0, 0, 0});
        for (int i = 0; i < 10; i++) {
            ASSERT_LT(unitarity_deviation(mode_matrix(c, sample_trajectory(tables, stream))),
                      kModeMatrixUnitarityTolerance);
        }
    }
}

TEST(mode_matrix, rejects_length_mismatch) {
    Circuit c = phases_on_two_modes({0.1, 0.2});
    EXPECT_THROW(mode_matrix(c, Trajectory(3)), Error);
}

TEST(trajectory, index_form_and_edits) {
    Trajectory small = Trajectory::from_index(5, 0b1011);
    EXPECT_EQ(small.ones(), 3u);
    EXPECT_TRUE(small.bit(0) && small.bit(1) && !small.bit(2) && small.bit(3));
    Trajectory x(70);
    for (size_t j : {0, 1, 3}) {
        x.set(j, true);
    }
    x.set(1, true);
    EXPECT_EQ(x.length(), 70u);
    EXPECT_EQ(x.ones(), 3u);
    x.set(69, true);
    x.set(0, false);
    EXPECT_EQ(x.ones(), 3u);
    EXPECT_TRUE(x.bit(69));
    EXPECT_FALSE(x.bit(0));
    x.reset();
    EXPECT_EQ(x.ones(), 0u);
    EXPECT_THROW(Trajectory::from_index(65, 0), Error);
}

TEST(power_of_i, cycles) {
    EXPECT_EQ(power_of_i(0), Complex(1, 0));
    EXPECT_EQ(power_of_i(1), Complex(0, 1));
    EXPECT_EQ(power_of_i(2), Complex(-1, 0));
    EXPECT_EQ(power_of_i(3), Complex(0, -1));
    EXPECT_EQ(power_of_i(401), Complex(0, 1));
}

TEST(mode_matrix, column_block_matches_full_matrix) {
    std::mt19937_64 rng(6);
    test_support::RandomCircuitShape shape{.num_modes = 9, .hamming_weight = 4, .num_matchgates = 30,
                                           .num_controlled_phases = 8};
    Circuit c = test_support::random_circuit(shape, rng);
    SamplerTables tables(c);
    StreamRng stream({1, 2, 3, 4});
    auto cols = c.initial().occupied_modes();
    ModeMatrix block;
    for (int i = 0; i < 20; i++) {
        Trajectory x = sample_trajectory(tables, stream);
        ModeMatrix full = mode_matrix(c, x);
        build_mode_columns(c, tables, x, cols, block);
        ASSERT_EQ(block.cols(), 4);
        for (size_t k = 0; k < cols.size(); k++) {
            ASSERT_LT((block.col(k) - full.col(cols[k])).cwiseAbs().maxCoeff(), 1e-15);
        }
    }
}

TEST(determinant_workspace, matches_eigen_lu) {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> normal;
    DeterminantWorkspace workspace;
    for (int h = 0; h <= 14; h++) {
        for (int rep = 0; rep < 5; rep++) {
            Eigen::MatrixXcd m(h, h);
            for (int r = 0; r < h; r++) {
                for (int c = 0; c < h; c++) {
                    m(r, c) = Complex(normal(rng), normal(rng));
                }
            }
            Complex expected = h == 0 ? Complex(1.0) : m.partialPivLu().determinant();
            workspace.buffer(h) = m;
            Complex got = workspace.determinant();
            ASSERT_LE(std::abs(got - expected), 1e-12 * std::max(1.0, std::abs(expected))) << h;
        }
    }
}

TEST(determinant_workspace, pivots_and_singular_inputs) {
    DeterminantWorkspace workspace;
    // Zero leading entry forces a row swap; the permutation flips the sign.
    Eigen::MatrixXcd swap(3, 3);
    swap << 0, 1, 0, 1, 0, 0, 0, 0, Complex(0, 2);
    workspace.buffer(3) = swap;
    EXPECT_EQ(workspace.determinant(), Complex(0, -2));

    Eigen::MatrixXcd singular(3, 3);
    singular << 1, 2, 3, 2, 4, 6, Complex(0, 1), 5, 7;
    workspace.buffer(3) = singular;
    EXPECT_LT(std::abs(workspace.determinant()), 1e-14);

    workspace.buffer(4) = Eigen::MatrixXcd::Zero(4, 4);
    EXPECT_EQ(workspace.determinant(), Complex(0.0));
}
