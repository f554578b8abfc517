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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "extmatch/error.h"
#include "support/random_circuits.h"

using namespace extmatch;

TEST(oracle, empty_circuit_keeps_initial_state) {
    Circuit c(BasisState::from_string("0110"), {});
    EXPECT_EQ(oracle_probability(c, c.initial()), 1.0);
    EXPECT_EQ(oracle_probability(c, BasisState::from_string("1010")), 0.0);
    auto support = oracle_support(c);
    ASSERT_EQ(support.size(), 1u);
    EXPECT_EQ(support[0].first, c.initial());
    EXPECT_EQ(support[0].second, 1.0);
}

TEST(oracle, givens_rotation_splits_one_particle) {
    double phi = 0.61;
    Circuit c(BasisState::from_string("10"), {Matchgate{0, test_support::givens(phi)}});
    EXPECT_NEAR(oracle_probability(c, BasisState::from_string("10")), std::pow(std::cos(phi), 2), 1e-15);
    EXPECT_NEAR(oracle_probability(c, BasisState::from_string("01")), std::pow(std::sin(phi), 2), 1e-15);
    // The doubly occupied pair only picks up det(u) = 1.
    Circuit both(BasisState::from_string("11"), {Matchgate{0, test_support::givens(phi)}});
    EXPECT_NEAR(oracle_probability(both, both.initial()), 1.0, 1e-15);
}

TEST(oracle, controlled_phase_acts_only_on_double_occupation) {
    double theta = 1.1;
    DenseState s(BasisState::from_string("11"));
    s.apply(0, 1, controlled_phase_unitary(theta));
    EXPECT_LT(std::abs(s.amplitudes()[3] - std::polar(1.0, theta)), 1e-15);
    DenseState t(BasisState::from_string("10"));
    t.apply(0, 1, controlled_phase_unitary(theta));
    EXPECT_EQ(t.amplitudes()[1], Complex(1, 0));
}

TEST(oracle, support_is_normalized_and_weight_conserving) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 20; trial++) {
        test_support::RandomCircuitShape shape{.num_modes = 8, .hamming_weight = 1 + static_cast<size_t>(trial % 7),
                                               .num_matchgates = 25, .num_controlled_phases = 8};
        Circuit c = test_support::random_circuit(shape, rng);
        EXPECT_NEAR(simulate_dense(c).norm_squared(), 1.0, 1e-12);
        auto support = oracle_support(c);
        double total = 0;
        for (size_t i = 0; i < support.size(); i++) {
            ASSERT_EQ(support[i].first.hamming_weight(), shape.hamming_weight);
            ASSERT_GT(support[i].second, kOracleSupportThreshold);
            if (i > 0) {
                ASSERT_LT(support[i - 1].first.to_index(), support[i].first.to_index());
            }
            total += support[i].second;
        }
        ASSERT_NEAR(total, 1.0, 1e-12);
        double binomial = std::round(std::tgamma(9.0) / std::tgamma(shape.hamming_weight + 1.0) /
                                     std::tgamma(9.0 - shape.hamming_weight));
        ASSERT_LE(support.size(), static_cast<size_t>(binomial));
    }
}

TEST(oracle, refuses_large_registers) {
    Circuit c(BasisState(kOracleMaxModes + 1), {});
    try {
        oracle_probability(c, c.initial());
        FAIL() << "expected refusal";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Capability);
    }
    EXPECT_THROW(oracle_support(c), Error);
    Circuit small(BasisState(3), {});
    EXPECT_THROW(oracle_probability(small, BasisState(4)), Error);
}
