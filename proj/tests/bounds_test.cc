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

#include "extmatch/bounds.h"

#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "extmatch/error.h"

using namespace extmatch;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// Direct evaluation of the trajectory bound in 50-digit arithmetic.
uint64_t reference_count(double epsilon, double delta, double p_max, double extent) {
    Big e(epsilon), d(delta), p(p_max), xi(extent);
    Big num = boost::multiprecision::pow(boost::multiprecision::sqrt(xi) + boost::multiprecision::sqrt(p), 2);
    Big den = boost::multiprecision::pow(boost::multiprecision::sqrt(p + e) - boost::multiprecision::sqrt(p), 2);
    Big t = 2 * num / den * boost::multiprecision::log(2 * boost::multiprecision::exp(Big(2)) / d);
    return static_cast<uint64_t>(boost::multiprecision::ceil(t));
}

}  // namespace

TEST(trajectory_count, reference_example) {
    // The real-valued bound is 16776.139...; frozen from reference_count.
    EXPECT_EQ(reference_count(0.1, 0.1, 1.0, 1.0), 16777u);
    EXPECT_EQ(trajectory_count(0.1, 0.1, 1.0, 1.0), 16777u);
}

TEST(trajectory_count, matches_extended_precision_on_random_grid) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> log_eps(-4, 0);
    std::uniform_real_distribution<double> unit(0.001, 0.999);
    std::uniform_real_distribution<double> log_xi(0, 4);
    for (int i = 0; i < 300; i++) {
        double eps = std::pow(10.0, log_eps(rng));
        double delta = unit(rng);
        double p = unit(rng);
        double xi = std::pow(10.0, log_xi(rng));
        ASSERT_EQ(trajectory_count(eps, delta, p, xi), reference_count(eps, delta, p, xi))
            << eps << " " << delta << " " << p << " " << xi;
    }
}

TEST(trajectory_count, monotone_in_each_argument) {
    const double eps[] = {0.001, 0.01, 0.05, 0.1, 0.5};
    const double deltas[] = {0.001, 0.01, 0.1, 0.5, 0.9};
    const double ps[] = {0.01, 0.1, 0.5, 1.0};
    const double xis[] = {1.0, 1.5, 2.0, 4.0, 100.0};
    for (double p : ps) {
        for (size_t i = 0; i + 1 < 5; i++) {
            for (size_t j = 0; j < 5; j++) {
                for (size_t k = 0; k < 5; k++) {
                    EXPECT_GE(trajectory_count(eps[i], deltas[j], p, xis[k]),
                              trajectory_count(eps[i + 1], deltas[j], p, xis[k]));
                    EXPECT_GE(trajectory_count(eps[j], deltas[i], p, xis[k]),
                              trajectory_count(eps[j], deltas[i + 1], p, xis[k]));
                    EXPECT_LE(trajectory_count(eps[j], deltas[k], p, xis[i]),
                              trajectory_count(eps[j], deltas[k], p, xis[i + 1]));
                }
            }
        }
    }
    EXPECT_LT(trajectory_count(0.05, 0.01, 1, 2), trajectory_count(0.05, 0.01, 1, 4));
}

TEST(trajectory_count, domain_errors) {
    EXPECT_THROW(trajectory_count(0, 0.1, 1, 1), Error);
    EXPECT_THROW(trajectory_count(-1, 0.1, 1, 1), Error);
    EXPECT_THROW(trajectory_count(0.1, 0, 1, 1), Error);
    EXPECT_THROW(trajectory_count(0.1, 1, 1, 1), Error);
    EXPECT_THROW(trajectory_count(0.1, 0.1, 0, 1), Error);
    EXPECT_THROW(trajectory_count(0.1, 0.1, 1.5, 1), Error);
    EXPECT_THROW(trajectory_count(0.1, 0.1, 1, 0.5), Error);
    try {
        trajectory_count(0.1, 0.1, 1, 0.5);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
    EXPECT_THROW(epsilon_from_count(0, 0.1, 1, 1), Error);
    EXPECT_THROW(epsilon_from_count(10, 0.1, 1, 0.9), Error);
}

TEST(epsilon_from_count, inverts_trajectory_count) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> log_eps(-3, 0);
    std::uniform_real_distribution<double> unit(0.001, 0.999);
    std::uniform_real_distribution<double> log_xi(0, 3);
    for (int i = 0; i < 500; i++) {
        double eps = std::pow(10.0, log_eps(rng));
        double delta = unit(rng);
        double p = unit(rng);
        double xi = std::pow(10.0, log_xi(rng));
        uint64_t t = trajectory_count(eps, delta, p, xi);
        double back = epsilon_from_count(t, delta, p, xi);
        ASSERT_LE(back, eps * (1 + 1e-6));
        ASSERT_LE(trajectory_count(back, delta, p, xi), t);
        ASSERT_GE(trajectory_count(back, delta, p, xi) + 1, t);
    }
    uint64_t t = trajectory_count(0.05, 0.01, 1, 2);
    EXPECT_NEAR(epsilon_from_count(t, 0.01, 1, 2), 0.05, 0.05 * 1e-4);
}

TEST(epsilon_from_count, vanishes_as_count_grows) {
    double previous = epsilon_from_count(1, 0.05, 1, 3);
    for (uint64_t t = 10; t < uint64_t{1} << 60; t *= 10) {
        double e = epsilon_from_count(t, 0.05, 1, 3);
        EXPECT_LT(e, previous);
        previous = e;
    }
    EXPECT_LT(previous, 1e-7);
}
