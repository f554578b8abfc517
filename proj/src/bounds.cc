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

#include <cmath>
#include <string>

#include "extmatch/error.h"

namespace extmatch {

namespace {

void check_common(double delta, double p_max, double extent) {
    if (!(delta > 0 && delta < 1)) {
        throw domain_error("delta must lie in (0, 1), got " + std::to_string(delta));
    }
    if (!(p_max > 0 && p_max <= 1)) {
        throw domain_error("p_max must lie in (0, 1], got " + std::to_string(p_max));
    }
    if (!(extent >= 1) || !std::isfinite(extent)) {
        throw domain_error("extent must be finite and at least 1, got " + std::to_string(extent));
    }
}

// ln(2 e^2 / delta)
double confidence_log(double delta) {
    return 2.0 + std::log(2.0 / delta);
}

}  // namespace

uint64_t trajectory_count(double epsilon, double delta, double p_max, double extent) {
    if (!(epsilon > 0) || !std::isfinite(epsilon)) {
        throw domain_error("epsilon must be positive and finite, got " + std::to_string(epsilon));
    }
    check_common(delta, p_max, extent);
    double root_p = std::sqrt(p_max);
    double numerator = std::sqrt(extent) + root_p;
    // sqrt(p + e) - sqrt(p) written without cancellation.
    double gap = epsilon / (std::sqrt(p_max + epsilon) + root_p);
    double t = std::ceil(2.0 * (numerator * numerator) / (gap * gap) * confidence_log(delta));
    if (!(t < 9.2e18)) {
        throw domain_error("trajectory count overflows 63 bits");
    }
    return static_cast<uint64_t>(t);
}

double epsilon_from_count(uint64_t trajectories, double delta, double p_max, double extent) {
    if (trajectories == 0) {
        throw domain_error("trajectory count must be positive");
    }
    check_common(delta, p_max, extent);
    double root_p = std::sqrt(p_max);
    double c = (std::sqrt(extent) + root_p) * std::sqrt(2.0 * confidence_log(delta) / static_cast<double>(trajectories));
    double epsilon = c * (2.0 * root_p + c);
    // Rounding can leave the forward count one above `trajectories`; step up
    // until the two directions agree.
    if (trajectories < (uint64_t{1} << 62)) {
        for (int step = 0; step < 64 && trajectory_count(epsilon, delta, p_max, extent) > trajectories; step++) {
            epsilon = std::nextafter(epsilon, INFINITY);
        }
    }
    return epsilon;
}

}  // namespace extmatch
