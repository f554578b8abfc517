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

#ifndef EXTMATCH_BOUNDS_H
#define EXTMATCH_BOUNDS_H

#include <cstdint>

namespace extmatch {

/// Number of sampled trajectories that guarantees additive error `epsilon`
/// with failure probability at most `delta` for an outcome whose
/// probability is at most `p_max`, on a circuit of the given extent:
///
///     t = ceil( 2 (sqrt(extent) + sqrt(p_max))^2
///               / (sqrt(p_max + epsilon) - sqrt(p_max))^2
///               * ln(2 e^2 / delta) )
///
/// Throws a domain error for epsilon <= 0, delta outside (0, 1), p_max
/// outside (0, 1], extent < 1, or a count that does not fit in 63 bits.
uint64_t trajectory_count(double epsilon, double delta, double p_max, double extent);

/// Inverse of trajectory_count in epsilon: the additive error guaranteed by
/// t trajectories. Closed form (sqrt(p_max) + c)^2 - p_max with
/// c = (sqrt(extent) + sqrt(p_max)) * sqrt(2 ln(2 e^2 / delta) / t).
double epsilon_from_count(uint64_t trajectories, double delta, double p_max, double extent);

}  // namespace extmatch

#endif
