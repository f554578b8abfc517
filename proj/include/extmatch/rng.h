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

#ifndef EXTMATCH_RNG_H
#define EXTMATCH_RNG_H

#include <cstdint>
#include <random>

namespace extmatch {

/// Identifies one independent random stream. Every field enters the seed
/// sequence verbatim, so distinct identities give distinct seed sequences.
struct StreamId {
    uint64_t seed = 0;
    /// Position of the target bitstring within its batch.
    uint64_t target = 0;
    /// Trajectory chunk within one raw estimate.
    uint64_t chunk = 0;
    /// Refinement round of the adaptive estimator (0 for plain raw estimates).
    uint64_t round = 0;
};

/// Seeded random stream for one trajectory chunk.
class StreamRng {
   public:
    explicit StreamRng(const StreamId &id) {
        std::seed_seq seq{
            static_cast<uint32_t>(id.seed),
            static_cast<uint32_t>(id.seed >> 32),
            static_cast<uint32_t>(id.target),
            static_cast<uint32_t>(id.target >> 32),
            static_cast<uint32_t>(id.chunk),
            static_cast<uint32_t>(id.chunk >> 32),
            static_cast<uint32_t>(id.round),
            static_cast<uint32_t>(id.round >> 32),
        };
        engine_.seed(seq);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace extmatch

#endif
