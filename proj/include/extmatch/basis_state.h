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

#ifndef EXTMATCH_BASIS_STATE_H
#define EXTMATCH_BASIS_STATE_H

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace extmatch {

/// Word storage for bit-packed registers. Registers up to 128 bits stay inline.
using BitWords = boost::container::small_vector<uint64_t, 2>;

inline size_t words_for_bits(size_t num_bits) {
    return (num_bits + 63) / 64;
}

/// Computational basis state of an n-mode register, one bit per mode.
///
/// Bit i is the occupation of mode i. The Hamming weight is cached and bits
/// at positions >= n are always zero.
class BasisState {
   public:
    BasisState() = default;

    /// All modes empty.
    explicit BasisState(size_t num_modes);

    /// Parses a binary string whose leftmost character is mode 0.
    static BasisState from_string(std::string_view text);
    static BasisState from_modes(size_t num_modes, std::span<const size_t> occupied);
    /// Bit i of `index` is the occupation of mode i. Requires num_modes <= 64.
    static BasisState from_index(size_t num_modes, uint64_t index);

    size_t num_modes() const {
        return num_modes_;
    }
    size_t hamming_weight() const {
        return weight_;
    }

    bool occupied(size_t mode) const {
        return (words_[mode >> 6] >> (mode & 63)) & 1;
    }
    void set(size_t mode, bool value);

    /// Occupied mode indices in ascending order.
    std::vector<size_t> occupied_modes() const;

    /// Requires num_modes <= 64.
    uint64_t to_index() const;

    std::string to_string() const;

    std::span<const uint64_t> words() const {
        return {words_.data(), words_.size()};
    }

    bool operator==(const BasisState &other) const {
        return num_modes_ == other.num_modes_ && std::equal(words_.begin(), words_.end(), other.words_.begin());
    }

   private:
    size_t num_modes_ = 0;
    size_t weight_ = 0;
    BitWords words_;
};

size_t hash_words(std::span<const uint64_t> words);

}  // namespace extmatch

template <>
struct std::hash<extmatch::BasisState> {
    size_t operator()(const extmatch::BasisState &state) const {
        return extmatch::hash_words(state.words()) ^ state.num_modes();
    }
};

#endif
