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

#include "extmatch/basis_state.h"

#include "extmatch/error.h"

namespace extmatch {

BasisState::BasisState(size_t num_modes) : num_modes_(num_modes), weight_(0), words_(words_for_bits(num_modes), 0) {
}

BasisState BasisState::from_string(std::string_view text) {
    BasisState result(text.size());
    for (size_t k = 0; k < text.size(); k++) {
        char c = text[k];
        if (c == '1') {
            result.set(k, true);
        } else if (c != '0') {
            throw input_error("bitstring contains '" + std::string(1, c) + "' at position " + std::to_string(k) +
                              "; expected only '0' and '1'");
        }
    }
    return result;
}

BasisState BasisState::from_modes(size_t num_modes, std::span<const size_t> occupied) {
    BasisState result(num_modes);
    for (size_t mode : occupied) {
        if (mode >= num_modes) {
            throw input_error("mode " + std::to_string(mode) + " out of range for " + std::to_string(num_modes) +
                              " modes");
        }
        result.set(mode, true);
    }
    return result;
}

BasisState BasisState::from_index(size_t num_modes, uint64_t index) {
    if (num_modes > 64) {
        throw input_error("from_index supports at most 64 modes");
    }
    if (num_modes < 64 && (index >> num_modes) != 0) {
        throw input_error("index has bits beyond the mode count");
    }
    BasisState result(num_modes);
    if (num_modes > 0) {
        result.words_[0] = index;
        result.weight_ = std::popcount(index);
    }
    return result;
}

void BasisState::set(size_t mode, bool value) {
    uint64_t mask = uint64_t{1} << (mode & 63);
    uint64_t &word = words_[mode >> 6];
    bool was = word & mask;
    if (was == value) {
        return;
    }
    word ^= mask;
    weight_ = value ? weight_ + 1 : weight_ - 1;
}

std::vector<size_t> BasisState::occupied_modes() const {
    std::vector<size_t> result;
    result.reserve(weight_);
    for (size_t w = 0; w < words_.size(); w++) {
        uint64_t bits = words_[w];
        while (bits) {
            result.push_back(w * 64 + std::countr_zero(bits));
            bits &= bits - 1;
        }
    }
    return result;
}

uint64_t BasisState::to_index() const {
    if (num_modes_ > 64) {
        throw input_error("to_index supports at most 64 modes");
    }
    return words_.empty() ? 0 : words_[0];
}

std::string BasisState::to_string() const {
    std::string result(num_modes_, '0');
    for (size_t k = 0; k < num_modes_; k++) {
        if (occupied(k)) {
            result[k] = '1';
        }
    }
    return result;
}

size_t hash_words(std::span<const uint64_t> words) {
    uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (uint64_t w : words) {
        h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        h *= 0xBF58476D1CE4E5B9ULL;
        h ^= h >> 31;
    }
    return static_cast<size_t>(h);
}

}  // namespace extmatch
