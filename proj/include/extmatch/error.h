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

#ifndef EXTMATCH_ERROR_H
#define EXTMATCH_ERROR_H

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace extmatch {

enum class ErrorKind {
    /// Malformed or inconsistent input (bad document, wrong lengths, bad indices).
    Input,
    /// Numeric argument outside the domain of a formula.
    Domain,
    /// The request is well formed but refused because of its cost
    /// (exact enumeration over the cap, oracle over its mode limit,
    /// adaptive estimation that cannot reach the requested precision).
    Capability,
};

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message, std::optional<size_t> item_index = std::nullopt)
        : std::runtime_error(message), kind_(kind), item_index_(item_index) {
    }

    ErrorKind kind() const noexcept {
        return kind_;
    }

    /// Position of the offending item when raised from a batch call.
    std::optional<size_t> item_index() const noexcept {
        return item_index_;
    }

   private:
    ErrorKind kind_;
    std::optional<size_t> item_index_;
};

inline Error input_error(const std::string &message) {
    return Error(ErrorKind::Input, message);
}

inline Error domain_error(const std::string &message) {
    return Error(ErrorKind::Domain, message);
}

inline Error capability_error(const std::string &message) {
    return Error(ErrorKind::Capability, message);
}

}  // namespace extmatch

#endif
