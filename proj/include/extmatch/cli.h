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

#ifndef EXTMATCH_CLI_H
#define EXTMATCH_CLI_H

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "extmatch/basis_state.h"

namespace extmatch::cli {

enum class Command { Extent, TrajCount, RawEstimate, Estimate, Exact, Rank, Oracle };
enum class OutputFormat { Jsonl, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitRefused = 3;

/// Environment variable consulted when --threads is not given.
inline constexpr const char *kThreadsEnv = "EXTMATCH_THREADS";

struct RunConfig {
    Command command = Command::Extent;
    std::string circuit_path;
    std::optional<std::string> bitstrings_path;
    uint64_t seed = 0;
    /// 0 = all available.
    unsigned threads = 0;
    std::optional<uint64_t> trajectories;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::optional<double> p_max;
    std::optional<size_t> top_k;
    size_t chunk_size = 1024;
    OutputFormat format = OutputFormat::Jsonl;
};

/// Parses argv into a RunConfig. Throws an input Error with an actionable
/// message when flags are missing, unknown, or inconsistent with the command.
/// Returns nullopt after printing help to `out`.
std::optional<RunConfig> parse_command_line(int argc, const char *const *argv, std::ostream &out);

/// Newline-separated binary strings, leftmost character mode 0. Blank lines
/// and lines starting with '#' are skipped. Errors name the line number.
std::vector<BasisState> read_bitstrings(std::istream &in, size_t num_modes);

/// Executes a parsed configuration, writing records to `out`.
/// Returns the process exit code.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// parse_command_line + run with error-to-exit-code mapping.
int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace extmatch::cli

#endif
