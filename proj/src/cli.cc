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

#include "extmatch/cli.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "extmatch/bounds.h"
#include "extmatch/circuit.h"
#include "extmatch/engine.h"
#include "extmatch/error.h"
#include "extmatch/oracle.h"

namespace extmatch::cli {

namespace {

std::string real(double value) {
    return fmt::format("{:.17g}", value);
}

unsigned default_threads() {
    if (const char *env = std::getenv(kThreadsEnv)) {
        char *end = nullptr;
        unsigned long value = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') {
            return static_cast<unsigned>(value);
        }
        throw input_error(std::string(kThreadsEnv) + " must be a non-negative integer, got '" + env + "'");
    }
    return 0;
}

struct Record {
    size_t input_index;
    std::string bitstring;
    EstimateResult result;
};

void write_header(const RunConfig &config, std::ostream &out) {
    if (config.format != OutputFormat::Csv) {
        return;
    }
    if (config.command == Command::Rank) {
        out << "rank,input_index,bitstring,probability,trajectories_used,extent,seed\n";
    } else {
        out << "bitstring,probability,trajectories_used,extent,seed,achieved_epsilon\n";
    }
}

void write_record(const RunConfig &config, const Record &record, std::optional<size_t> rank, std::ostream &out) {
    const EstimateResult &r = record.result;
    if (config.format == OutputFormat::Csv) {
        if (rank) {
            out << *rank << ',' << record.input_index << ',';
        }
        out << record.bitstring << ',' << real(r.probability) << ',' << r.trajectories_used << ',' << real(r.extent)
            << ',' << r.seed;
        if (!rank) {
            out << ',' << (r.achieved_epsilon && config.command == Command::Estimate ? real(*r.achieved_epsilon) : "");
        }
        out << '\n';
        return;
    }
    out << '{';
    if (rank) {
        out << "\"rank\":" << *rank << ",\"input_index\":" << record.input_index << ',';
    }
    out << "\"bitstring\":\"" << record.bitstring << "\",\"probability\":" << real(r.probability)
        << ",\"trajectories_used\":" << r.trajectories_used << ",\"extent\":" << real(r.extent)
        << ",\"seed\":" << r.seed;
    if (config.command == Command::Estimate) {
        out << ",\"achieved_epsilon\":" << real(r.achieved_epsilon.value_or(0.0))
            << ",\"failure_probability\":" << real(r.failure_probability.value_or(0.0))
            << ",\"rounds\":" << r.rounds;
    }
    out << "}\n";
}

std::vector<BasisState> load_bitstrings(const RunConfig &config, size_t num_modes) {
    std::ifstream in(*config.bitstrings_path);
    if (!in) {
        throw input_error("cannot open bitstrings file '" + *config.bitstrings_path + "'");
    }
    return read_bitstrings(in, num_modes);
}

EngineOptions engine_options(const RunConfig &config) {
    EngineOptions options;
    options.threads = config.threads;
    options.chunk_size = config.chunk_size;
    return options;
}

int run_extent(const RunConfig &config, const Circuit &circuit, std::ostream &out) {
    ExtentReport report = extent(circuit);
    if (config.format == OutputFormat::Csv) {
        out << "num_modes,num_matchgates,num_controlled_phases,extent,per_gate_factors\n";
        out << circuit.num_modes() << ',' << circuit.num_matchgates() << ',' << circuit.num_controlled_phases() << ','
            << real(report.extent) << ',';
        for (size_t j = 0; j < report.per_gate_factors.size(); j++) {
            out << (j ? ";" : "") << real(report.per_gate_factors[j]);
        }
        out << '\n';
        return kExitOk;
    }
    out << "{\"num_modes\":" << circuit.num_modes() << ",\"num_matchgates\":" << circuit.num_matchgates()
        << ",\"num_controlled_phases\":" << circuit.num_controlled_phases() << ",\"extent\":" << real(report.extent)
        << ",\"per_gate_factors\":[";
    for (size_t j = 0; j < report.per_gate_factors.size(); j++) {
        out << (j ? "," : "") << real(report.per_gate_factors[j]);
    }
    out << "]}\n";
    return kExitOk;
}

int run_traj_count(const RunConfig &config, const Circuit &circuit, std::ostream &out) {
    double xi = extent(circuit).extent;
    double p_max = config.p_max.value_or(1.0);
    uint64_t t = trajectory_count(*config.epsilon, *config.delta, p_max, xi);
    if (config.format == OutputFormat::Csv) {
        out << "trajectories,epsilon,delta,p_max,extent\n";
        out << t << ',' << real(*config.epsilon) << ',' << real(*config.delta) << ',' << real(p_max) << ','
            << real(xi) << '\n';
    } else {
        out << "{\"trajectories\":" << t << ",\"epsilon\":" << real(*config.epsilon)
            << ",\"delta\":" << real(*config.delta) << ",\"p_max\":" << real(p_max) << ",\"extent\":" << real(xi)
            << "}\n";
    }
    return kExitOk;
}

uint64_t raw_trajectories(const RunConfig &config, const Circuit &circuit) {
    if (config.trajectories) {
        return *config.trajectories;
    }
    return trajectory_count(*config.epsilon, *config.delta, config.p_max.value_or(1.0), extent(circuit).extent);
}

int run_bitstring_command(const RunConfig &config, const Circuit &circuit, std::ostream &out) {
    auto bitstrings = load_bitstrings(config, circuit.num_modes());
    EngineOptions options = engine_options(config);
    std::vector<EstimateResult> results;
    switch (config.command) {
        case Command::RawEstimate:
            results = batch_estimate(circuit, bitstrings, RawMode{raw_trajectories(config, circuit)}, config.seed,
                                     options);
            break;
        case Command::Rank:
            results = batch_estimate(circuit, bitstrings, RawMode{config.trajectories.value_or(1000)}, config.seed,
                                     options);
            break;
        case Command::Estimate:
            results = batch_estimate(circuit, bitstrings, AdaptiveMode{*config.epsilon, *config.delta}, config.seed,
                                     options);
            break;
        case Command::Exact:
            results = batch_estimate(circuit, bitstrings, ExactMode{}, config.seed, options);
            break;
        case Command::Oracle: {
            DenseState state = simulate_dense(circuit);
            double xi = extent(circuit).extent;
            for (const auto &b : bitstrings) {
                EstimateResult r;
                r.probability = state.probability(b);
                r.extent = xi;
                r.seed = config.seed;
                results.push_back(r);
            }
            break;
        }
        default:
            throw input_error("unsupported command");
    }

    std::vector<Record> records;
    records.reserve(results.size());
    for (size_t i = 0; i < results.size(); i++) {
        records.push_back({i, bitstrings[i].to_string(), results[i]});
    }
    write_header(config, out);
    if (config.command != Command::Rank) {
        for (const auto &record : records) {
            write_record(config, record, std::nullopt, out);
        }
        return kExitOk;
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const Record &a, const Record &b) { return a.result.probability > b.result.probability; });
    size_t keep = std::min(records.size(), config.top_k.value_or(records.size()));
    for (size_t k = 0; k < keep; k++) {
        write_record(config, records[k], k + 1, out);
    }
    return kExitOk;
}

}  // namespace

std::vector<BasisState> read_bitstrings(std::istream &in, size_t num_modes) {
    std::vector<BasisState> result;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        line_number++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        auto last = line.find_last_not_of(" \t");
        std::string bits = line.substr(first, last - first + 1);
        if (bits.size() != num_modes) {
            throw input_error("bitstrings line " + std::to_string(line_number) + ": length " +
                              std::to_string(bits.size()) + " does not match the circuit's " +
                              std::to_string(num_modes) + " modes");
        }
        try {
            result.push_back(BasisState::from_string(bits));
        } catch (const Error &e) {
            throw input_error("bitstrings line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    return result;
}

std::optional<RunConfig> parse_command_line(int argc, const char *const *argv, std::ostream &out) {
    RunConfig config;
    CLI::App app{"Born-rule probabilities for number-conserving matchgate circuits with controlled-phase gates",
                 "extmatch"};
    app.require_subcommand(1);

    std::optional<unsigned> threads;
    std::string format = "jsonl";
    auto add_circuit = [&](CLI::App *sub) {
        sub->add_option("--circuit", config.circuit_path, "Circuit document (JSON)")->required();
    };
    auto add_format = [&](CLI::App *sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"jsonl", "csv"}));
    };
    auto add_batch = [&](CLI::App *sub) {
        add_circuit(sub);
        sub->add_option("--bitstrings", config.bitstrings_path, "Target bitstrings, one per line")->required();
        sub->add_option("--threads", threads, "Worker threads (0 = all available)");
        sub->add_option("--chunk-size", config.chunk_size, "Trajectories per work chunk")
            ->check(CLI::PositiveNumber);
        add_format(sub);
    };

    auto *extent_cmd = app.add_subcommand("extent", "Print the circuit extent and gate counts");
    add_circuit(extent_cmd);
    add_format(extent_cmd);

    auto *count_cmd = app.add_subcommand("traj-count", "Trajectories needed for an (epsilon, delta) guarantee");
    add_circuit(count_cmd);
    count_cmd->add_option("--epsilon", config.epsilon, "Additive error")->required();
    count_cmd->add_option("--delta", config.delta, "Failure probability")->required();
    count_cmd->add_option("--pmax", config.p_max, "Upper bound on the probability (default 1)");
    add_format(count_cmd);

    auto *raw_cmd = app.add_subcommand("raw-estimate", "Fixed-trajectory Monte Carlo estimate");
    add_batch(raw_cmd);
    raw_cmd->add_option("--seed", config.seed, "Random seed");
    auto *raw_t = raw_cmd->add_option("--trajectories", config.trajectories, "Trajectories per bitstring");
    auto *raw_eps = raw_cmd->add_option("--epsilon", config.epsilon, "Additive error (derives the trajectory count)");
    auto *raw_delta = raw_cmd->add_option("--delta", config.delta, "Failure probability");
    raw_cmd->add_option("--pmax", config.p_max, "Upper bound on the probability (default 1)")->needs(raw_eps);
    raw_t->excludes(raw_eps)->excludes(raw_delta);
    raw_eps->needs(raw_delta);
    raw_delta->needs(raw_eps);

    auto *estimate_cmd = app.add_subcommand("estimate", "Adaptive estimate to additive error epsilon");
    add_batch(estimate_cmd);
    estimate_cmd->add_option("--seed", config.seed, "Random seed");
    estimate_cmd->add_option("--epsilon", config.epsilon, "Additive error")->required();
    estimate_cmd->add_option("--delta", config.delta, "Failure probability")->required();

    auto *exact_cmd = app.add_subcommand("exact", "Exact probability by enumerating all trajectories");
    add_batch(exact_cmd);

    auto *rank_cmd = app.add_subcommand("rank", "Rank bitstrings by estimated probability");
    add_batch(rank_cmd);
    rank_cmd->add_option("--seed", config.seed, "Random seed");
    rank_cmd->add_option("--trajectories", config.trajectories, "Trajectories per bitstring (default 1000)");
    rank_cmd->add_option("--top-k", config.top_k, "Number of bitstrings to keep (default all)")
        ->check(CLI::PositiveNumber);

    auto *oracle_cmd = app.add_subcommand("oracle", "Dense state-vector reference probabilities (n <= 16)");
    add_circuit(oracle_cmd);
    oracle_cmd->add_option("--bitstrings", config.bitstrings_path, "Target bitstrings, one per line")->required();
    add_format(oracle_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError &e) {
        std::string message = e.what();
        for (auto *sub : app.get_subcommands()) {
            message = sub->get_name() + ": " + message;
        }
        throw input_error(message + " (run with --help for usage)");
    }

    auto *chosen = app.get_subcommands().front();
    const std::string &name = chosen->get_name();
    if (name == "extent") {
        config.command = Command::Extent;
    } else if (name == "traj-count") {
        config.command = Command::TrajCount;
    } else if (name == "raw-estimate") {
        config.command = Command::RawEstimate;
        if (!config.trajectories && !config.epsilon) {
            throw input_error("raw-estimate: pass either --trajectories or --epsilon with --delta");
        }
        if (config.trajectories && *config.trajectories == 0) {
            throw input_error("raw-estimate: --trajectories must be positive");
        }
    } else if (name == "estimate") {
        config.command = Command::Estimate;
    } else if (name == "exact") {
        config.command = Command::Exact;
    } else if (name == "rank") {
        config.command = Command::Rank;
        if (config.trajectories && *config.trajectories == 0) {
            throw input_error("rank: --trajectories must be positive");
        }
    } else {
        config.command = Command::Oracle;
    }
    config.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Jsonl;
    config.threads = threads ? *threads : default_threads();
    return config;
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        Circuit circuit = load_circuit(config.circuit_path);
        std::ostringstream buffer;
        int code;
        switch (config.command) {
            case Command::Extent:
                code = run_extent(config, circuit, buffer);
                break;
            case Command::TrajCount:
                code = run_traj_count(config, circuit, buffer);
                break;
            default:
                code = run_bitstring_command(config, circuit, buffer);
                break;
        }
        out << buffer.str();
        out.flush();
        return code;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::Capability ? kExitRefused : kExitInputError;
    }
}

int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    std::optional<RunConfig> config;
    try {
        config = parse_command_line(argc, argv, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    if (!config) {
        return kExitOk;
    }
    return run(*config, out, err);
}

}  // namespace extmatch::cli
