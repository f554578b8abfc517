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

#include "extmatch/circuit.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "extmatch/error.h"

namespace extmatch {

namespace {

using nlohmann::json;

std::string gate_label(size_t index) {
    return "gates[" + std::to_string(index) + "]";
}

void validate_matchgate(const Matchgate &g, size_t num_modes, size_t index) {
    if (g.upper_mode() >= num_modes) {
        throw input_error(gate_label(index) + ": mode index " + std::to_string(g.upper_mode()) +
                          " out of range for " + std::to_string(num_modes) + " modes");
    }
    if (!g.u.allFinite()) {
        throw input_error(gate_label(index) + ": matchgate block has non-finite entries");
    }
    double deviation = (g.u.adjoint() * g.u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (deviation > kUnitarityTolerance) {
        throw input_error(gate_label(index) + ": non-unitary matchgate block (max |u^dagger u - I| = " +
                          std::to_string(deviation) + ")");
    }
}

void validate_controlled_phase(const ControlledPhase &g, size_t num_modes, size_t index) {
    if (g.mode_a >= num_modes || g.mode_b >= num_modes) {
        throw input_error(gate_label(index) + ": mode index out of range for " + std::to_string(num_modes) +
                          " modes");
    }
    if (g.mode_a == g.mode_b) {
        throw input_error(gate_label(index) + ": controlled-phase modes must be distinct");
    }
    if (!std::isfinite(g.theta)) {
        throw input_error(gate_label(index) + ": theta must be finite");
    }
}

size_t read_index(const json &value, const std::string &field) {
    if (!value.is_number_integer() || value.get<int64_t>() < 0) {
        throw input_error(field + ": expected a non-negative integer");
    }
    return value.get<size_t>();
}

double read_real(const json &value, const std::string &field) {
    if (!value.is_number()) {
        throw input_error(field + ": expected a number");
    }
    return value.get<double>();
}

const json &require(const json &object, const char *key, const std::string &context) {
    auto it = object.find(key);
    if (it == object.end()) {
        throw input_error(context + ": missing field '" + key + "'");
    }
    return *it;
}

std::pair<size_t, size_t> read_modes(const json &gate, const std::string &label) {
    const json &modes = require(gate, "modes", label);
    if (!modes.is_array() || modes.size() != 2) {
        throw input_error(label + ".modes: expected an array of two mode indices");
    }
    return {read_index(modes[0], label + ".modes[0]"), read_index(modes[1], label + ".modes[1]")};
}

Gate read_gate(const json &gate, size_t index) {
    std::string label = gate_label(index);
    if (!gate.is_object()) {
        throw input_error(label + ": expected an object");
    }
    const json &type = require(gate, "type", label);
    if (!type.is_string()) {
        throw input_error(label + ".type: expected a string");
    }
    auto [first, second] = read_modes(gate, label);
    if (type == "matchgate") {
        if (second != first + 1) {
            throw input_error(label + ": non-nearest-neighbor matchgate on modes (" + std::to_string(first) + ", " +
                              std::to_string(second) + ")");
        }
        const json &u = require(gate, "u", label);
        if (!u.is_array() || u.size() != 2) {
            throw input_error(label + ".u: expected a 2x2 array of [re, im] pairs");
        }
        Matchgate result{first, Eigen::Matrix2cd::Zero()};
        for (size_t r = 0; r < 2; r++) {
            if (!u[r].is_array() || u[r].size() != 2) {
                throw input_error(label + ".u: expected a 2x2 array of [re, im] pairs");
            }
            for (size_t c = 0; c < 2; c++) {
                std::string field = label + ".u[" + std::to_string(r) + "][" + std::to_string(c) + "]";
                const json &entry = u[r][c];
                if (!entry.is_array() || entry.size() != 2) {
                    throw input_error(field + ": expected [re, im]");
                }
                result.u(r, c) = Complex(read_real(entry[0], field), read_real(entry[1], field));
            }
        }
        return result;
    }
    if (type == "cphase") {
        double theta = read_real(require(gate, "theta", label), label + ".theta");
        return ControlledPhase{first, second, theta};
    }
    throw input_error(label + ".type: unknown gate type '" + type.get<std::string>() +
                      "'; expected 'matchgate' or 'cphase'");
}

}  // namespace

double normalize_angle(double theta) {
    constexpr double two_pi = 2 * std::numbers::pi;
    double r = std::remainder(theta, two_pi);
    if (r <= -std::numbers::pi) {
        r += two_pi;
    }
    return r;
}

double extent_factor(double theta) {
    return 1.0 + std::sin(std::abs(theta) / 2);
}

Circuit::Circuit(BasisState initial, std::vector<Gate> gates) : initial_(std::move(initial)), gates_(std::move(gates)) {
    size_t n = initial_.num_modes();
    if (n == 0) {
        throw input_error("num_qubits: circuit must have at least one mode");
    }
    for (size_t index = 0; index < gates_.size(); index++) {
        if (auto *mg = std::get_if<Matchgate>(&gates_[index])) {
            validate_matchgate(*mg, n, index);
        } else {
            auto &cp = std::get<ControlledPhase>(gates_[index]);
            validate_controlled_phase(cp, n, index);
            cp.theta = normalize_angle(cp.theta);
            angles_.push_back(cp.theta);
            controlled_phases_.push_back(cp);
        }
    }
}

Circuit concatenate(const Circuit &first, const Circuit &second) {
    if (!(first.initial() == second.initial())) {
        throw input_error("concatenated circuits must share the same initial state");
    }
    std::vector<Gate> gates(first.gates().begin(), first.gates().end());
    gates.insert(gates.end(), second.gates().begin(), second.gates().end());
    return Circuit(first.initial(), std::move(gates));
}

Circuit parse_circuit(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw input_error(std::string("circuit document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw input_error("circuit document: expected a top-level object");
    }
    size_t n = read_index(require(doc, "num_qubits", "circuit document"), "num_qubits");
    const json &initial = require(doc, "initial_state", "circuit document");
    if (!initial.is_string()) {
        throw input_error("initial_state: expected a binary string");
    }
    auto bits = initial.get<std::string>();
    if (bits.size() != n) {
        throw input_error("initial_state: length " + std::to_string(bits.size()) + " does not match num_qubits " +
                          std::to_string(n));
    }
    BasisState state;
    try {
        state = BasisState::from_string(bits);
    } catch (const Error &e) {
        throw input_error(std::string("initial_state: ") + e.what());
    }
    const json &gate_list = require(doc, "gates", "circuit document");
    if (!gate_list.is_array()) {
        throw input_error("gates: expected an array");
    }
    std::vector<Gate> gates;
    gates.reserve(gate_list.size());
    for (size_t k = 0; k < gate_list.size(); k++) {
        gates.push_back(read_gate(gate_list[k], k));
    }
    return Circuit(std::move(state), std::move(gates));
}

Circuit load_circuit(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot open circuit file '" + path.string() + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_circuit(buffer.str());
}

std::string serialize_circuit(const Circuit &circuit) {
    json gates = json::array();
    for (const Gate &gate : circuit.gates()) {
        if (auto *mg = std::get_if<Matchgate>(&gate)) {
            json u = json::array();
            for (int r = 0; r < 2; r++) {
                json row = json::array();
                for (int c = 0; c < 2; c++) {
                    row.push_back({mg->u(r, c).real(), mg->u(r, c).imag()});
                }
                u.push_back(row);
            }
            gates.push_back({{"type", "matchgate"}, {"modes", {mg->lower_mode, mg->upper_mode()}}, {"u", u}});
        } else {
            const auto &cp = std::get<ControlledPhase>(gate);
            gates.push_back({{"type", "cphase"}, {"modes", {cp.mode_a, cp.mode_b}}, {"theta", cp.theta}});
        }
    }
    json doc = {
        {"num_qubits", circuit.num_modes()},
        {"initial_state", circuit.initial().to_string()},
        {"gates", gates},
    };
    return doc.dump();
}

ExtentReport extent(const Circuit &circuit) {
    ExtentReport report{1.0, {}};
    report.per_gate_factors.reserve(circuit.num_controlled_phases());
    for (double theta : circuit.angles()) {
        double factor = extent_factor(theta);
        report.per_gate_factors.push_back(factor);
        report.extent *= factor;
    }
    return report;
}

}  // namespace extmatch
