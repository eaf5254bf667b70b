// Copyright 2026 The qrsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrsim/device.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qrsim {

namespace {

using nlohmann::json;

double require_number(const json& obj, const std::string& key, const std::string& context) {
    if (!obj.contains(key)) {
        throw CalibrationError("calibration " + context + " is missing field '" + key + "'");
    }
    if (!obj.at(key).is_number()) {
        throw CalibrationError("calibration " + context + " field '" + key +
                               "' must be a number");
    }
    return obj.at(key).get<double>();
}

double optional_number(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) {
        throw CalibrationError("calibration field '" + key + "' must be a number");
    }
    return obj.at(key).get<double>();
}

void check_fraction(double v, const std::string& name, double hi) {
    if (!(v >= 0.0 && v <= hi)) {
        std::ostringstream msg;
        msg << name << " = " << v << " outside [0, " << hi << "]";
        throw CalibrationError(msg.str());
    }
}

}  // namespace

bool DeviceCalibration::has_edge(int control, int target) const {
    return std::find(coupling_map.begin(), coupling_map.end(), std::make_pair(control, target)) !=
           coupling_map.end();
}

DeviceCalibration load_calibration(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw CalibrationError(std::string("calibration is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("qubits") || !doc.at("qubits").is_array() ||
        doc.at("qubits").empty()) {
        throw CalibrationError("calibration must be an object with a non-empty 'qubits' array");
    }

    DeviceCalibration cal;
    cal.gate_time_1q_ns = optional_number(doc, "gate_time_1q_ns", cal.gate_time_1q_ns);
    cal.gate_time_2q_ns = optional_number(doc, "gate_time_2q_ns", cal.gate_time_2q_ns);
    cal.depol_1q = optional_number(doc, "depol_1q", cal.depol_1q);
    cal.depol_2q = optional_number(doc, "depol_2q", cal.depol_2q);
    if (cal.gate_time_1q_ns < 0.0 || cal.gate_time_2q_ns < 0.0) {
        throw CalibrationError("gate times must be nonnegative");
    }
    check_fraction(cal.depol_1q, "depol_1q", 1.0);
    check_fraction(cal.depol_2q, "depol_2q", 1.0);

    const auto& entries = doc.at("qubits");
    cal.qubits.resize(entries.size());
    std::vector<bool> seen(entries.size(), false);
    for (const auto& entry : entries) {
        if (!entry.is_object()) {
            throw CalibrationError("every 'qubits' entry must be an object");
        }
        const double id_raw = require_number(entry, "id", "qubit entry");
        const int id = static_cast<int>(id_raw);
        if (id < 0 || id >= static_cast<int>(entries.size()) || id != id_raw) {
            throw CalibrationError("qubit id " + std::to_string(id_raw) +
                                   " must be an integer in [0, " +
                                   std::to_string(entries.size() - 1) + "]");
        }
        if (seen[std::size_t(id)]) {
            throw CalibrationError("duplicate qubit id " + std::to_string(id));
        }
        seen[std::size_t(id)] = true;
        const std::string ctx = "qubit " + std::to_string(id);

        QubitCalibration q;
        q.resonator_freq_ghz = require_number(entry, "resonator_freq_ghz", ctx);
        q.qubit_freq_ghz = require_number(entry, "qubit_freq_ghz", ctx);
        q.anharmonicity_mhz = require_number(entry, "anharmonicity_mhz", ctx);
        q.coupling_khz = require_number(entry, "coupling_khz", ctx);
        q.t1_us = require_number(entry, "t1_us", ctx);
        q.t2_us = require_number(entry, "t2_us", ctx);
        q.readout_error = optional_number(entry, "readout_error", 0.03);

        if (q.t1_us <= 0.0 || q.t2_us <= 0.0) {
            throw CalibrationError(ctx + ": T1 and T2 must be positive");
        }
        if (q.t2_us > 2.0 * q.t1_us + 1e-9) {
            std::ostringstream msg;
            msg << ctx << ": T2 = " << q.t2_us << " us exceeds the physical bound 2*T1 = "
                << 2.0 * q.t1_us << " us";
            throw CalibrationError(msg.str());
        }
        check_fraction(q.readout_error, ctx + " readout_error", 0.5);
        cal.qubits[std::size_t(id)] = q;
    }

    if (doc.contains("coupling_map")) {
        if (!doc.at("coupling_map").is_array()) {
            throw CalibrationError("'coupling_map' must be an array of [control, target] pairs");
        }
        for (const auto& pair : doc.at("coupling_map")) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
                !pair[1].is_number_integer()) {
                throw CalibrationError("coupling map entries must be [control, target] integers");
            }
            const int c = pair[0].get<int>();
            const int t = pair[1].get<int>();
            if (c < 0 || c >= cal.num_qubits() || t < 0 || t >= cal.num_qubits()) {
                throw CalibrationError("coupling pair [" + std::to_string(c) + ", " +
                                       std::to_string(t) + "] references an unknown qubit");
            }
            if (c == t) {
                throw CalibrationError("coupling pair may not connect a qubit to itself");
            }
            cal.coupling_map.emplace_back(c, t);
        }
    }
    return cal;
}

DeviceCalibration load_calibration_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CalibrationError("cannot open calibration file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_calibration(buffer.str());
}

std::vector<ChannelApplication> channels_for_gate(const DeviceCalibration& cal, const GateOp& op) {
    for (int t : op.targets) {
        if (t < 0 || t >= cal.num_qubits()) {
            throw std::out_of_range("gate target q[" + std::to_string(t) +
                                    "] is not a device qubit");
        }
    }
    const bool two_qubit = gate_arity(op.kind) == 2;
    const double t_us = (two_qubit ? cal.gate_time_2q_ns : cal.gate_time_1q_ns) * 1e-3;

    std::vector<ChannelApplication> result;
    for (int q : op.targets) {
        const QubitCalibration& qc = cal.qubits[std::size_t(q)];
        const double p_amp = 1.0 - std::exp(-t_us / qc.t1_us);
        // 1/T_phi = 1/T2 - 1/(2 T1); nonnegative for physical calibrations.
        const double phi_rate = std::max(0.0, 1.0 / qc.t2_us - 0.5 / qc.t1_us);
        const double p_phi = 1.0 - std::exp(-t_us * phi_rate);
        result.push_back({amplitude_damping(p_amp), {q}});
        result.push_back({dephasing(p_phi), {q}});
    }
    if (two_qubit) {
        result.push_back({depolarizing2(cal.depol_2q), {op.targets[0], op.targets[1]}});
    } else {
        result.push_back({depolarizing(cal.depol_1q), {op.targets[0]}});
    }
    return result;
}

std::vector<double> apply_readout_error(const std::vector<double>& distribution,
                                        const DeviceCalibration& cal,
                                        const std::vector<int>& measured_qubits) {
    const int k = static_cast<int>(measured_qubits.size());
    if (distribution.size() != (std::size_t(1) << k)) {
        throw std::invalid_argument("distribution size does not match measured qubit count");
    }
    std::vector<double> out = distribution;
    for (int b = 0; b < k; ++b) {
        const int q = measured_qubits[std::size_t(b)];
        if (q < 0 || q >= cal.num_qubits()) {
            throw std::out_of_range("measured qubit q[" + std::to_string(q) +
                                    "] is not a device qubit");
        }
        const double eps = cal.qubits[std::size_t(q)].readout_error;
        if (eps == 0.0) continue;
        const std::size_t bit = std::size_t(1) << (k - 1 - b);
        std::vector<double> next(out.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            next[i] = (1.0 - eps) * out[i] + eps * out[i ^ bit];
        }
        out.swap(next);
    }
    return out;
}

CouplingReport validate_coupling(const DeviceCalibration& cal, const Circuit& circuit,
                                 CouplingMode mode) {
    if (circuit.num_qubits > cal.num_qubits()) {
        throw std::invalid_argument("circuit uses " + std::to_string(circuit.num_qubits) +
                                    " qubits but the device has " +
                                    std::to_string(cal.num_qubits()));
    }
    CouplingReport report;
    report.circuit.num_qubits = circuit.num_qubits;
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        const GateOp& op = circuit.ops[i];
        if (op.kind != GateKind::Cx) {
            report.circuit.append(op);
            continue;
        }
        const int c = op.targets[0];
        const int t = op.targets[1];
        if (cal.has_edge(c, t)) {
            report.circuit.append(op);
        } else if (mode == CouplingMode::Rewrite && cal.has_edge(t, c)) {
            report.circuit.append(GateOp::h(c));
            report.circuit.append(GateOp::h(t));
            report.circuit.append(GateOp::cx(t, c));
            report.circuit.append(GateOp::h(c));
            report.circuit.append(GateOp::h(t));
        } else {
            std::string why = cal.has_edge(t, c)
                                  ? "only the reversed edge exists in the coupling map"
                                  : "no coupling edge in either direction";
            report.violations.push_back(
                {i, c, t,
                 "cx q[" + std::to_string(c) + "], q[" + std::to_string(t) + "]: " + why});
            report.circuit.append(op);
        }
    }
    report.circuit.measurements = circuit.measurements;
    return report;
}

DensityMatrix simulate_noisy(const Circuit& circuit, const DeviceCalibration& cal) {
    if (circuit.num_qubits > cal.num_qubits()) {
        throw std::invalid_argument("circuit uses " + std::to_string(circuit.num_qubits) +
                                    " qubits but the device has " +
                                    std::to_string(cal.num_qubits()));
    }
    DensityMatrix state(circuit.num_qubits);
    for (const GateOp& op : circuit.ops) {
        apply_gate(state, op);
        for (const ChannelApplication& app : channels_for_gate(cal, op)) {
            apply_channel(state, app.channel, app.targets);
        }
    }
    return state;
}

}  // namespace qrsim
