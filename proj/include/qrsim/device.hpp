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

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrsim/simulator.hpp"

namespace qrsim {

class CalibrationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Per-qubit device data. Frequencies, anharmonicity and qubit-cavity
/// coupling are metadata only; dynamics are driven by T1, T2, the readout
/// error and the device-wide gate/depolarizing parameters.
struct QubitCalibration {
    double resonator_freq_ghz = 0.0;
    double qubit_freq_ghz = 0.0;
    double anharmonicity_mhz = 0.0;
    double coupling_khz = 0.0;
    double t1_us = 1.0;
    double t2_us = 1.0;
    double readout_error = 0.03;
};

/// Loaded device model: immutable after load_calibration, safe for shared
/// concurrent reads.
struct DeviceCalibration {
    std::vector<QubitCalibration> qubits;
    std::vector<std::pair<int, int>> coupling_map;  // directed (control, target)
    double gate_time_1q_ns = 60.0;
    double gate_time_2q_ns = 300.0;
    double depol_1q = 0.001;
    double depol_2q = 0.02;

    int num_qubits() const { return static_cast<int>(qubits.size()); }
    bool has_edge(int control, int target) const;
};

/// Parses and validates calibration JSON (schema documented in README).
/// Rejects T2 > 2*T1, non-positive times, readout errors outside [0, 0.5],
/// and malformed coupling maps with descriptive messages.
DeviceCalibration load_calibration(const std::string& json_text);
DeviceCalibration load_calibration_file(const std::string& path);

struct ChannelApplication {
    KrausChannel channel;
    std::vector<int> targets;
};

/// Noise attached to one gate application, on exactly the touched qubits:
/// per qubit, amplitude damping with p = 1 - exp(-t/T1) and pure dephasing
/// with p = 1 - exp(-t/T_phi), 1/T_phi = 1/T2 - 1/(2*T1); plus depolarizing
/// of strength depol_1q (or a two-qubit depolarizing of strength depol_2q
/// across both cx qubits). Idle qubits accrue nothing.
std::vector<ChannelApplication> channels_for_gate(const DeviceCalibration& cal, const GateOp& op);

/// Symmetric readout confusion: each measured bit flips independently with
/// its qubit's readout_error. Deterministic map on the distribution; output
/// sums to 1 within 1e-12.
std::vector<double> apply_readout_error(const std::vector<double>& distribution,
                                        const DeviceCalibration& cal,
                                        const std::vector<int>& measured_qubits);

enum class CouplingMode { Strict, Rewrite };

struct CouplingViolation {
    std::size_t op_index = 0;
    int control = 0;
    int target = 0;
    std::string message;
};

struct CouplingReport {
    Circuit circuit;  // rewritten in Rewrite mode, otherwise the input
    std::vector<CouplingViolation> violations;
};

/// Checks every cx against the directed coupling map. In Rewrite mode a cx
/// whose reversed edge exists becomes h,h,cx(reversed),h,h; a cx with no
/// edge in either direction is reported as a violation in both modes.
CouplingReport validate_coupling(const DeviceCalibration& cal, const Circuit& circuit,
                                 CouplingMode mode);

/// Density-matrix run of the circuit with the calibration's channels applied
/// after each gate.
DensityMatrix simulate_noisy(const Circuit& circuit, const DeviceCalibration& cal);

}  // namespace qrsim
