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

#include "qrsim/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qrsim {

namespace {

void check_target_range(int qubit, int num_qubits) {
    if (qubit < 0 || qubit >= num_qubits) {
        throw std::out_of_range("qubit q[" + std::to_string(qubit) + "] out of range for " +
                                std::to_string(num_qubits) + "-qubit circuit");
    }
}

}  // namespace

void Circuit::append(const GateOp& op) {
    if (static_cast<int>(op.targets.size()) != gate_arity(op.kind)) {
        throw std::invalid_argument("gate '" + gate_name(op.kind) + "' has wrong target count");
    }
    for (int t : op.targets) {
        check_target_range(t, num_qubits);
        for (const Measurement& m : measurements) {
            if (m.qubit == t) {
                throw std::invalid_argument("gate on q[" + std::to_string(t) +
                                            "] after it was measured");
            }
        }
    }
    if (op.kind == GateKind::Cx && op.targets[0] == op.targets[1]) {
        throw std::invalid_argument("cx control and target must be distinct qubits");
    }
    ops.push_back(op);
}

void Circuit::measure(int qubit, int cbit) {
    check_target_range(qubit, num_qubits);
    if (cbit < 0) {
        throw std::out_of_range("classical bit index must be nonnegative");
    }
    for (const Measurement& m : measurements) {
        if (m.cbit == cbit) {
            throw std::invalid_argument("classical bit c[" + std::to_string(cbit) +
                                        "] already assigned");
        }
        if (m.qubit == qubit) {
            throw std::invalid_argument("qubit q[" + std::to_string(qubit) +
                                        "] already measured");
        }
    }
    measurements.push_back({qubit, cbit});
}

bool structurally_equal(const Circuit& a, const Circuit& b, double theta_tol) {
    if (a.num_qubits != b.num_qubits || a.ops.size() != b.ops.size() ||
        a.measurements.size() != b.measurements.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.ops.size(); ++i) {
        const GateOp& x = a.ops[i];
        const GateOp& y = b.ops[i];
        if (x.kind != y.kind || x.targets != y.targets) return false;
        if (x.kind == GateKind::U1 && std::abs(x.theta - y.theta) > theta_tol) return false;
    }
    for (std::size_t i = 0; i < a.measurements.size(); ++i) {
        if (a.measurements[i].qubit != b.measurements[i].qubit ||
            a.measurements[i].cbit != b.measurements[i].cbit) {
            return false;
        }
    }
    return true;
}

}  // namespace qrsim
