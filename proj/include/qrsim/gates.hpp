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

#include <optional>
#include <string>
#include <vector>

#include "qrsim/linalg.hpp"

namespace qrsim {

/// Gate vocabulary: h, x, y, z, s, sdg, u1(theta), cx.
enum class GateKind { H, X, Y, Z, S, Sdg, U1, Cx };

/// One gate application. `targets` holds a single qubit for 1-qubit kinds and
/// [control, target] for Cx. `theta` is meaningful only for U1 (radians).
struct GateOp {
    GateKind kind = GateKind::H;
    double theta = 0.0;
    std::vector<int> targets;

    static GateOp single(GateKind kind, int qubit);
    static GateOp h(int qubit) { return single(GateKind::H, qubit); }
    static GateOp x(int qubit) { return single(GateKind::X, qubit); }
    static GateOp y(int qubit) { return single(GateKind::Y, qubit); }
    static GateOp z(int qubit) { return single(GateKind::Z, qubit); }
    static GateOp s(int qubit) { return single(GateKind::S, qubit); }
    static GateOp sdg(int qubit) { return single(GateKind::Sdg, qubit); }
    static GateOp u1(double theta, int qubit);
    static GateOp cx(int control, int target);
};

/// Number of qubits the gate acts on (1, or 2 for Cx).
int gate_arity(GateKind kind);

/// Unitary matrix of the gate: 2x2, or 4x4 for Cx with the control on the
/// more significant local index bit.
Mat gate_matrix(const GateOp& op);

/// Lowercase gate mnemonic as written in the circuit DSL.
std::string gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(const std::string& name);

}  // namespace qrsim
