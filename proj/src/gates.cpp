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

#include "qrsim/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qrsim {

GateOp GateOp::single(GateKind kind, int qubit) {
    if (gate_arity(kind) != 1) {
        throw std::invalid_argument("GateOp::single used with a two-qubit gate kind");
    }
    GateOp op;
    op.kind = kind;
    op.targets = {qubit};
    return op;
}

GateOp GateOp::u1(double theta, int qubit) {
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("u1 angle must be finite");
    }
    GateOp op;
    op.kind = GateKind::U1;
    op.theta = theta;
    op.targets = {qubit};
    return op;
}

GateOp GateOp::cx(int control, int target) {
    if (control == target) {
        throw std::invalid_argument("cx control and target must be distinct qubits");
    }
    GateOp op;
    op.kind = GateKind::Cx;
    op.targets = {control, target};
    return op;
}

int gate_arity(GateKind kind) {
    return kind == GateKind::Cx ? 2 : 1;
}

Mat gate_matrix(const GateOp& op) {
    const cplx i(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Mat m;
    switch (op.kind) {
        case GateKind::H:
            m = Mat(2, 2);
            m << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
            return m;
        case GateKind::X:
            m = Mat(2, 2);
            m << 0, 1, 1, 0;
            return m;
        case GateKind::Y:
            m = Mat(2, 2);
            m << 0, -i, i, 0;
            return m;
        case GateKind::Z:
            m = Mat(2, 2);
            m << 1, 0, 0, -1;
            return m;
        case GateKind::S:
            m = Mat(2, 2);
            m << 1, 0, 0, i;
            return m;
        case GateKind::Sdg:
            m = Mat(2, 2);
            m << 1, 0, 0, -i;
            return m;
        case GateKind::U1:
            m = Mat(2, 2);
            m << 1, 0, 0, std::polar(1.0, op.theta);
            return m;
        case GateKind::Cx:
            m = Mat::Zero(4, 4);
            m(0, 0) = 1;
            m(1, 1) = 1;
            m(2, 3) = 1;
            m(3, 2) = 1;
            return m;
    }
    throw std::logic_error("unreachable gate kind");
}

std::string gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::Y: return "y";
        case GateKind::Z: return "z";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::U1: return "u1";
        case GateKind::Cx: return "cx";
    }
    throw std::logic_error("unreachable gate kind");
}

std::optional<GateKind> gate_from_name(const std::string& name) {
    if (name == "h") return GateKind::H;
    if (name == "x") return GateKind::X;
    if (name == "y") return GateKind::Y;
    if (name == "z") return GateKind::Z;
    if (name == "s") return GateKind::S;
    if (name == "sdg") return GateKind::Sdg;
    if (name == "u1") return GateKind::U1;
    if (name == "cx") return GateKind::Cx;
    return std::nullopt;
}

}  // namespace qrsim
