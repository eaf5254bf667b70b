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

#include <string>
#include <vector>

#include "qrsim/linalg.hpp"

namespace qrsim {

/// A CPTP map given by Kraus operators {K_m}: rho -> sum_m K_m rho K_m^dag,
/// with completeness sum_m K_m^dag K_m = I.
struct KrausChannel {
    std::string label;
    std::vector<Mat> operators;

    /// Number of qubits the channel acts on (operators are 2^k x 2^k).
    int arity() const;
    /// Max-norm deviation of sum K^dag K from the identity.
    double completeness_defect() const;
};

/// Throws std::invalid_argument when the completeness defect exceeds `tol`.
void validate_cptp(const KrausChannel& channel, double tol = 1e-10);

KrausChannel identity_channel(int arity = 1);

/// T1 decay toward |0>. p is the excited-state decay probability over the
/// gate duration, p = 1 - exp(-t/T1).
KrausChannel amplitude_damping(double p);

/// Pure dephasing. p is the off-diagonal coherence loss over the gate
/// duration, p = 1 - exp(-t/T_phi); realized as a Z flip with probability
/// p/2 so that coherences shrink by exactly (1 - p).
KrausChannel dephasing(double p);

/// Single-qubit depolarizing: rho -> (1-p) rho + (p/3)(X rho X + Y rho Y + Z rho Z).
/// p = 3/4 sends every state to I/2.
KrausChannel depolarizing(double p);

/// Two-qubit depolarizing over the 15 non-identity Pauli pairs.
KrausChannel depolarizing2(double p);

}  // namespace qrsim
