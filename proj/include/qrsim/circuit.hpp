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

#include <vector>

#include "qrsim/gates.hpp"

namespace qrsim {

/// Terminal measurement of one qubit into one classical bit. Histogram keys
/// are ordered by classical bit index: bit c[0] is the leftmost character.
struct Measurement {
    int qubit = 0;
    int cbit = 0;
};

/// An ordered gate program over `num_qubits` qubits with terminal
/// measurements. Measurements must come after every gate touching the
/// measured qubit; classical bit indices must be unique.
struct Circuit {
    int num_qubits = 0;
    std::vector<GateOp> ops;
    std::vector<Measurement> measurements;

    /// Appends a gate, validating target range/distinctness and that no
    /// target was already measured.
    void append(const GateOp& op);
    /// Appends a terminal measurement, validating ranges and uniqueness.
    void measure(int qubit, int cbit);
};

/// Structural comparison; `theta_tol` absorbs text round-trip rounding.
bool structurally_equal(const Circuit& a, const Circuit& b, double theta_tol = 1e-11);

}  // namespace qrsim
