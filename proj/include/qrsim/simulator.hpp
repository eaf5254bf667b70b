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

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qrsim/circuit.hpp"
#include "qrsim/kraus.hpp"
#include "qrsim/state.hpp"

namespace qrsim {

/// Shot histogram. Keys are bitstrings ordered by classical bit index
/// (c[0] leftmost); values sum to `shots`.
struct Counts {
    std::uint64_t shots = 0;
    std::map<std::string, std::uint64_t> histogram;
};

// States are plain values: separate instances can be simulated from
// different threads freely, a single instance is mutated sequentially.

/// In-place unitary update |psi> -> U|psi>. Throws std::out_of_range for bad
/// targets and std::invalid_argument for duplicate cx operands.
void apply_gate(StateVector& state, const GateOp& op);
/// In-place rho -> U rho U^dag.
void apply_gate(DensityMatrix& state, const GateOp& op);

/// rho -> sum_m K_m rho K_m^dag. Rejects channels whose completeness defect
/// exceeds 1e-10.
void apply_channel(DensityMatrix& state, const KrausChannel& channel,
                   const std::vector<int>& targets);

/// Born-rule marginal over the listed qubits, in the given order (first qubit
/// is the most significant bit of the outcome index). Sums to 1 within 1e-12.
std::vector<double> exact_probabilities(const StateVector& state, const std::vector<int>& qubits);
std::vector<double> exact_probabilities(const DensityMatrix& state, const std::vector<int>& qubits);

/// Draws `shots` samples from the exact Born distribution of the measured
/// qubits (unmeasured qubits marginalized). Deterministic for a fixed seed;
/// derived streams follow derive_seed().
Counts sample_measurements(const StateVector& state, const std::vector<Measurement>& measurements,
                           std::uint64_t shots, std::uint64_t seed);
Counts sample_measurements(const DensityMatrix& state, const std::vector<Measurement>& measurements,
                           std::uint64_t shots, std::uint64_t seed);

/// Draws shots from an explicit distribution over bitstring outcomes; keys are
/// built for `num_bits` classical bits.
Counts sample_distribution(const std::vector<double>& probabilities, int num_bits,
                           std::uint64_t shots, std::uint64_t seed);

/// Measured qubits ordered by classical bit index (the histogram key order).
/// Rejects duplicate classical bits and duplicate qubits.
std::vector<int> measured_qubits_by_cbit(const std::vector<Measurement>& measurements);

/// Reduced density matrix over `keep` (order preserved: keep[j] becomes
/// qubit j of the result).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep);

/// True iff max_j |a_j - e^{i gamma} b_j| < tol with gamma chosen to align
/// the largest-magnitude amplitude pair.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol);

/// Runs all gates of the circuit on |0...0> (measurements ignored).
StateVector simulate(const Circuit& circuit);
DensityMatrix simulate_density(const Circuit& circuit);

/// -sum lambda ln lambda over the spectrum (natural log).
double von_neumann_entropy(const DensityMatrix& rho);

/// Bitstring key for an outcome index over `num_bits` bits, most significant
/// bit first.
std::string outcome_key(std::uint64_t outcome, int num_bits);

}  // namespace qrsim
