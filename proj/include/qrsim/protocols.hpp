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

#include "qrsim/tomography.hpp"

namespace qrsim {

/// Qubit roles for entanglement swapping: pairs (a1, b1) and (a2, b2) are
/// entangled first; the swap leaves (a1, a2) and (b1, b2) entangled.
struct SwapLayout {
    int a1 = 0;
    int b1 = 1;
    int a2 = 2;
    int b2 = 3;
};

/// Deliberate channel errors injected on one qubit of a Bell pair: a bit
/// flip (x), a phase flip (u1(pi)) and a phase change (u1(phi)), applied in
/// that order.
struct ErrorSpec {
    bool bit_flip = true;
    bool phase_flip = true;
    bool phase_change = true;
    double phi = 0.125;
    int error_qubit = 0;  // 0 or 1, which qubit of the pair carries the errors
};

enum class PurificationMode { Ancilla, Direct };
PurificationMode purification_mode_from_name(const std::string& name);
std::string purification_mode_name(PurificationMode mode);

/// h(q_a) then cx(q_a -> q_b): |0..0> becomes a (|00>+|11>)/sqrt(2) pair on
/// (q_a, q_b). `num_qubits` defaults to max(q_a, q_b) + 1.
Circuit bell_prep_circuit(int q_a, int q_b, int num_qubits = -1);

/// Prepares Bell pairs on (a1, b1) and (a2, b2), then swaps entanglement via
/// cx(a2 -> b1), cx(b1 -> a2), cx(a1 -> b2). The final state factorizes into
/// Bell pairs on (a1, a2) and (b1, b2).
Circuit swap_circuit(const SwapLayout& layout = {});

/// Appends the enabled error gates, in injection order, on spec.error_qubit.
Circuit inject_errors(Circuit circuit, const ErrorSpec& spec);

struct PurificationStage {
    std::string label;
    std::vector<GateOp> ops;
};

/// Correction stages for a pair on qubits (0, 1) with ancilla qubit 2.
///
/// Ancilla mode extracts the pair parity onto the ancilla (cx(0->2),
/// cx(1->2)), feeds it back with cx(2 -> partner) and resets the ancilla
/// with x(2); phase-flip and phase-change corrections are the matched
/// inverses u1(pi) and u1(-phi) on the error qubit. The parity stage always
/// runs (it is harmless on a clean pair); the phase stages run only for
/// errors the spec declares. Direct mode applies the exact inverse of each
/// injected gate in reverse order.
///
/// The corrections assume the error location is known, as it is when errors
/// are injected deliberately; this is a demonstration protocol, not a
/// general error-correcting code.
std::vector<PurificationStage> purification_stages(const ErrorSpec& spec, PurificationMode mode);

/// All stages concatenated into one 3-qubit circuit.
Circuit purification_circuit(const ErrorSpec& spec, PurificationMode mode);

struct StageState {
    std::string label;
    StateVector state;
};

/// One tomographed pair within a variant.
struct PairResult {
    std::string label;  // "A1A2" / "B1B2" for swapping, "F_BP" / "F_AP" for purification
    TomographyResult tomo;
    double fidelity_physical = 0.0;
    double fidelity_raw = 0.0;
    std::uint64_t seed = 0;
};

struct VariantResult {
    std::string name;  // "ideal", "sampled", "noisy"
    std::vector<PairResult> pairs;
};

struct ProtocolReport {
    std::string experiment;  // "swap" or "purify"
    std::vector<StageState> stage_states;  // noiseless statevector checkpoints
    std::vector<VariantResult> variants;
    std::map<std::string, double> fidelities;  // "<variant>.<label>" -> physical fidelity
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
};

/// Swap experiment: tomography of (a1, a2) and (b1, b2) against the Bell
/// target. Variants: ideal (exact probabilities), sampled (shot noise) and,
/// when a calibration is given, noisy (channels + readout + shot noise).
/// Sampling streams: variant v uses derive_seed(seed, v), pair p within it
/// derive_seed(variant_seed, p), settings derive further inside tomography.
ProtocolReport run_swap_experiment(const DeviceCalibration* cal, std::uint64_t shots,
                                   std::uint64_t seed);

/// Purification experiment: tomography of the pair before ("F_BP") and
/// after ("F_AP") correction, same variant structure as the swap run.
ProtocolReport run_purification_experiment(const DeviceCalibration* cal, const ErrorSpec& spec,
                                           PurificationMode mode, std::uint64_t shots,
                                           std::uint64_t seed);

/// (|00>+|11>)/sqrt(2) as a statevector / density matrix.
StateVector bell_phi_plus_state();
DensityMatrix bell_phi_plus_density();

}  // namespace qrsim
