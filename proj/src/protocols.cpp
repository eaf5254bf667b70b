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

#include "qrsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrsim {

namespace {

void check_error_spec(const ErrorSpec& spec) {
    if (spec.error_qubit != 0 && spec.error_qubit != 1) {
        throw std::invalid_argument("error qubit must be 0 or 1 within the pair");
    }
    if (!std::isfinite(spec.phi)) {
        throw std::invalid_argument("phase-change angle must be finite");
    }
}

struct VariantPlan {
    std::string name;
    TomographyOptions options;
};

std::vector<VariantPlan> make_variants(const DeviceCalibration* cal, std::uint64_t shots,
                                       std::uint64_t seed) {
    std::vector<VariantPlan> variants;
    {
        VariantPlan ideal;
        ideal.name = "ideal";
        ideal.options.exact = true;
        variants.push_back(ideal);
    }
    {
        VariantPlan sampled;
        sampled.name = "sampled";
        sampled.options.shots = shots;
        sampled.options.seed = derive_seed(seed, 1);
        variants.push_back(sampled);
    }
    if (cal != nullptr) {
        VariantPlan noisy;
        noisy.name = "noisy";
        noisy.options.shots = shots;
        noisy.options.seed = derive_seed(seed, 2);
        noisy.options.noise = cal;
        variants.push_back(noisy);
    }
    return variants;
}

PairResult tomograph_pair(const Circuit& circuit, int qa, int qb, const std::string& label,
                          TomographyOptions options, std::uint64_t pair_index) {
    PairResult pair;
    pair.label = label;
    options.seed = derive_seed(options.seed, pair_index);
    pair.seed = options.seed;
    pair.tomo = run_tomography(circuit, qa, qb, options);
    const DensityMatrix target = bell_phi_plus_density();
    pair.fidelity_physical = fidelity(target, pair.tomo.rho_physical);
    pair.fidelity_raw = fidelity(target, pair.tomo.rho_raw, 1.0);
    return pair;
}

}  // namespace

PurificationMode purification_mode_from_name(const std::string& name) {
    if (name == "ancilla") return PurificationMode::Ancilla;
    if (name == "direct") return PurificationMode::Direct;
    throw std::invalid_argument("unknown purification mode '" + name +
                                "' (expected 'ancilla' or 'direct')");
}

std::string purification_mode_name(PurificationMode mode) {
    return mode == PurificationMode::Ancilla ? "ancilla" : "direct";
}

Circuit bell_prep_circuit(int q_a, int q_b, int num_qubits) {
    if (q_a == q_b) {
        throw std::invalid_argument("Bell pair qubits must be distinct");
    }
    Circuit circuit;
    circuit.num_qubits = num_qubits < 0 ? std::max(q_a, q_b) + 1 : num_qubits;
    circuit.append(GateOp::h(q_a));
    circuit.append(GateOp::cx(q_a, q_b));
    return circuit;
}

Circuit swap_circuit(const SwapLayout& layout) {
    const int qs[4] = {layout.a1, layout.b1, layout.a2, layout.b2};
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (qs[i] == qs[j]) {
                throw std::invalid_argument("swap layout qubits must be distinct");
            }
        }
    }
    Circuit circuit;
    circuit.num_qubits = std::max({layout.a1, layout.b1, layout.a2, layout.b2}) + 1;
    circuit.append(GateOp::h(layout.a1));
    circuit.append(GateOp::cx(layout.a1, layout.b1));
    circuit.append(GateOp::h(layout.a2));
    circuit.append(GateOp::cx(layout.a2, layout.b2));
    circuit.append(GateOp::cx(layout.a2, layout.b1));
    circuit.append(GateOp::cx(layout.b1, layout.a2));
    circuit.append(GateOp::cx(layout.a1, layout.b2));
    return circuit;
}

Circuit inject_errors(Circuit circuit, const ErrorSpec& spec) {
    check_error_spec(spec);
    if (spec.bit_flip) circuit.append(GateOp::x(spec.error_qubit));
    if (spec.phase_flip) circuit.append(GateOp::u1(std::numbers::pi, spec.error_qubit));
    if (spec.phase_change) circuit.append(GateOp::u1(spec.phi, spec.error_qubit));
    return circuit;
}

std::vector<PurificationStage> purification_stages(const ErrorSpec& spec, PurificationMode mode) {
    check_error_spec(spec);
    const int e = spec.error_qubit;
    std::vector<PurificationStage> stages;
    if (mode == PurificationMode::Ancilla) {
        const int partner = 1 - e;
        PurificationStage parity;
        parity.label = "bit_flip_correction";
        parity.ops = {GateOp::cx(0, 2), GateOp::cx(1, 2), GateOp::cx(2, partner), GateOp::x(2)};
        stages.push_back(std::move(parity));
        if (spec.phase_flip) {
            stages.push_back({"phase_flip_correction", {GateOp::u1(std::numbers::pi, e)}});
        }
        if (spec.phase_change) {
            stages.push_back({"phase_change_correction", {GateOp::u1(-spec.phi, e)}});
        }
        return stages;
    }
    if (spec.phase_change) {
        stages.push_back({"phase_change_correction", {GateOp::u1(-spec.phi, e)}});
    }
    if (spec.phase_flip) {
        stages.push_back({"phase_flip_correction", {GateOp::u1(-std::numbers::pi, e)}});
    }
    if (spec.bit_flip) {
        stages.push_back({"bit_flip_correction", {GateOp::x(e)}});
    }
    return stages;
}

Circuit purification_circuit(const ErrorSpec& spec, PurificationMode mode) {
    Circuit circuit;
    circuit.num_qubits = 3;
    for (const PurificationStage& stage : purification_stages(spec, mode)) {
        for (const GateOp& op : stage.ops) circuit.append(op);
    }
    return circuit;
}

ProtocolReport run_swap_experiment(const DeviceCalibration* cal, std::uint64_t shots,
                                   std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be positive");
    }
    const SwapLayout layout;
    const Circuit circuit = swap_circuit(layout);
    if (cal != nullptr && circuit.num_qubits > cal->num_qubits()) {
        throw std::invalid_argument("swap circuit does not fit the calibration's device");
    }

    ProtocolReport report;
    report.experiment = "swap";
    report.seed = seed;
    report.shots = shots;

    Circuit prep = bell_prep_circuit(layout.a1, layout.b1, circuit.num_qubits);
    prep.append(GateOp::h(layout.a2));
    prep.append(GateOp::cx(layout.a2, layout.b2));
    report.stage_states.push_back({"prepared", simulate(prep)});
    report.stage_states.push_back({"swapped", simulate(circuit)});

    for (const VariantPlan& plan : make_variants(cal, shots, seed)) {
        VariantResult variant;
        variant.name = plan.name;
        variant.pairs.push_back(
            tomograph_pair(circuit, layout.a1, layout.a2, "A1A2", plan.options, 0));
        variant.pairs.push_back(
            tomograph_pair(circuit, layout.b1, layout.b2, "B1B2", plan.options, 1));
        for (const PairResult& pair : variant.pairs) {
            report.fidelities[plan.name + "." + pair.label] = pair.fidelity_physical;
        }
        report.variants.push_back(std::move(variant));
    }
    return report;
}

ProtocolReport run_purification_experiment(const DeviceCalibration* cal, const ErrorSpec& spec,
                                           PurificationMode mode, std::uint64_t shots,
                                           std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be positive");
    }
    check_error_spec(spec);

    Circuit unpurified = inject_errors(bell_prep_circuit(0, 1, 3), spec);
    Circuit purified = unpurified;
    const std::vector<PurificationStage> stages = purification_stages(spec, mode);
    if (cal != nullptr && purified.num_qubits > cal->num_qubits()) {
        throw std::invalid_argument("purification circuit does not fit the calibration's device");
    }

    ProtocolReport report;
    report.experiment = "purify";
    report.seed = seed;
    report.shots = shots;

    report.stage_states.push_back({"prepared", simulate(bell_prep_circuit(0, 1, 3))});
    report.stage_states.push_back({"unpurified", simulate(unpurified)});
    for (const PurificationStage& stage : stages) {
        for (const GateOp& op : stage.ops) purified.append(op);
        report.stage_states.push_back({stage.label, simulate(purified)});
    }

    for (const VariantPlan& plan : make_variants(cal, shots, seed)) {
        VariantResult variant;
        variant.name = plan.name;
        variant.pairs.push_back(tomograph_pair(unpurified, 0, 1, "F_BP", plan.options, 0));
        variant.pairs.push_back(tomograph_pair(purified, 0, 1, "F_AP", plan.options, 1));
        for (const PairResult& pair : variant.pairs) {
            report.fidelities[plan.name + "." + pair.label] = pair.fidelity_physical;
        }
        report.variants.push_back(std::move(variant));
    }
    return report;
}

StateVector bell_phi_plus_state() {
    Vec amps = Vec::Zero(4);
    amps(0) = 1.0 / std::sqrt(2.0);
    amps(3) = 1.0 / std::sqrt(2.0);
    return StateVector(2, std::move(amps));
}

DensityMatrix bell_phi_plus_density() {
    return DensityMatrix::from_statevector(bell_phi_plus_state());
}

}  // namespace qrsim
