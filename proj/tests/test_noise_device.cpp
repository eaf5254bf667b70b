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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qrsim/protocols.hpp"
#include "qrsim/tomography.hpp"
#include "test_support.hpp"

using namespace qrsim;

namespace {

const std::string kDataDir = QRSIM_DATA_DIR;

DeviceCalibration bundled() {
    return load_calibration_file(kDataDir + "/ibmqx4.json");
}

// Exact (no shot noise) Bell-pair fidelity through the full noisy pipeline,
// including readout confusion.
double noisy_bell_fidelity(const DeviceCalibration& cal) {
    TomographyOptions opts;
    opts.exact = true;
    opts.noise = &cal;
    const TomographyResult result = run_tomography(bell_prep_circuit(0, 1), 0, 1, opts);
    return fidelity(bell_phi_plus_density(), result.rho_physical);
}

}  // namespace

TEST(Calibration, BundledDeviceValues) {
    const DeviceCalibration cal = bundled();
    ASSERT_EQ(cal.num_qubits(), 5);
    EXPECT_DOUBLE_EQ(cal.qubits[0].t1_us, 35.2);
    EXPECT_DOUBLE_EQ(cal.qubits[0].t2_us, 38.1);
    EXPECT_DOUBLE_EQ(cal.qubits[4].t1_us, 49.5);
    EXPECT_DOUBLE_EQ(cal.qubits[4].t2_us, 19.2);
    EXPECT_DOUBLE_EQ(cal.qubits[2].qubit_freq_ghz, 5.3025);
    EXPECT_DOUBLE_EQ(cal.qubits[3].anharmonicity_mhz, -327.9);
    EXPECT_DOUBLE_EQ(cal.depol_1q, 0.001);
    EXPECT_DOUBLE_EQ(cal.depol_2q, 0.02);
    EXPECT_DOUBLE_EQ(cal.gate_time_1q_ns, 60.0);
    EXPECT_DOUBLE_EQ(cal.gate_time_2q_ns, 300.0);
    ASSERT_EQ(cal.coupling_map.size(), 6u);
    EXPECT_TRUE(cal.has_edge(1, 0));
    EXPECT_TRUE(cal.has_edge(2, 0));
    EXPECT_TRUE(cal.has_edge(2, 1));
    EXPECT_TRUE(cal.has_edge(2, 4));
    EXPECT_TRUE(cal.has_edge(3, 2));
    EXPECT_TRUE(cal.has_edge(3, 4));
    EXPECT_FALSE(cal.has_edge(0, 1));
    EXPECT_FALSE(cal.has_edge(0, 3));
}

TEST(Calibration, DefaultsFillAbsentFields) {
    const std::string minimal = R"({"qubits":[
        {"id":0,"resonator_freq_ghz":6.5,"qubit_freq_ghz":5.2,"anharmonicity_mhz":-330,
         "coupling_khz":410,"t1_us":30.0,"t2_us":40.0}]})";
    const DeviceCalibration cal = load_calibration(minimal);
    EXPECT_DOUBLE_EQ(cal.qubits[0].readout_error, 0.03);
    EXPECT_DOUBLE_EQ(cal.gate_time_1q_ns, 60.0);
    EXPECT_DOUBLE_EQ(cal.gate_time_2q_ns, 300.0);
    EXPECT_DOUBLE_EQ(cal.depol_1q, 0.001);
    EXPECT_DOUBLE_EQ(cal.depol_2q, 0.02);
    EXPECT_TRUE(cal.coupling_map.empty());
}

TEST(Calibration, RejectsUnphysicalAndMalformedInput) {
    const std::string t2_too_big = R"({"qubits":[
        {"id":0,"resonator_freq_ghz":6.5,"qubit_freq_ghz":5.2,"anharmonicity_mhz":-330,
         "coupling_khz":410,"t1_us":10.0,"t2_us":30.0}]})";
    EXPECT_THROW(load_calibration(t2_too_big), CalibrationError);

    const std::string negative_t1 = R"({"qubits":[
        {"id":0,"resonator_freq_ghz":6.5,"qubit_freq_ghz":5.2,"anharmonicity_mhz":-330,
         "coupling_khz":410,"t1_us":-5.0,"t2_us":3.0}]})";
    EXPECT_THROW(load_calibration(negative_t1), CalibrationError);

    EXPECT_THROW(load_calibration("not json at all"), CalibrationError);
    EXPECT_THROW(load_calibration(R"({"qubits":[]})"), CalibrationError);
    EXPECT_THROW(load_calibration(R"({"qubits":[{"id":0}]})"), CalibrationError);

    const std::string bad_readout = R"({"qubits":[
        {"id":0,"resonator_freq_ghz":6.5,"qubit_freq_ghz":5.2,"anharmonicity_mhz":-330,
         "coupling_khz":410,"t1_us":30.0,"t2_us":40.0,"readout_error":0.7}]})";
    EXPECT_THROW(load_calibration(bad_readout), CalibrationError);

    const std::string bad_pair = R"({"qubits":[
        {"id":0,"resonator_freq_ghz":6.5,"qubit_freq_ghz":5.2,"anharmonicity_mhz":-330,
         "coupling_khz":410,"t1_us":30.0,"t2_us":40.0}],"coupling_map":[[0,0]]})";
    EXPECT_THROW(load_calibration(bad_pair), CalibrationError);

    EXPECT_THROW(load_calibration_file(kDataDir + "/does_not_exist.json"), CalibrationError);
}

TEST(Calibration, T2ExactlyTwiceT1Allowed) {
    const std::string edge = R"({"qubits":[
        {"id":0,"resonator_freq_ghz":6.5,"qubit_freq_ghz":5.2,"anharmonicity_mhz":-330,
         "coupling_khz":410,"t1_us":20.0,"t2_us":40.0}]})";
    const DeviceCalibration cal = load_calibration(edge);
    // No pure dephasing left at the T2 = 2*T1 boundary.
    for (const ChannelApplication& app : channels_for_gate(cal, GateOp::h(0))) {
        if (app.channel.label == "dephasing") {
            EXPECT_LT(std::abs(app.channel.operators[1](0, 0)), 1e-12);
        }
    }
}

TEST(GateChannels, AmplitudeDampingMatchesClosedForm) {
    DeviceCalibration cal = bundled();
    cal.gate_time_1q_ns = 35.2 * 1000.0;  // one T1 of qubit 0
    bool checked = false;
    for (const ChannelApplication& app : channels_for_gate(cal, GateOp::x(0))) {
        if (app.channel.label == "amplitude_damping") {
            const double p = std::norm(app.channel.operators[1](0, 1));
            EXPECT_NEAR(p, 1.0 - std::exp(-1.0), 1e-12);
            EXPECT_NEAR(p, 0.6321205588285577, 1e-12);
            checked = true;
        }
    }
    EXPECT_TRUE(checked);
}

TEST(GateChannels, ZeroGateTimeGivesIdentityAction) {
    DeviceCalibration cal = bundled();
    cal.gate_time_1q_ns = 0.0;
    cal.gate_time_2q_ns = 0.0;
    cal.depol_1q = 0.0;
    cal.depol_2q = 0.0;
    std::mt19937_64 rng(2);
    DensityMatrix rho(2, oracle::random_mixed(2, rng));
    const Mat before = rho.mat;
    for (const ChannelApplication& app : channels_for_gate(cal, GateOp::cx(0, 1))) {
        apply_channel(rho, app.channel, app.targets);
    }
    EXPECT_LT(oracle::max_abs_diff(rho.mat, before), 1e-12);
}

TEST(GateChannels, NoiselessLimitLeavesBellExact) {
    DeviceCalibration cal = bundled();
    cal.depol_1q = 0.0;
    cal.depol_2q = 0.0;
    for (QubitCalibration& q : cal.qubits) {
        q.t1_us = 1e12;
        q.t2_us = 1e12;
        q.readout_error = 0.0;
    }
    EXPECT_NEAR(noisy_bell_fidelity(cal), 1.0, 1e-9);
}

TEST(GateChannels, TouchedQubitsOnly) {
    const DeviceCalibration cal = bundled();
    const auto single = channels_for_gate(cal, GateOp::h(3));
    ASSERT_EQ(single.size(), 3u);
    for (const auto& app : single) {
        ASSERT_EQ(app.targets.size(), 1u);
        EXPECT_EQ(app.targets[0], 3);
    }
    const auto two = channels_for_gate(cal, GateOp::cx(3, 2));
    ASSERT_EQ(two.size(), 5u);
    EXPECT_EQ(two.back().targets, (std::vector<int>{3, 2}));
    EXPECT_EQ(two.back().channel.label, "depolarizing2");
}

TEST(GateChannels, AllEmittedChannelsCptp) {
    const DeviceCalibration cal = bundled();
    std::vector<GateOp> ops;
    for (int q = 0; q < 5; ++q) {
        ops.push_back(GateOp::h(q));
        ops.push_back(GateOp::u1(0.125, q));
    }
    ops.push_back(GateOp::cx(3, 2));
    ops.push_back(GateOp::cx(2, 4));
    for (const GateOp& op : ops) {
        for (const ChannelApplication& app : channels_for_gate(cal, op)) {
            EXPECT_LT(app.channel.completeness_defect(), 1e-12) << app.channel.label;
        }
    }
}

TEST(Readout, ConfusionExamples) {
    DeviceCalibration cal = bundled();
    cal.qubits[0].readout_error = 0.0;
    const std::vector<double> sharp{1.0, 0.0};
    EXPECT_EQ(apply_readout_error(sharp, cal, {0}), sharp);

    cal.qubits[0].readout_error = 0.02;
    const std::vector<double> flipped = apply_readout_error(sharp, cal, {0});
    EXPECT_NEAR(flipped[0], 0.98, 1e-15);
    EXPECT_NEAR(flipped[1], 0.02, 1e-15);

    cal.qubits[1].readout_error = 0.11;
    const std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
    const std::vector<double> still = apply_readout_error(uniform, cal, {0, 1});
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(still[std::size_t(k)], 0.25, 1e-14);
        sum += still[std::size_t(k)];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(Coupling, StrictModeFollowsTheMap) {
    const DeviceCalibration cal = bundled();
    Circuit ok;
    ok.num_qubits = 4;
    ok.append(GateOp::cx(3, 2));
    EXPECT_TRUE(validate_coupling(cal, ok, CouplingMode::Strict).violations.empty());

    Circuit reversed;
    reversed.num_qubits = 2;
    reversed.append(GateOp::cx(0, 1));
    const CouplingReport strict = validate_coupling(cal, reversed, CouplingMode::Strict);
    ASSERT_EQ(strict.violations.size(), 1u);
    EXPECT_EQ(strict.violations[0].control, 0);
    EXPECT_EQ(strict.violations[0].target, 1);

    Circuit unmappable;
    unmappable.num_qubits = 4;
    unmappable.append(GateOp::cx(0, 3));
    EXPECT_EQ(validate_coupling(cal, unmappable, CouplingMode::Strict).violations.size(), 1u);
    EXPECT_EQ(validate_coupling(cal, unmappable, CouplingMode::Rewrite).violations.size(), 1u);
}

TEST(Coupling, RewriteUsesFourHadamards) {
    const DeviceCalibration cal = bundled();
    Circuit reversed;
    reversed.num_qubits = 2;
    reversed.append(GateOp::cx(0, 1));
    const CouplingReport report = validate_coupling(cal, reversed, CouplingMode::Rewrite);
    ASSERT_TRUE(report.violations.empty());
    ASSERT_EQ(report.circuit.ops.size(), 5u);
    EXPECT_EQ(report.circuit.ops[2].kind, GateKind::Cx);
    EXPECT_EQ(report.circuit.ops[2].targets, (std::vector<int>{1, 0}));

    // h x h . cx(1->0) . h x h equals cx(0->1) as a matrix.
    const Mat rewritten = oracle::circuit_unitary(report.circuit);
    const Mat original = oracle::embed_cx(0, 1, 2);
    EXPECT_LT(oracle::max_abs_diff(rewritten, original), 1e-12);
}

TEST(Coupling, RewrittenCircuitsAreUnitarilyEquivalent) {
    const DeviceCalibration cal = bundled();
    Circuit circuit;
    circuit.num_qubits = 5;
    circuit.append(GateOp::h(0));
    circuit.append(GateOp::cx(0, 1));   // needs reversal via (1,0)
    circuit.append(GateOp::u1(0.3, 2));
    circuit.append(GateOp::cx(4, 2));   // needs reversal via (2,4)
    circuit.append(GateOp::cx(3, 4));   // allowed as-is
    circuit.append(GateOp::s(4));
    const CouplingReport report = validate_coupling(cal, circuit, CouplingMode::Rewrite);
    ASSERT_TRUE(report.violations.empty());
    for (const GateOp& op : report.circuit.ops) {
        if (op.kind == GateKind::Cx) {
            EXPECT_TRUE(cal.has_edge(op.targets[0], op.targets[1]));
        }
    }
    EXPECT_LT(oracle::max_abs_diff(oracle::circuit_unitary(report.circuit),
                                   oracle::circuit_unitary(circuit)),
              1e-10);
}

TEST(Coupling, CircuitLargerThanDeviceRejected) {
    const std::string two_qubit_device = R"({"qubits":[
        {"id":0,"resonator_freq_ghz":6.5,"qubit_freq_ghz":5.2,"anharmonicity_mhz":-330,
         "coupling_khz":410,"t1_us":30.0,"t2_us":40.0},
        {"id":1,"resonator_freq_ghz":6.5,"qubit_freq_ghz":5.2,"anharmonicity_mhz":-330,
         "coupling_khz":410,"t1_us":30.0,"t2_us":40.0}],"coupling_map":[[1,0]]})";
    const DeviceCalibration cal = load_calibration(two_qubit_device);
    Circuit circuit;
    circuit.num_qubits = 3;
    EXPECT_THROW(validate_coupling(cal, circuit, CouplingMode::Strict), std::invalid_argument);
    EXPECT_THROW(simulate_noisy(circuit, cal), std::invalid_argument);
}

TEST(Noise, BellFidelityMonotoneInEachParameter) {
    const DeviceCalibration base = bundled();

    double last = 1.0;
    for (double t2q : {0.0, 100.0, 300.0, 600.0, 1200.0}) {
        DeviceCalibration cal = base;
        cal.gate_time_2q_ns = t2q;
        const double f = noisy_bell_fidelity(cal);
        EXPECT_LE(f, last + 1e-9) << "gate_time_2q_ns=" << t2q;
        last = f;
    }

    last = 1.0;
    for (double t1q : {0.0, 60.0, 240.0, 960.0}) {
        DeviceCalibration cal = base;
        cal.gate_time_1q_ns = t1q;
        const double f = noisy_bell_fidelity(cal);
        EXPECT_LE(f, last + 1e-9) << "gate_time_1q_ns=" << t1q;
        last = f;
    }

    last = 1.0;
    for (double p : {0.0, 0.005, 0.02, 0.08}) {
        DeviceCalibration cal = base;
        cal.depol_1q = p;
        const double f = noisy_bell_fidelity(cal);
        EXPECT_LE(f, last + 1e-9) << "depol_1q=" << p;
        last = f;
    }

    last = 1.0;
    for (double p : {0.0, 0.01, 0.02, 0.05, 0.1}) {
        DeviceCalibration cal = base;
        cal.depol_2q = p;
        const double f = noisy_bell_fidelity(cal);
        EXPECT_LE(f, last + 1e-9) << "depol_2q=" << p;
        last = f;
    }

    last = 1.0;
    for (double eps : {0.0, 0.01, 0.03, 0.06, 0.1}) {
        DeviceCalibration cal = base;
        for (QubitCalibration& q : cal.qubits) q.readout_error = eps;
        const double f = noisy_bell_fidelity(cal);
        EXPECT_LE(f, last + 1e-9) << "readout_error=" << eps;
        last = f;
    }
}

TEST(Noise, SimulatedStateStaysPhysical) {
    const DeviceCalibration cal = bundled();
    const DensityMatrix rho = simulate_noisy(swap_circuit(), cal);
    EXPECT_NEAR(rho.trace_real(), 1.0, 1e-10);
    EXPECT_TRUE(is_hermitian(rho.mat, 1e-10));
    EXPECT_GT(rho.min_eigenvalue(), -1e-8);
}
