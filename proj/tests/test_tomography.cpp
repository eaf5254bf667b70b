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

#include "qrsim/tomography.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qrsim/protocols.hpp"
#include "test_support.hpp"

using namespace qrsim;

namespace {

// Per-setting exact distributions of a two-qubit state, computed with dense
// matrix algebra only.
std::map<std::string, std::vector<double>> exact_distributions(const Mat& rho) {
    const char* names = "IXYZ";
    std::map<std::string, std::vector<double>> out;
    for (int a = 1; a < 4; ++a) {
        for (int b = 1; b < 4; ++b) {
            out[std::string{names[a], names[b]}] = oracle::setting_distribution(rho, a, b);
        }
    }
    return out;
}

Mat bell_density() {
    Vec v = Vec::Zero(4);
    v(0) = 1.0 / std::sqrt(2.0);
    v(3) = 1.0 / std::sqrt(2.0);
    return v * v.adjoint();
}

}  // namespace

TEST(Settings, SingleQubitBases) {
    const auto settings = tomography_settings(1);
    ASSERT_EQ(settings.size(), 3u);
    EXPECT_EQ(settings[0].label, "X");
    EXPECT_EQ(settings[1].label, "Y");
    EXPECT_EQ(settings[2].label, "Z");
    ASSERT_EQ(settings[0].circuit.ops.size(), 1u);
    EXPECT_EQ(settings[0].circuit.ops[0].kind, GateKind::H);
    ASSERT_EQ(settings[1].circuit.ops.size(), 2u);
    EXPECT_EQ(settings[1].circuit.ops[0].kind, GateKind::U1);
    EXPECT_NEAR(settings[1].circuit.ops[0].theta, -M_PI / 2, 1e-15);
    EXPECT_EQ(settings[1].circuit.ops[1].kind, GateKind::H);
    EXPECT_TRUE(settings[2].circuit.ops.empty());
    for (const auto& s : settings) EXPECT_EQ(s.circuit.measurements.size(), 1u);
}

TEST(Settings, TwoQubitGridAndUnsupportedSizes) {
    const auto settings = tomography_settings(2);
    ASSERT_EQ(settings.size(), 9u);
    EXPECT_EQ(settings.front().label, "XX");
    EXPECT_EQ(settings.back().label, "ZZ");
    for (const auto& s : settings) EXPECT_EQ(s.circuit.measurements.size(), 2u);
    EXPECT_THROW(tomography_settings(0), std::invalid_argument);
    EXPECT_THROW(tomography_settings(3), std::invalid_argument);
}

TEST(Settings, XPrefixMapsPlusToZero) {
    StateVector psi(1);
    apply_gate(psi, GateOp::h(0));  // |+>
    const auto settings = tomography_settings(1);
    for (const GateOp& op : settings[0].circuit.ops) apply_gate(psi, op);
    EXPECT_NEAR(exact_probabilities(psi, {0})[0], 1.0, 1e-12);
}

TEST(Settings, YPrefixMapsPlusIToZero) {
    StateVector psi(1);
    apply_gate(psi, GateOp::h(0));
    apply_gate(psi, GateOp::s(0));  // (|0> + i|1>)/sqrt(2)
    const auto settings = tomography_settings(1);
    for (const GateOp& op : settings[1].circuit.ops) apply_gate(psi, op);
    EXPECT_NEAR(exact_probabilities(psi, {0})[0], 1.0, 1e-12);
}

TEST(Correlation, BellPairJointExpectations) {
    const Mat rho = bell_density();
    const CorrelationTensor tensor = correlation_from_probabilities(exact_distributions(rho));

    // Independent oracle: t[i][j] = Tr(rho sigma_i x sigma_j).
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double expected =
                (rho * oracle::okron(oracle::pauli(i), oracle::pauli(j))).trace().real();
            EXPECT_NEAR(tensor.t[std::size_t(i)][std::size_t(j)], expected, 1e-12)
                << "i=" << i << " j=" << j;
        }
    }
    EXPECT_NEAR(tensor.t[1][1], 1.0, 1e-12);
    EXPECT_NEAR(tensor.t[2][2], -1.0, 1e-12);
    EXPECT_NEAR(tensor.t[3][3], 1.0, 1e-12);
    for (int k = 1; k < 4; ++k) {
        EXPECT_NEAR(tensor.t[std::size_t(k)][0], 0.0, 1e-12);
        EXPECT_NEAR(tensor.t[0][std::size_t(k)], 0.0, 1e-12);
    }
}

TEST(Correlation, ProductStateZeroZero) {
    Mat rho = Mat::Zero(4, 4);
    rho(0, 0) = 1.0;  // |00><00|
    const CorrelationTensor tensor = correlation_from_probabilities(exact_distributions(rho));
    EXPECT_NEAR(tensor.t[3][3], 1.0, 1e-12);
    EXPECT_NEAR(tensor.t[3][0], 1.0, 1e-12);
    EXPECT_NEAR(tensor.t[0][3], 1.0, 1e-12);
    EXPECT_NEAR(tensor.t[1][1], 0.0, 1e-12);
}

TEST(Correlation, MaximallyMixedIsPureIdentity) {
    const Mat rho = 0.25 * Mat::Identity(4, 4);
    const CorrelationTensor tensor = correlation_from_probabilities(exact_distributions(rho));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double expected = (i == 0 && j == 0) ? 1.0 : 0.0;
            EXPECT_NEAR(tensor.t[std::size_t(i)][std::size_t(j)], expected, 1e-12);
        }
    }
}

TEST(Correlation, MissingSettingRejected) {
    auto dists = exact_distributions(bell_density());
    dists.erase("YZ");
    EXPECT_THROW(correlation_from_probabilities(dists), std::invalid_argument);

    std::map<std::string, Counts> counts;
    Counts c;
    c.shots = 4;
    c.histogram["00"] = 4;
    counts["XX"] = c;
    EXPECT_THROW(correlation_from_counts(counts), std::invalid_argument);
}

TEST(Reconstruction, BellTensorGivesBellState) {
    const CorrelationTensor tensor =
        correlation_from_probabilities(exact_distributions(bell_density()));
    const DensityMatrix rho = reconstruct_density(tensor);

    // Matrix-assembly oracle: (1/4) sum t[i][j] sigma_i x sigma_j by hand.
    Mat byhand = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            byhand += tensor.t[std::size_t(i)][std::size_t(j)] *
                      oracle::okron(oracle::pauli(i), oracle::pauli(j));
        }
    }
    byhand /= 4.0;
    EXPECT_LT(oracle::max_abs_diff(rho.mat, byhand), 1e-14);
    EXPECT_LT(oracle::max_abs_diff(rho.mat, bell_density()), 1e-12);
}

TEST(Reconstruction, IdentityTensorGivesMaximallyMixed) {
    CorrelationTensor tensor;
    tensor.t[0][0] = 1.0;
    const DensityMatrix rho = reconstruct_density(tensor);
    EXPECT_LT(oracle::max_abs_diff(rho.mat, 0.25 * Mat::Identity(4, 4)), 1e-14);
}

TEST(Reconstruction, RoundTripOnRandomMixedStates) {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 120; ++round) {
        const Mat rho = oracle::random_mixed(2, rng);
        const CorrelationTensor tensor = correlation_from_probabilities(exact_distributions(rho));
        const DensityMatrix rebuilt = reconstruct_density(tensor);
        EXPECT_LT(oracle::max_abs_diff(rebuilt.mat, rho), 1e-10);
        // Exact statistics keep the reconstruction physical already.
        const DensityMatrix projected = project_physical(rebuilt);
        EXPECT_LT(oracle::max_abs_diff(projected.mat, rho), 1e-10);
    }
}

TEST(Reconstruction, SingleQubitStokes) {
    StokesVector plus;
    plus.s = {1.0, 1.0, 0.0, 0.0};
    const DensityMatrix rho = reconstruct_density(plus);
    Mat expected(2, 2);
    expected << 0.5, 0.5, 0.5, 0.5;
    EXPECT_LT(oracle::max_abs_diff(rho.mat, expected), 1e-14);
}

TEST(Factorized, CannotSeeEntangledCorrelations) {
    const CorrelationTensor joint =
        correlation_from_probabilities(exact_distributions(bell_density()));
    const CorrelationTensor fact = factorized_tensor(stokes_first(joint), stokes_second(joint));
    EXPECT_NEAR(joint.t[3][3], 1.0, 1e-12);
    EXPECT_NEAR(fact.t[3][3], 0.0, 1e-12);
    EXPECT_NEAR(fact.t[0][0], 1.0, 1e-12);
    // Reconstruction of the factorized tensor is the maximally mixed state.
    const DensityMatrix rho = reconstruct_density(fact);
    EXPECT_LT(oracle::max_abs_diff(rho.mat, 0.25 * Mat::Identity(4, 4)), 1e-10);
}

TEST(Projection, AlreadyPsdPassesThrough) {
    std::mt19937_64 rng(55);
    const DensityMatrix rho(2, oracle::random_mixed(2, rng));
    const DensityMatrix projected = project_physical(rho);
    EXPECT_LT(oracle::max_abs_diff(projected.mat, rho.mat), 1e-12);
}

TEST(Projection, ClipsTwoByTwoByHand) {
    Mat raw = Mat::Zero(2, 2);
    raw(0, 0) = 1.1;
    raw(1, 1) = -0.1;
    const DensityMatrix projected = project_physical(DensityMatrix(1, raw));
    EXPECT_NEAR(projected.mat(0, 0).real(), 1.0, 1e-12);
    EXPECT_NEAR(projected.mat(1, 1).real(), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(projected.mat(0, 1)), 0.0, 1e-12);
}

TEST(Projection, OutputIsPhysical) {
    std::mt19937_64 rng(66);
    for (int round = 0; round < 25; ++round) {
        // Hermitian trace-1 but indefinite input.
        Mat raw = oracle::random_mixed(2, rng);
        raw -= 0.4 * Mat::Identity(4, 4);
        raw /= raw.trace().real();
        raw = (raw + raw.adjoint()) / 2.0;
        const DensityMatrix projected = project_physical(DensityMatrix(2, raw));
        EXPECT_GT(projected.min_eigenvalue(), -1e-12);
        EXPECT_NEAR(projected.trace_real(), 1.0, 1e-10);
        EXPECT_TRUE(is_hermitian(projected.mat, 1e-10));
    }
    EXPECT_THROW(project_physical(DensityMatrix(1, (Mat(2, 2) << 0, 1, 0, 0).finished())),
                 std::invalid_argument);
}

TEST(Fidelity, KnownValues) {
    const DensityMatrix bell(2, bell_density());
    EXPECT_NEAR(fidelity(bell, bell), 1.0, 1e-12);

    // Orthogonal support: (|01> - e^{i phi}|10>)/sqrt(2).
    Vec err = Vec::Zero(4);
    err(1) = 1.0 / std::sqrt(2.0);
    err(2) = -std::polar(1.0 / std::sqrt(2.0), 0.125);
    const DensityMatrix orthogonal(2, err * err.adjoint());
    EXPECT_NEAR(fidelity(bell, orthogonal), 0.0, 1e-9);

    const DensityMatrix mixed(2, 0.25 * Mat::Identity(4, 4));
    EXPECT_NEAR(fidelity(bell, mixed), 0.5, 1e-12);
}

TEST(Fidelity, SymmetricAndBounded) {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 40; ++round) {
        const DensityMatrix a(2, oracle::random_mixed(2, rng));
        const DensityMatrix b(2, oracle::random_mixed(2, rng));
        const double fab = fidelity(a, b);
        const double fba = fidelity(b, a);
        EXPECT_NEAR(fab, fba, 1e-10);
        EXPECT_GE(fab, 0.0);
        EXPECT_LE(fab, 1.0 + 1e-9);
        EXPECT_NEAR(fidelity(a, a), 1.0, 1e-9);
    }
}

TEST(Fidelity, PureShortcutAgreesWithGeneralPath) {
    std::mt19937_64 rng(88);
    for (int round = 0; round < 100; ++round) {
        const Vec psi = oracle::random_pure(2, rng);
        const DensityMatrix target(2, psi * psi.adjoint());
        const DensityMatrix state(2, oracle::random_mixed(2, rng));
        // fidelity() cross-checks the two routes internally and throws on
        // divergence beyond 1e-10; also compare against a by-hand overlap.
        const double f = fidelity(target, state);
        const double overlap = (psi.adjoint() * state.mat * psi)(0, 0).real();
        EXPECT_NEAR(f, std::sqrt(std::max(0.0, overlap)), 1e-10);
    }
}

TEST(Fidelity, RejectsBadInput) {
    const DensityMatrix small(1);
    const DensityMatrix big(2);
    EXPECT_THROW(fidelity(small, big), std::invalid_argument);

    Mat indefinite = Mat::Zero(2, 2);
    indefinite(0, 0) = 1.5;
    indefinite(1, 1) = -0.5;
    EXPECT_THROW(fidelity(DensityMatrix(1), DensityMatrix(1, indefinite)),
                 std::invalid_argument);
    // The same input is accepted when the caller widens the tolerance.
    EXPECT_NO_THROW(fidelity(DensityMatrix(1), DensityMatrix(1, indefinite), 1.0));
}

TEST(RunTomography, ExactBellIsExact) {
    const TomographyOptions opts{.shots = 0, .seed = 1, .exact = true, .noise = nullptr,
                                 .factorized = false};
    const TomographyResult result = run_tomography(bell_prep_circuit(0, 1), 0, 1, opts);
    EXPECT_EQ(result.shots_per_setting, 0u);
    EXPECT_EQ(result.settings_used.size(), 9u);
    EXPECT_TRUE(result.counts.empty());
    EXPECT_LT(oracle::max_abs_diff(result.rho_raw.mat, bell_density()), 1e-12);
    // Infinite-shot limit: raw and physical coincide.
    EXPECT_LT(oracle::max_abs_diff(result.rho_raw.mat, result.rho_physical.mat), 1e-10);
}

TEST(RunTomography, SampledBellCloseAtEightK) {
    TomographyOptions opts;
    opts.shots = 8192;
    opts.seed = 21;
    const TomographyResult result = run_tomography(bell_prep_circuit(0, 1), 0, 1, opts);
    EXPECT_EQ(result.counts.size(), 9u);
    const double f_raw = fidelity(DensityMatrix(2, bell_density()), result.rho_raw, 1.0);
    const double f_phys = fidelity(DensityMatrix(2, bell_density()), result.rho_physical);
    EXPECT_GE(f_raw, 0.98);
    EXPECT_GE(f_phys, 0.98);
    EXPECT_GT(result.rho_physical.min_eigenvalue(), -1e-12);
}

TEST(RunTomography, EstimateErrorShrinksWithShots) {
    const Circuit bell = bell_prep_circuit(0, 1);
    const DensityMatrix target(2, bell_density());
    double err_small = 0.0, err_large = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        TomographyOptions opts;
        opts.seed = 1000 + std::uint64_t(rep);
        opts.shots = 1u << 11;
        err_small += std::abs(
            fidelity(target, run_tomography(bell, 0, 1, opts).rho_physical) - 1.0);
        opts.shots = 1u << 17;
        err_large += std::abs(
            fidelity(target, run_tomography(bell, 0, 1, opts).rho_physical) - 1.0);
    }
    err_small /= 20.0;
    err_large /= 20.0;
    EXPECT_LE(err_large, 0.01);
    EXPECT_LT(err_large, err_small);
}

TEST(RunTomography, ValidatesArguments) {
    const Circuit bell = bell_prep_circuit(0, 1);
    TomographyOptions opts;
    EXPECT_THROW(run_tomography(bell, 0, 0, opts), std::invalid_argument);
    EXPECT_THROW(run_tomography(bell, 0, 2, opts), std::invalid_argument);
    Circuit measured = bell;
    measured.measure(0, 0);
    EXPECT_THROW(run_tomography(measured, 0, 1, opts), std::invalid_argument);
}
