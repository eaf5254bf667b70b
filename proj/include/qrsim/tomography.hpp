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

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qrsim/device.hpp"
#include "qrsim/simulator.hpp"

namespace qrsim {

/// Single-qubit expectation values (S_0, S_1, S_2, S_3) of (I, X, Y, Z):
/// S_0 = P(0) + P(1) = 1, S_k = P(0 in basis k) - P(1 in basis k).
struct StokesVector {
    std::array<double, 4> s{1.0, 0.0, 0.0, 0.0};
};

/// Two-qubit Pauli expectation table t[i1][i2] = <sigma_i1 x sigma_i2> with
/// indices 0..3 for (I, X, Y, Z); t[0][0] = 1.
struct CorrelationTensor {
    std::array<std::array<double, 4>, 4> t{};
};

/// One measurement-basis setting: basis labels per qubit (1 = X, 2 = Y,
/// 3 = Z) and the basis-change circuit. X prepends h; Y prepends u1(-pi/2)
/// then h; Z measures directly.
struct TomographySetting {
    std::array<int, 2> basis{3, 3};  // basis[1] unused for single-qubit settings
    std::string label;               // "X".."Z" or "XX".."ZZ"
    Circuit circuit;                 // prefix + measurements on 1 or 2 qubits
};

/// 3 settings for one qubit, 9 for two (XX, XY, ..., ZZ).
std::vector<TomographySetting> tomography_settings(int num_qubits);

/// Joint expectations from the 9 two-qubit settings. Marginal entries
/// t[i][0] and t[0][j] average the matching single-qubit marginal over the
/// partner's three settings. Missing or empty settings raise
/// std::invalid_argument; nothing is imputed.
CorrelationTensor correlation_from_counts(const std::map<std::string, Counts>& counts_per_setting);
CorrelationTensor correlation_from_probabilities(
    const std::map<std::string, std::vector<double>>& dist_per_setting);

StokesVector stokes_first(const CorrelationTensor& tensor);
StokesVector stokes_second(const CorrelationTensor& tensor);

/// Rank-one tensor built from single-qubit Stokes products,
/// t[i][j] = S_i * S'_j. This factorized form cannot represent entangled
/// correlations (a Bell state yields t[3][3] = 0); it exists for comparison
/// against the joint-expectation tensor, which is the default everywhere.
CorrelationTensor factorized_tensor(const StokesVector& first, const StokesVector& second);

/// Linear reconstruction rho = (1/4) sum t[i][j] sigma_i x sigma_j.
/// Hermitian by construction with trace = t[0][0]; may be non-PSD when the
/// tensor carries sampling noise (flagged via min eigenvalue, never hidden).
DensityMatrix reconstruct_density(const CorrelationTensor& tensor);

/// Single-qubit reconstruction rho = (1/2) sum S_i sigma_i.
DensityMatrix reconstruct_density(const StokesVector& stokes);

/// Nearest PSD state under the trace constraint: clip negative eigenvalues
/// to zero from the bottom of the spectrum, redistributing the clipped mass
/// uniformly over the remaining eigenvalues. Already-PSD input passes
/// through unchanged (within 1e-12).
DensityMatrix project_physical(const DensityMatrix& rho_raw);

/// Uhlmann fidelity Tr sqrt(sqrt(rho_t) rho_e sqrt(rho_t)) via Hermitian
/// eigendecompositions. For a pure target (purity > 1 - 1e-10) the shortcut
/// sqrt(<psi|rho_e|psi>) is returned and cross-checked against the general
/// path within 1e-10. `psd_tol` bounds how negative input eigenvalues may
/// be; widen it explicitly to evaluate raw (unprojected) reconstructions.
double fidelity(const DensityMatrix& rho_target, const DensityMatrix& rho_experimental,
                double psd_tol = 1e-8);

struct TomographyResult {
    CorrelationTensor tensor;
    DensityMatrix rho_raw{1};
    DensityMatrix rho_physical{1};
    std::uint64_t shots_per_setting = 0;  // 0 marks exact (infinite-shot) statistics
    std::vector<std::string> settings_used;
    double raw_min_eigenvalue = 0.0;
    std::map<std::string, Counts> counts;  // per setting; empty for exact statistics
};

struct TomographyOptions {
    std::uint64_t shots = 8192;
    std::uint64_t seed = 1;
    bool exact = false;                      // use exact probabilities, no sampling
    const DeviceCalibration* noise = nullptr;  // channels + readout when present
    bool factorized = false;
};

/// Runs two-qubit state tomography on (qubit_a, qubit_b) of the circuit's
/// output state. Per-setting sampling streams derive from options.seed via
/// derive_seed(seed, setting_index), so settings could be evaluated in any
/// order (or concurrently) with identical results; assembly is
/// order-independent.
TomographyResult run_tomography(const Circuit& circuit, int qubit_a, int qubit_b,
                                const TomographyOptions& options);

}  // namespace qrsim
