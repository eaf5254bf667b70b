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
#include <numbers>
#include <stdexcept>

namespace qrsim {

namespace {

const char* kBasisNames = "IXYZ";

Mat pauli_matrix(int i) {
    Mat m(2, 2);
    const cplx im(0.0, 1.0);
    switch (i) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -im, im, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

void append_basis_prefix(Circuit& circuit, int basis, int qubit) {
    if (basis == 1) {
        circuit.append(GateOp::h(qubit));
    } else if (basis == 2) {
        circuit.append(GateOp::u1(-std::numbers::pi / 2.0, qubit));
        circuit.append(GateOp::h(qubit));
    }
}

// Outcome frequencies of one two-qubit setting, indices 0..3 = keys 00..11.
std::array<double, 4> frequencies_from_counts(const Counts& counts, const std::string& label) {
    if (counts.shots == 0 || counts.histogram.empty()) {
        throw std::invalid_argument("setting " + label + " has no counts");
    }
    std::array<double, 4> freq{0.0, 0.0, 0.0, 0.0};
    std::uint64_t total = 0;
    for (const auto& [key, value] : counts.histogram) {
        if (key.size() != 2 || key.find_first_not_of("01") != std::string::npos) {
            throw std::invalid_argument("setting " + label + " has malformed outcome key '" +
                                        key + "'");
        }
        const std::size_t idx = std::size_t((key[0] - '0') * 2 + (key[1] - '0'));
        freq[idx] += static_cast<double>(value);
        total += value;
    }
    if (total != counts.shots) {
        throw std::invalid_argument("setting " + label + " histogram does not sum to shots");
    }
    for (double& f : freq) f /= static_cast<double>(counts.shots);
    return freq;
}

CorrelationTensor tensor_from_frequencies(
    const std::map<std::string, std::array<double, 4>>& freq_per_setting) {
    CorrelationTensor tensor;
    tensor.t[0][0] = 1.0;
    for (int i = 1; i < 4; ++i) {
        for (int j = 1; j < 4; ++j) {
            const std::string label{kBasisNames[i], kBasisNames[j]};
            const auto it = freq_per_setting.find(label);
            if (it == freq_per_setting.end()) {
                throw std::invalid_argument("incomplete tomography data: setting " + label +
                                            " is missing");
            }
            const std::array<double, 4>& f = it->second;
            double joint = 0.0, first = 0.0, second = 0.0;
            for (int outcome = 0; outcome < 4; ++outcome) {
                const int sa = (outcome & 2) ? -1 : 1;
                const int sb = (outcome & 1) ? -1 : 1;
                joint += f[std::size_t(outcome)] * sa * sb;
                first += f[std::size_t(outcome)] * sa;
                second += f[std::size_t(outcome)] * sb;
            }
            tensor.t[std::size_t(i)][std::size_t(j)] = joint;
            tensor.t[std::size_t(i)][0] += first / 3.0;
            tensor.t[0][std::size_t(j)] += second / 3.0;
        }
    }
    return tensor;
}

void check_distribution(const std::vector<double>& dist, const std::string& label) {
    if (dist.size() != 4) {
        throw std::invalid_argument("setting " + label + " distribution must have 4 entries");
    }
    double sum = 0.0;
    for (double p : dist) sum += p;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("setting " + label + " distribution does not sum to 1");
    }
}

}  // namespace

std::vector<TomographySetting> tomography_settings(int num_qubits) {
    if (num_qubits != 1 && num_qubits != 2) {
        throw std::invalid_argument("tomography supports 1 or 2 qubits, got " +
                                    std::to_string(num_qubits));
    }
    std::vector<TomographySetting> settings;
    if (num_qubits == 1) {
        for (int b = 1; b < 4; ++b) {
            TomographySetting s;
            s.basis = {b, 0};
            s.label = std::string{kBasisNames[b]};
            s.circuit.num_qubits = 1;
            append_basis_prefix(s.circuit, b, 0);
            s.circuit.measure(0, 0);
            settings.push_back(std::move(s));
        }
        return settings;
    }
    for (int a = 1; a < 4; ++a) {
        for (int b = 1; b < 4; ++b) {
            TomographySetting s;
            s.basis = {a, b};
            s.label = std::string{kBasisNames[a], kBasisNames[b]};
            s.circuit.num_qubits = 2;
            append_basis_prefix(s.circuit, a, 0);
            append_basis_prefix(s.circuit, b, 1);
            s.circuit.measure(0, 0);
            s.circuit.measure(1, 1);
            settings.push_back(std::move(s));
        }
    }
    return settings;
}

CorrelationTensor correlation_from_counts(const std::map<std::string, Counts>& counts_per_setting) {
    std::map<std::string, std::array<double, 4>> freqs;
    for (const auto& [label, counts] : counts_per_setting) {
        freqs[label] = frequencies_from_counts(counts, label);
    }
    return tensor_from_frequencies(freqs);
}

CorrelationTensor correlation_from_probabilities(
    const std::map<std::string, std::vector<double>>& dist_per_setting) {
    std::map<std::string, std::array<double, 4>> freqs;
    for (const auto& [label, dist] : dist_per_setting) {
        check_distribution(dist, label);
        freqs[label] = {dist[0], dist[1], dist[2], dist[3]};
    }
    return tensor_from_frequencies(freqs);
}

StokesVector stokes_first(const CorrelationTensor& tensor) {
    StokesVector s;
    for (int i = 0; i < 4; ++i) s.s[std::size_t(i)] = tensor.t[std::size_t(i)][0];
    return s;
}

StokesVector stokes_second(const CorrelationTensor& tensor) {
    StokesVector s;
    for (int j = 0; j < 4; ++j) s.s[std::size_t(j)] = tensor.t[0][std::size_t(j)];
    return s;
}

CorrelationTensor factorized_tensor(const StokesVector& first, const StokesVector& second) {
    CorrelationTensor tensor;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            tensor.t[std::size_t(i)][std::size_t(j)] =
                first.s[std::size_t(i)] * second.s[std::size_t(j)];
        }
    }
    return tensor;
}

DensityMatrix reconstruct_density(const CorrelationTensor& tensor) {
    Mat rho = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double w = tensor.t[std::size_t(i)][std::size_t(j)];
            if (w != 0.0) rho += w * kron(pauli_matrix(i), pauli_matrix(j));
        }
    }
    rho /= 4.0;
    return DensityMatrix(2, std::move(rho));
}

DensityMatrix reconstruct_density(const StokesVector& stokes) {
    Mat rho = Mat::Zero(2, 2);
    for (int i = 0; i < 4; ++i) rho += stokes.s[std::size_t(i)] * pauli_matrix(i);
    rho /= 2.0;
    return DensityMatrix(1, std::move(rho));
}

DensityMatrix project_physical(const DensityMatrix& rho_raw) {
    if (!is_hermitian(rho_raw.mat, 1e-8)) {
        throw std::invalid_argument("physical projection requires a Hermitian input");
    }
    Eigen::SelfAdjointEigenSolver<Mat> eig(rho_raw.mat);
    const Eigen::Index d = rho_raw.dim();

    // Eigenvalues descending; clip from the bottom, spreading each clipped
    // amount uniformly over the eigenvalues still in play.
    std::vector<double> lambda(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) lambda[std::size_t(j)] = eig.eigenvalues()(d - 1 - j);
    double carried = 0.0;
    for (Eigen::Index i = d - 1; i >= 0; --i) {
        const double share = carried / static_cast<double>(i + 1);
        if (lambda[std::size_t(i)] + share < 0.0) {
            carried += lambda[std::size_t(i)];
            lambda[std::size_t(i)] = 0.0;
        } else {
            for (Eigen::Index j = 0; j <= i; ++j) lambda[std::size_t(j)] += share;
            break;
        }
    }

    Mat out = Mat::Zero(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const Vec v = eig.eigenvectors().col(d - 1 - j);
        out += lambda[std::size_t(j)] * (v * v.adjoint());
    }
    out = (out + out.adjoint()) / 2.0;
    return DensityMatrix(rho_raw.num_qubits, std::move(out));
}

double fidelity(const DensityMatrix& rho_target, const DensityMatrix& rho_experimental,
                double psd_tol) {
    if (rho_target.dim() != rho_experimental.dim()) {
        throw std::invalid_argument("fidelity operands have different dimensions");
    }
    if (!is_hermitian(rho_target.mat, 1e-8) || !is_hermitian(rho_experimental.mat, 1e-8)) {
        throw std::invalid_argument("fidelity operands must be Hermitian");
    }
    if (std::abs(rho_target.trace_real() - 1.0) > 1e-8 ||
        std::abs(rho_experimental.trace_real() - 1.0) > 1e-8) {
        throw std::invalid_argument("fidelity operands must have unit trace");
    }

    Eigen::SelfAdjointEigenSolver<Mat> eig_t(rho_target.mat);
    if (eig_t.eigenvalues().minCoeff() < -psd_tol ||
        rho_experimental.min_eigenvalue() < -psd_tol) {
        throw std::invalid_argument("fidelity operand is not PSD within tolerance");
    }

    const Eigen::Index d = rho_target.dim();
    Mat sqrt_t = Mat::Zero(d, d);
    double purity_sum = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
        const double lam = std::max(0.0, eig_t.eigenvalues()(j));
        purity_sum += lam * lam;
        const Vec v = eig_t.eigenvectors().col(j);
        sqrt_t += std::sqrt(lam) * (v * v.adjoint());
    }

    Mat inner = sqrt_t * rho_experimental.mat * sqrt_t;
    inner = (inner + inner.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat> eig_m(inner, Eigen::EigenvaluesOnly);
    // Filter eigenvalue dust so a rank-deficient product does not leak
    // sqrt(epsilon)-sized contributions into the trace.
    const double cutoff =
        static_cast<double>(d) * 1e-15 * std::max(1.0, eig_m.eigenvalues().cwiseAbs().maxCoeff());
    double general = 0.0;
    for (Eigen::Index j = 0; j < d; ++j) {
        const double lam = eig_m.eigenvalues()(j);
        if (lam > cutoff) general += std::sqrt(lam);
    }

    const bool target_pure = purity_sum > 1.0 - 1e-10;
    double result = general;
    if (target_pure) {
        const Vec psi = eig_t.eigenvectors().col(d - 1);  // eigenvalue ~1
        const double overlap = (psi.adjoint() * rho_experimental.mat * psi)(0, 0).real();
        // Same dust filter as the general path, so exactly-orthogonal states
        // give 0 on both routes.
        const double shortcut = overlap > cutoff ? std::sqrt(overlap) : 0.0;
        if (std::abs(shortcut - general) > 1e-10) {
            throw std::runtime_error("pure-target fidelity shortcut disagrees with general path");
        }
        result = shortcut;
    }
    if (psd_tol <= 1e-8 && result > 1.0 + 1e-9) {
        throw std::runtime_error("fidelity exceeded 1 beyond numerical tolerance");
    }
    return result;
}

TomographyResult run_tomography(const Circuit& circuit, int qubit_a, int qubit_b,
                                const TomographyOptions& options) {
    if (qubit_a == qubit_b || qubit_a < 0 || qubit_b < 0 || qubit_a >= circuit.num_qubits ||
        qubit_b >= circuit.num_qubits) {
        throw std::invalid_argument("tomography qubits must be two distinct circuit qubits");
    }
    if (!circuit.measurements.empty()) {
        throw std::invalid_argument("tomography input circuit must not contain measurements");
    }
    if (options.noise != nullptr && circuit.num_qubits > options.noise->num_qubits()) {
        throw std::invalid_argument("circuit does not fit the noise calibration's device");
    }

    TomographyResult result;
    result.shots_per_setting = options.exact ? 0 : options.shots;

    std::map<std::string, std::vector<double>> distributions;
    const std::vector<int> pair{qubit_a, qubit_b};
    std::uint64_t setting_index = 0;
    for (const TomographySetting& setting : tomography_settings(2)) {
        Circuit prepared = circuit;
        for (const GateOp& op : setting.circuit.ops) {
            GateOp mapped = op;
            mapped.targets[0] = (op.targets[0] == 0) ? qubit_a : qubit_b;
            prepared.append(mapped);
        }

        std::vector<double> dist;
        if (options.noise != nullptr) {
            const DensityMatrix rho = simulate_noisy(prepared, *options.noise);
            dist = exact_probabilities(rho, pair);
            dist = apply_readout_error(dist, *options.noise, pair);
        } else {
            const StateVector psi = simulate(prepared);
            dist = exact_probabilities(psi, pair);
        }

        if (options.exact) {
            distributions[setting.label] = dist;
        } else {
            const Counts counts = sample_distribution(
                dist, 2, options.shots, derive_seed(options.seed, setting_index));
            result.counts[setting.label] = counts;
        }
        result.settings_used.push_back(setting.label);
        ++setting_index;
    }

    result.tensor = options.exact ? correlation_from_probabilities(distributions)
                                  : correlation_from_counts(result.counts);
    if (options.factorized) {
        result.tensor = factorized_tensor(stokes_first(result.tensor),
                                          stokes_second(result.tensor));
    }
    result.rho_raw = reconstruct_density(result.tensor);
    result.raw_min_eigenvalue = result.rho_raw.min_eigenvalue();
    result.rho_physical = project_physical(result.rho_raw);
    return result;
}

}  // namespace qrsim
