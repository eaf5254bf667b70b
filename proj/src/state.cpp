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

#include "qrsim/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qrsim {

namespace {

void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("qubit count must be between 1 and " +
                                    std::to_string(kMaxQubits) + ", got " + std::to_string(n));
    }
}

}  // namespace

StateVector::StateVector(int n) : num_qubits(n) {
    check_qubit_count(n);
    amps = Vec::Zero(Eigen::Index(1) << n);
    amps(0) = 1.0;
}

StateVector::StateVector(int n, Vec amplitudes) : num_qubits(n), amps(std::move(amplitudes)) {
    check_qubit_count(n);
    if (amps.size() != (Eigen::Index(1) << n)) {
        throw std::invalid_argument("amplitude vector has wrong dimension");
    }
    if (std::abs(amps.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("statevector norm must be 1 within 1e-10");
    }
}

DensityMatrix::DensityMatrix(int n) : num_qubits(n) {
    check_qubit_count(n);
    const Eigen::Index d = Eigen::Index(1) << n;
    mat = Mat::Zero(d, d);
    mat(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(int n, Mat entries) : num_qubits(n), mat(std::move(entries)) {
    check_qubit_count(n);
    const Eigen::Index d = Eigen::Index(1) << n;
    if (mat.rows() != d || mat.cols() != d) {
        throw std::invalid_argument("density matrix has wrong dimension");
    }
}

DensityMatrix DensityMatrix::from_statevector(const StateVector& sv) {
    DensityMatrix rho(sv.num_qubits);
    rho.mat = sv.amps * sv.amps.adjoint();
    return rho;
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat> eig(mat, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

bool DensityMatrix::is_physical(double herm_tol, double trace_tol, double psd_slack) const {
    if (!is_hermitian(mat, herm_tol)) return false;
    if (std::abs(trace_real() - 1.0) > trace_tol) return false;
    return min_eigenvalue() >= -psd_slack;
}

}  // namespace qrsim
