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

#include "qrsim/linalg.hpp"

namespace qrsim {

/// Basis convention used everywhere (amplitudes, histogram keys, DSL, JSON):
/// basis state |b0 b1 ... b_{n-1}> with b0 = qubit 0 maps to amplitude index
/// sum_k b_k * 2^(n-1-k), i.e. qubit 0 is the MOST significant bit. For two
/// qubits, |01> is index 1 and |10> is index 2.
inline constexpr int kMaxQubits = 12;

/// Dense pure state over `num_qubits` qubits; 2^n amplitudes, unit L2 norm.
struct StateVector {
    int num_qubits = 1;
    Vec amps;

    /// |0...0>.
    explicit StateVector(int n);
    /// Wraps existing amplitudes; validates dimension and unit norm (1e-10).
    StateVector(int n, Vec amplitudes);

    Eigen::Index dim() const { return amps.size(); }
    double norm() const { return amps.norm(); }
};

/// Dense mixed state; 2^n x 2^n entries. Simulation keeps it Hermitian,
/// trace-1 and PSD (within tolerance); raw tomography reconstructions may
/// violate PSD and are flagged by their minimum eigenvalue instead.
struct DensityMatrix {
    int num_qubits = 1;
    Mat mat;

    /// |0...0><0...0|.
    explicit DensityMatrix(int n);
    DensityMatrix(int n, Mat entries);

    static DensityMatrix from_statevector(const StateVector& sv);

    Eigen::Index dim() const { return mat.rows(); }
    double trace_real() const { return mat.trace().real(); }
    double min_eigenvalue() const;
    bool is_physical(double herm_tol = 1e-10, double trace_tol = 1e-10,
                     double psd_slack = 1e-8) const;
};

}  // namespace qrsim
