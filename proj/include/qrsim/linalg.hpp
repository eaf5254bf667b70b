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

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qrsim {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline bool is_hermitian(const Mat& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() < tol;
}

inline bool is_unitary(const Mat& m, double tol) {
    Mat d = m.adjoint() * m - Mat::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff() < tol;
}

/// Counter-based seed mixing (splitmix64 output function). Child stream i of a
/// root seed is derive_seed(root, i); nested derivations chain the rule. This
/// is the documented split rule for all derived sampling streams, so results
/// are reproducible no matter how work is partitioned.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return splitmix64(root + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Uniform double in [0, 1) with 53 random bits. Fully specified given the
/// generator, unlike std::uniform_real_distribution.
template <typename Rng>
double canonical53(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qrsim
