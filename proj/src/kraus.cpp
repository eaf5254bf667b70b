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

#include "qrsim/kraus.hpp"

#include <cmath>
#include <stdexcept>

namespace qrsim {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " probability must be in [0, 1]");
    }
}

Mat pauli(int i) {
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

}  // namespace

int KrausChannel::arity() const {
    if (operators.empty()) {
        throw std::invalid_argument("Kraus channel '" + label + "' has no operators");
    }
    const Eigen::Index d = operators.front().rows();
    int k = 0;
    while ((Eigen::Index(1) << k) < d) ++k;
    if ((Eigen::Index(1) << k) != d) {
        throw std::invalid_argument("Kraus operator dimension is not a power of two");
    }
    return k;
}

double KrausChannel::completeness_defect() const {
    const Eigen::Index d = operators.front().rows();
    Mat sum = Mat::Zero(d, d);
    for (const Mat& k : operators) {
        if (k.rows() != d || k.cols() != d) {
            throw std::invalid_argument("Kraus operators must share one square dimension");
        }
        sum += k.adjoint() * k;
    }
    return (sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
}

void validate_cptp(const KrausChannel& channel, double tol) {
    const double defect = channel.completeness_defect();
    if (defect > tol) {
        throw std::invalid_argument("channel '" + channel.label +
                                    "' is not trace preserving: completeness defect " +
                                    std::to_string(defect));
    }
}

KrausChannel identity_channel(int arity) {
    const Eigen::Index d = Eigen::Index(1) << arity;
    return {"identity", {Mat::Identity(d, d)}};
}

KrausChannel amplitude_damping(double p) {
    check_probability(p, "amplitude damping");
    Mat k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1.0 - p);
    k1 << 0, std::sqrt(p), 0, 0;
    return {"amplitude_damping", {k0, k1}};
}

KrausChannel dephasing(double p) {
    check_probability(p, "dephasing");
    Mat k0 = std::sqrt(1.0 - p / 2.0) * pauli(0);
    Mat k1 = std::sqrt(p / 2.0) * pauli(3);
    return {"dephasing", {k0, k1}};
}

KrausChannel depolarizing(double p) {
    check_probability(p, "depolarizing");
    KrausChannel ch;
    ch.label = "depolarizing";
    ch.operators.push_back(std::sqrt(1.0 - p) * pauli(0));
    for (int i = 1; i < 4; ++i) {
        ch.operators.push_back(std::sqrt(p / 3.0) * pauli(i));
    }
    return ch;
}

KrausChannel depolarizing2(double p) {
    check_probability(p, "two-qubit depolarizing");
    KrausChannel ch;
    ch.label = "depolarizing2";
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double w = (i == 0 && j == 0) ? 1.0 - p : p / 15.0;
            ch.operators.push_back(std::sqrt(w) * kron(pauli(i), pauli(j)));
        }
    }
    return ch;
}

}  // namespace qrsim
