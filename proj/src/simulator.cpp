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

#include "qrsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qrsim {

namespace {

void check_targets(const std::vector<int>& targets, int num_qubits, std::size_t expected_arity) {
    if (targets.size() != expected_arity) {
        throw std::invalid_argument("operation expects " + std::to_string(expected_arity) +
                                    " target(s), got " + std::to_string(targets.size()));
    }
    for (int t : targets) {
        if (t < 0 || t >= num_qubits) {
            throw std::out_of_range("target q[" + std::to_string(t) + "] out of range for " +
                                    std::to_string(num_qubits) + " qubits");
        }
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        for (std::size_t j = i + 1; j < targets.size(); ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("operation targets must be distinct qubits");
            }
        }
    }
}

// Applies a 2^k x 2^k matrix to the amplitudes reached through (data, stride).
// targets[0] maps to the most significant bit of the local matrix index.
// Only 1- and 2-qubit operators exist in the gate/channel vocabulary.
void apply_matrix_strided(cplx* data, std::ptrdiff_t stride, int num_qubits, const Mat& m,
                          const std::vector<int>& targets) {
    const int k = static_cast<int>(targets.size());
    if (k < 1 || k > 2) {
        throw std::invalid_argument("operators act on 1 or 2 qubits");
    }
    const std::uint64_t dim = std::uint64_t(1) << num_qubits;
    const int sub = 1 << k;

    // Global index offset of each local basis pattern.
    std::uint64_t pattern[4] = {0, 0, 0, 0};
    std::uint64_t mask = 0;
    for (int j = 0; j < k; ++j) {
        const std::uint64_t bit = std::uint64_t(1) << (num_qubits - 1 - targets[j]);
        mask |= bit;
        for (int r = 0; r < sub; ++r) {
            if ((r >> (k - 1 - j)) & 1) pattern[r] |= bit;
        }
    }

    cplx in[4];
    for (std::uint64_t base = 0; base < dim; ++base) {
        if ((base & mask) != 0) continue;
        for (int r = 0; r < sub; ++r) in[r] = data[std::ptrdiff_t(base | pattern[r]) * stride];
        for (int r = 0; r < sub; ++r) {
            cplx acc = 0.0;
            for (int c = 0; c < sub; ++c) acc += m(r, c) * in[c];
            data[std::ptrdiff_t(base | pattern[r]) * stride] = acc;
        }
    }
}

void apply_matrix(StateVector& state, const Mat& m, const std::vector<int>& targets) {
    apply_matrix_strided(state.amps.data(), 1, state.num_qubits, m, targets);
}

void apply_matrix_left(DensityMatrix& rho, const Mat& m, const std::vector<int>& targets) {
    const Eigen::Index d = rho.dim();
    for (Eigen::Index c = 0; c < d; ++c) {
        apply_matrix_strided(rho.mat.data() + c * d, 1, rho.num_qubits, m, targets);
    }
}

void apply_matrix_right_dagger(DensityMatrix& rho, const Mat& m, const std::vector<int>& targets) {
    // (rho M^dag)_{rc} = sum_{c'} rho_{rc'} conj(M_{c c'}): act with conj(M)
    // along the column index of each row.
    const Eigen::Index d = rho.dim();
    const Mat mc = m.conjugate();
    for (Eigen::Index r = 0; r < d; ++r) {
        apply_matrix_strided(rho.mat.data() + r, d, rho.num_qubits, mc, targets);
    }
}

std::uint64_t compose_index(std::uint64_t bits, const std::vector<int>& qubits, int num_qubits) {
    std::uint64_t idx = 0;
    const int k = static_cast<int>(qubits.size());
    for (int j = 0; j < k; ++j) {
        if ((bits >> (k - 1 - j)) & 1) idx |= std::uint64_t(1) << (num_qubits - 1 - qubits[j]);
    }
    return idx;
}

std::uint64_t extract_outcome(std::uint64_t idx, const std::vector<int>& qubits, int num_qubits) {
    std::uint64_t out = 0;
    const int k = static_cast<int>(qubits.size());
    for (int j = 0; j < k; ++j) {
        if ((idx >> (num_qubits - 1 - qubits[j])) & 1) out |= std::uint64_t(1) << (k - 1 - j);
    }
    return out;
}

template <typename State>
Counts sample_impl(const State& state, const std::vector<Measurement>& measurements,
                   std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be positive");
    }
    const std::vector<int> qubits = measured_qubits_by_cbit(measurements);
    const std::vector<double> probs = exact_probabilities(state, qubits);
    return sample_distribution(probs, static_cast<int>(qubits.size()), shots, seed);
}

}  // namespace

std::vector<int> measured_qubits_by_cbit(const std::vector<Measurement>& measurements) {
    if (measurements.empty()) {
        throw std::invalid_argument("no measured qubits");
    }
    std::vector<Measurement> sorted = measurements;
    std::sort(sorted.begin(), sorted.end(),
              [](const Measurement& a, const Measurement& b) { return a.cbit < b.cbit; });
    std::vector<int> qubits;
    qubits.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i].cbit == sorted[i - 1].cbit) {
            throw std::invalid_argument("classical bit c[" + std::to_string(sorted[i].cbit) +
                                        "] assigned twice");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (sorted[j].qubit == sorted[i].qubit) {
                throw std::invalid_argument("qubit q[" + std::to_string(sorted[i].qubit) +
                                            "] measured twice");
            }
        }
        qubits.push_back(sorted[i].qubit);
    }
    return qubits;
}

void apply_gate(StateVector& state, const GateOp& op) {
    check_targets(op.targets, state.num_qubits, gate_arity(op.kind));
    apply_matrix(state, gate_matrix(op), op.targets);
}

void apply_gate(DensityMatrix& state, const GateOp& op) {
    check_targets(op.targets, state.num_qubits, gate_arity(op.kind));
    const Mat u = gate_matrix(op);
    apply_matrix_left(state, u, op.targets);
    apply_matrix_right_dagger(state, u, op.targets);
}

void apply_channel(DensityMatrix& state, const KrausChannel& channel,
                   const std::vector<int>& targets) {
    check_targets(targets, state.num_qubits, std::size_t(channel.arity()));
    validate_cptp(channel, 1e-10);
    Mat acc = Mat::Zero(state.dim(), state.dim());
    for (const Mat& k : channel.operators) {
        DensityMatrix term(state.num_qubits, state.mat);
        apply_matrix_left(term, k, targets);
        apply_matrix_right_dagger(term, k, targets);
        acc += term.mat;
    }
    state.mat = std::move(acc);
}

std::vector<double> exact_probabilities(const StateVector& state, const std::vector<int>& qubits) {
    check_targets(qubits, state.num_qubits, qubits.size());
    if (qubits.empty()) {
        throw std::invalid_argument("probability query needs at least one qubit");
    }
    std::vector<double> out(std::size_t(1) << qubits.size(), 0.0);
    const std::uint64_t dim = std::uint64_t(1) << state.num_qubits;
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        out[extract_outcome(idx, qubits, state.num_qubits)] += std::norm(state.amps(idx));
    }
    return out;
}

std::vector<double> exact_probabilities(const DensityMatrix& state, const std::vector<int>& qubits) {
    check_targets(qubits, state.num_qubits, qubits.size());
    if (qubits.empty()) {
        throw std::invalid_argument("probability query needs at least one qubit");
    }
    std::vector<double> out(std::size_t(1) << qubits.size(), 0.0);
    const std::uint64_t dim = std::uint64_t(1) << state.num_qubits;
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        out[extract_outcome(idx, qubits, state.num_qubits)] += state.mat(idx, idx).real();
    }
    return out;
}

Counts sample_measurements(const StateVector& state, const std::vector<Measurement>& measurements,
                           std::uint64_t shots, std::uint64_t seed) {
    return sample_impl(state, measurements, shots, seed);
}

Counts sample_measurements(const DensityMatrix& state, const std::vector<Measurement>& measurements,
                           std::uint64_t shots, std::uint64_t seed) {
    return sample_impl(state, measurements, shots, seed);
}

Counts sample_distribution(const std::vector<double>& probabilities, int num_bits,
                           std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shot count must be positive");
    }
    if (probabilities.size() != (std::size_t(1) << num_bits)) {
        throw std::invalid_argument("distribution size does not match bit count");
    }
    std::vector<double> cdf(probabilities.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        acc += std::max(0.0, probabilities[i]);
        cdf[i] = acc;
    }
    if (std::abs(acc - 1.0) > 1e-9) {
        throw std::invalid_argument("distribution does not sum to 1");
    }
    cdf.back() = 1.0;

    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> tally(probabilities.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = canonical53(rng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        tally[std::size_t(it - cdf.begin())]++;
    }

    Counts counts;
    counts.shots = shots;
    for (std::size_t i = 0; i < tally.size(); ++i) {
        if (tally[i] > 0) counts.histogram[outcome_key(i, num_bits)] = tally[i];
    }
    return counts;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial trace must keep at least one qubit");
    }
    check_targets(keep, rho.num_qubits, keep.size());
    const int k = static_cast<int>(keep.size());
    std::vector<int> traced;
    for (int q = 0; q < rho.num_qubits; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
    }
    const std::uint64_t dk = std::uint64_t(1) << k;
    const std::uint64_t de = std::uint64_t(1) << traced.size();
    Mat out = Mat::Zero(dk, dk);
    for (std::uint64_t r = 0; r < dk; ++r) {
        for (std::uint64_t c = 0; c < dk; ++c) {
            const std::uint64_t rbase = compose_index(r, keep, rho.num_qubits);
            const std::uint64_t cbase = compose_index(c, keep, rho.num_qubits);
            cplx acc = 0.0;
            for (std::uint64_t e = 0; e < de; ++e) {
                const std::uint64_t env = compose_index(e, traced, rho.num_qubits);
                acc += rho.mat(rbase | env, cbase | env);
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(k, std::move(out));
}

DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial trace must keep at least one qubit");
    }
    check_targets(keep, psi.num_qubits, keep.size());
    const int k = static_cast<int>(keep.size());
    std::vector<int> traced;
    for (int q = 0; q < psi.num_qubits; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
    }
    const std::uint64_t dk = std::uint64_t(1) << k;
    const std::uint64_t de = std::uint64_t(1) << traced.size();
    Mat out = Mat::Zero(dk, dk);
    for (std::uint64_t r = 0; r < dk; ++r) {
        for (std::uint64_t c = 0; c < dk; ++c) {
            const std::uint64_t rbase = compose_index(r, keep, psi.num_qubits);
            const std::uint64_t cbase = compose_index(c, keep, psi.num_qubits);
            cplx acc = 0.0;
            for (std::uint64_t e = 0; e < de; ++e) {
                const std::uint64_t env = compose_index(e, traced, psi.num_qubits);
                acc += psi.amps(rbase | env) * std::conj(psi.amps(cbase | env));
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(k, std::move(out));
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("statevector dimensions differ");
    }
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
        const double w = std::abs(a.amps(j)) * std::abs(b.amps(j));
        if (w > best) {
            best = w;
            pivot = j;
        }
    }
    cplx phase = 1.0;
    if (best > 0.0) {
        phase = std::polar(1.0, std::arg(a.amps(pivot)) - std::arg(b.amps(pivot)));
    }
    double max_diff = 0.0;
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
        max_diff = std::max(max_diff, std::abs(a.amps(j) - phase * b.amps(j)));
    }
    return max_diff < tol;
}

StateVector simulate(const Circuit& circuit) {
    StateVector state(circuit.num_qubits);
    for (const GateOp& op : circuit.ops) apply_gate(state, op);
    return state;
}

DensityMatrix simulate_density(const Circuit& circuit) {
    DensityMatrix state(circuit.num_qubits);
    for (const GateOp& op : circuit.ops) apply_gate(state, op);
    return state;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> eig(rho.mat, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index j = 0; j < eig.eigenvalues().size(); ++j) {
        const double lambda = eig.eigenvalues()(j);
        if (lambda > 1e-12) s -= lambda * std::log(lambda);
    }
    return s;
}

std::string outcome_key(std::uint64_t outcome, int num_bits) {
    std::string key(std::size_t(num_bits), '0');
    for (int b = 0; b < num_bits; ++b) {
        if ((outcome >> (num_bits - 1 - b)) & 1) key[std::size_t(b)] = '1';
    }
    return key;
}

}  // namespace qrsim
