// Copyright 2026 Loopline Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>

#include "loopline/qem/dense.hpp"

namespace loopline::qem {

/// Layout of M copies of an N-qubit state across N loops: loop i holds
/// qubit i of every copy (plus one readout ancilla when measuring).
struct CopyStack {
    int qubits_per_copy = 1;  // N
    int copies = 1;           // M

    void validate() const {
        if (qubits_per_copy < 1 || copies < 1)
            throw std::invalid_argument("stack needs N >= 1 and M >= 1");
        if (qubits_per_copy * copies + 1 > 14)
            throw std::invalid_argument("dense stack guard exceeded (N*M + 1 > 14)");
    }

    /// Guard for the measurement circuit, which adds one ancilla per loop.
    void validate_with_ancillas() const {
        validate();
        if (qubits_per_copy * (copies + 1) > 14)
            throw std::invalid_argument("dense measurement guard exceeded (N*(M+1) > 14)");
    }
};

/// Error-mitigated expectation value Tr(O rho^M) / Tr(rho^M) by direct
/// matrix powering.
inline double purified_expectation(const DensityOperator& rho, const PauliObservable& obs,
                                   int copies) {
    if (copies < 1) throw std::invalid_argument("M must be >= 1");
    if (obs.qubits() != rho.qubits)
        throw std::invalid_argument("observable and state qubit counts differ");
    Mat power = rho.rho;
    for (int j = 1; j < copies; ++j) power = power * rho.rho;
    double norm = power.trace().real();
    if (norm < 1e-12) throw std::domain_error("vanishing normalization");
    double num = (obs.matrix() * power).trace().real();
    return num / norm;
}

namespace detail {

/// Copy-cyclic permutation on basis states: the content of copy j moves to
/// copy j+1 (mod M). Basis ordering is copy-major with copy 0 most
/// significant, site 0 most significant within a copy.
inline Mat copy_cycle_operator(int n, int m) {
    const Eigen::Index copy_dim = Eigen::Index(1) << n;
    Eigen::Index dim = 1;
    for (int j = 0; j < m; ++j) dim *= copy_dim;
    Mat c = Mat::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        // Decompose b into copy indices, copy 0 holding the top bits.
        Eigen::Index rest = b;
        std::vector<Eigen::Index> x(m);
        for (int j = m - 1; j >= 0; --j) {
            x[j] = rest % copy_dim;
            rest /= copy_dim;
        }
        Eigen::Index target = 0;
        for (int j = 0; j < m; ++j) target = target * copy_dim + x[(j + m - 1) % m];
        c(target, b) = 1.0;
    }
    return c;
}

/// M-qubit cyclic permutation within one loop (qubit j -> qubit j+1 mod M).
inline Mat loop_cycle_operator(int m) { return copy_cycle_operator(1, m); }

inline Mat embed_on_first_copy(const PauliObservable& obs, int m) {
    Mat op = obs.matrix();
    Eigen::Index rest_dim = 1;
    for (int j = 1; j < m; ++j) rest_dim *= op.rows();
    return kron(op, Mat::Identity(rest_dim, rest_dim));
}

inline Mat tensor_power(const Mat& a, int m) {
    Mat out = Mat::Identity(1, 1);
    for (int j = 0; j < m; ++j) out = kron(out, a);
    return out;
}

/// Permutation matrix from copy-major ordering (copy j, site i) -> j*N+i to
/// loop-major ordering (site i, copy j) -> i*M+j.
inline Mat copy_to_loop_layout(int n, int m) {
    const int total = n * m;
    const Eigen::Index dim = Eigen::Index(1) << total;
    Mat p = Mat::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        Eigen::Index out = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) {
                int copy_major_pos = j * n + i;  // bit position from the top
                int bit = (b >> (total - 1 - copy_major_pos)) & 1;
                int loop_major_pos = i * m + j;
                if (bit) out |= Eigen::Index(1) << (total - 1 - loop_major_pos);
            }
        }
        p(out, b) = 1.0;
    }
    return p;
}

}  // namespace detail

/// Tr(O^(1) C_M rho^{(x)M}) built explicitly from the copy-permutation
/// operator; equals the purified numerator Tr(O rho^M).
inline double permutation_expectation(const CopyStack& stack, const DensityOperator& rho,
                                      const PauliObservable& obs) {
    stack.validate();
    if (rho.qubits != stack.qubits_per_copy || obs.qubits() != stack.qubits_per_copy)
        throw std::invalid_argument("stack, state and observable sizes differ");
    Mat cbar = detail::copy_cycle_operator(stack.qubits_per_copy, stack.copies);
    Mat o1 = detail::embed_on_first_copy(obs, stack.copies);
    Mat state = detail::tensor_power(rho.rho, stack.copies);
    return (o1 * cbar * state).trace().real();
}

/// Verifies the transversal factorization O^(1) C_M = tensor_i G_i^(1) C_M
/// under the loop layout: the global copy-permuting observable equals the
/// product of independent per-loop operators.
inline bool transversal_factorization_check(const CopyStack& stack, const PauliObservable& obs) {
    stack.validate();
    if (obs.qubits() != stack.qubits_per_copy)
        throw std::invalid_argument("observable does not match the stack");
    const int n = stack.qubits_per_copy;
    const int m = stack.copies;
    Mat global = detail::embed_on_first_copy(obs, m) * detail::copy_cycle_operator(n, m);
    Mat per_loop = Mat::Identity(1, 1);
    Mat cm = detail::loop_cycle_operator(m);
    for (int i = 0; i < n; ++i) {
        Mat g1 = kron(pauli_matrix(obs.word[i]),
                      Mat::Identity(Eigen::Index(1) << (m - 1), Eigen::Index(1) << (m - 1)));
        per_loop = kron(per_loop, Mat(g1 * cm));
    }
    if (obs.phase < 0) per_loop = -per_loop;
    Mat layout = detail::copy_to_loop_layout(n, m);
    Mat back_in_copy_order = layout.adjoint() * per_loop * layout;
    return (global - back_in_copy_order).cwiseAbs().maxCoeff() < 1e-12;
}

struct HadamardTestResult {
    double value = 0.0;
    std::optional<double> stderr_estimate;  // set in sampling mode
    std::int64_t shots = 0;                 // zero in exact mode
};

/// Readout of the copy-permuting observable through per-loop measurement
/// circuits: each loop holds one ancilla controlling its G_i^(1) C_M block,
/// the ancilla layer is entangled so all controls act as one, and the
/// product of the ancilla X outcomes estimates Re Tr(O^(1) C_M rho^{(x)M}).
/// Exact mode contracts the expectation analytically; sampling mode draws
/// outcome products from the induced +-1 distribution.
inline HadamardTestResult hadamard_test(const CopyStack& stack, const DensityOperator& rho,
                                        const PauliObservable& obs,
                                        std::optional<std::int64_t> shots = std::nullopt,
                                        std::uint64_t seed = 0) {
    stack.validate_with_ancillas();
    double exact = permutation_expectation(stack, rho, obs);
    HadamardTestResult out;
    if (!shots) {
        out.value = exact;
        return out;
    }
    if (*shots < 1) throw std::invalid_argument("shots must be >= 1");
    double p_plus = std::min(1.0, std::max(0.0, 0.5 * (1.0 + exact)));
    std::int64_t plus = 0;
    for (std::int64_t s = 0; s < *shots; ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s), /*stream=*/0x4ad5);
        plus += rng.bernoulli(p_plus) ? 1 : 0;
    }
    double mean = 2.0 * static_cast<double>(plus) / static_cast<double>(*shots) - 1.0;
    out.value = mean;
    out.shots = *shots;
    out.stderr_estimate =
        std::sqrt(std::max(0.0, 1.0 - mean * mean) / static_cast<double>(*shots));
    return out;
}

}  // namespace loopline::qem
