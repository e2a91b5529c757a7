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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "loopline/rng.hpp"

namespace loopline::qem {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Mat pauli_matrix(char p) {
    Mat m(2, 2);
    switch (p) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Cplx(0, -1), Cplx(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument(std::string("not a Pauli letter: ") + p);
    }
    return m;
}

/// A tensor product of single-qubit Paulis with a sign; Hermitian by
/// construction.
struct PauliObservable {
    std::string word;  // letters over {I, X, Y, Z}, site 0 first
    int phase = 1;     // +1 or -1

    int qubits() const { return static_cast<int>(word.size()); }

    void validate() const {
        if (word.empty()) throw std::invalid_argument("empty Pauli word");
        if (phase != 1 && phase != -1) throw std::invalid_argument("phase must be +1 or -1");
        for (char c : word)
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
    }

    Mat matrix() const {
        validate();
        Mat m = Mat::Identity(1, 1);
        for (char c : word) m = kron(m, pauli_matrix(c));
        return static_cast<double>(phase) * m;
    }
};

/// A dense density matrix with construction-time checks of Hermiticity,
/// unit trace and positive semidefiniteness.
struct DensityOperator {
    Mat rho;
    int qubits = 0;

    static DensityOperator from_matrix(Mat m) {
        DensityOperator d;
        Eigen::Index dim = m.rows();
        if (dim == 0 || m.cols() != dim || (dim & (dim - 1)) != 0)
            throw std::invalid_argument("density matrix dimension must be a power of two");
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
            throw std::invalid_argument("density matrix is not Hermitian");
        if (std::abs(m.trace() - Cplx(1.0)) > 1e-10)
            throw std::invalid_argument("density matrix trace is not one");
        Eigen::SelfAdjointEigenSolver<Mat> es(m);
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw std::invalid_argument("density matrix is not positive semidefinite");
        d.rho = std::move(m);
        d.qubits = 0;
        while ((Eigen::Index(1) << d.qubits) < dim) ++d.qubits;
        return d;
    }

    static DensityOperator pure(Vec psi) {
        double n = psi.norm();
        if (n <= 0) throw std::invalid_argument("zero state vector");
        psi /= n;
        return from_matrix(psi * psi.adjoint());
    }
};

/// Mixes a pure target with the maximally mixed state:
/// (1 - eps) |psi><psi| + eps I / 2^n.
inline DensityOperator depolarized_pure(Vec psi, double eps) {
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("eps must lie in [0, 1]");
    psi /= psi.norm();
    Eigen::Index dim = psi.size();
    Mat m = (1.0 - eps) * (psi * psi.adjoint()) +
            (eps / static_cast<double>(dim)) * Mat::Identity(dim, dim);
    return DensityOperator::from_matrix(std::move(m));
}

/// Applies independent single-qubit dephasing of strength p to every qubit:
/// rho -> (1 - p) rho + p Z rho Z per site.
inline DensityOperator dephased(const DensityOperator& d, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must lie in [0, 1]");
    Mat rho = d.rho;
    for (int q = 0; q < d.qubits; ++q) {
        Mat z = Mat::Identity(1, 1);
        for (int i = 0; i < d.qubits; ++i) z = kron(z, pauli_matrix(i == q ? 'Z' : 'I'));
        rho = (1.0 - p) * rho + p * (z * rho * z);
    }
    return DensityOperator::from_matrix(std::move(rho));
}

/// Haar-ish random pure state from a Gaussian amplitude vector.
inline Vec random_state(CounterRng& rng, int qubits) {
    Eigen::Index dim = Eigen::Index(1) << qubits;
    Vec psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        // Box-Muller pairs for real and imaginary parts.
        double u1 = rng.next_double();
        double u2 = rng.next_double();
        double r = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
        psi(i) = Cplx(r * std::cos(6.283185307179586 * u2), r * std::sin(6.283185307179586 * u2));
    }
    psi /= psi.norm();
    return psi;
}

/// Random full-rank density matrix from a Ginibre factor G G^dagger.
inline DensityOperator random_density(CounterRng& rng, int qubits) {
    Eigen::Index dim = Eigen::Index(1) << qubits;
    Mat g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) {
            double u1 = rng.next_double();
            double u2 = rng.next_double();
            double r = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
            g(i, j) = Cplx(r * std::cos(6.283185307179586 * u2),
                           r * std::sin(6.283185307179586 * u2));
        }
    Mat rho = g * g.adjoint();
    rho /= rho.trace();
    // Symmetrize away floating-point asymmetry before validation.
    rho = 0.5 * (rho + Mat(rho.adjoint()));
    return DensityOperator::from_matrix(std::move(rho));
}

}  // namespace loopline::qem
