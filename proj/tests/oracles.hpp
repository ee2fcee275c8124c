// Copyright 2026 The vqopt Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Dense-matrix reference implementations used as independent oracles.
#pragma once

#include <vqopt/ising.hpp>
#include <vqopt/simulator.hpp>

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

namespace vqopt::testing {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline CMat pauli_x() {
    CMat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline CMat pauli_y() {
    CMat m(2, 2);
    m << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    return m;
}

inline CMat pauli_z() {
    CMat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline CMat kron(const CMat &a, const CMat &b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// op acting on qubit q of L (qubit q is bit q of the basis index).
inline CMat embed(const CMat &op, std::size_t q, std::size_t L) {
    CMat out = CMat::Identity(1, 1);
    for (std::size_t k = L; k-- > 0;) {
        out = kron(out, k == q ? op : CMat::Identity(2, 2));
    }
    return out;
}

/// exp(i a H) for Hermitian H via its eigendecomposition.
inline CMat expi_hermitian(const CMat &H, double a) {
    Eigen::SelfAdjointEigenSolver<CMat> es(H);
    const Eigen::VectorXd w = es.eigenvalues();
    CVec phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        phases[i] = std::polar(1.0, a * w[i]);
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline CMat cnot_dense(std::size_t control, std::size_t target, std::size_t L) {
    const std::size_t dim = std::size_t{1} << L;
    CMat m = CMat::Zero(dim, dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const std::size_t y = ((x >> control) & 1U) ? x ^ (std::size_t{1} << target) : x;
        m(y, x) = 1.0;
    }
    return m;
}

/// Diagonal problem Hamiltonian assembled from Pauli-Z strings.
inline CMat ising_dense(const IsingInstance &inst) {
    const std::size_t L = inst.size();
    const std::size_t dim = std::size_t{1} << L;
    CMat H = CMat::Zero(dim, dim);
    for (std::size_t j = 0; j + 1 < L; ++j) {
        H -= inst.couplings()[j] * embed(pauli_z(), j, L) * embed(pauli_z(), j + 1, L);
    }
    for (std::size_t j = 0; j < L; ++j) {
        H -= inst.fields()[j] * embed(pauli_z(), j, L);
    }
    return H;
}

inline CVec to_eigen(const StateVector &s) {
    CVec v(s.dimension());
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        v[i] = s[i];
    }
    return v;
}

inline StateVector random_state(std::size_t L, Rng &rng) {
    std::vector<Complex> amps(std::size_t{1} << L);
    for (auto &a : amps) {
        a = Complex(standard_normal(rng), standard_normal(rng));
    }
    StateVector s(L, std::move(amps));
    s.normalize();
    return s;
}

} // namespace vqopt::testing
