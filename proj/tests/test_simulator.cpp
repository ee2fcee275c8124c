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
#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

#include <vqopt/errors.hpp>
#include <vqopt/simulator.hpp>

#include <cmath>
#include <numbers>

using namespace vqopt;
using namespace vqopt::testing;
using Catch::Approx;

namespace {

double max_diff(const CVec &a, const CVec &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

const Complex kI(0.0, 1.0);

} // namespace

TEST_CASE("single-qubit rotations match their dense generators") {
    Rng rng(11);
    const std::size_t L = 3;
    for (int trial = 0; trial < 10; ++trial) {
        const double t = 2.0 * std::numbers::pi * uniform01(rng) - std::numbers::pi;
        for (std::size_t q = 0; q < L; ++q) {
            const StateVector psi = random_state(L, rng);
            const CVec v = to_eigen(psi);

            StateVector a = psi;
            apply_ry(a, q, t);
            CHECK(max_diff(to_eigen(a), embed(expi_hermitian(pauli_y(), -t / 2), q, L) * v) < 1e-12);

            StateVector b = psi;
            apply_rx(b, q, t);
            CHECK(max_diff(to_eigen(b), embed(expi_hermitian(pauli_x(), t / 2), q, L) * v) < 1e-12);

            StateVector c = psi;
            apply_rz(c, q, t);
            CHECK(max_diff(to_eigen(c), embed(expi_hermitian(pauli_z(), t / 2), q, L) * v) < 1e-12);
        }
    }
}

TEST_CASE("R_y rotation matrix entries") {
    StateVector s = init_zero(1);
    apply_ry(s, 0, 0.7);
    CHECK(s[0].real() == Approx(std::cos(0.35)));
    CHECK(s[1].real() == Approx(std::sin(0.35)));
    StateVector x = init_zero(1);
    apply_rx(x, 0, 0.7);
    CHECK(x[1].imag() == Approx(std::sin(0.35)));
}

TEST_CASE("two-qubit gates match dense references") {
    Rng rng(5);
    const std::size_t L = 4;
    for (std::size_t q0 = 0; q0 < L; ++q0) {
        for (std::size_t q1 = 0; q1 < L; ++q1) {
            if (q0 == q1) {
                continue;
            }
            const StateVector psi = random_state(L, rng);
            StateVector a = psi;
            apply_cnot(a, q0, q1);
            CHECK(max_diff(to_eigen(a), cnot_dense(q0, q1, L) * to_eigen(psi)) < 1e-12);

            const double t = 1.3 * static_cast<double>(q0 + 1) - 0.4 * static_cast<double>(q1);
            StateVector b = psi;
            apply_rzz(b, q0, q1, t);
            const CMat zz = embed(pauli_z(), q0, L) * embed(pauli_z(), q1, L);
            CHECK(max_diff(to_eigen(b), expi_hermitian(zz, t / 2) * to_eigen(psi)) < 1e-12);
        }
    }
}

TEST_CASE("diagonal phase and expectation match the dense Hamiltonian") {
    Rng rng(8);
    const auto inst = make_disordered(4, 2);
    const auto table = energy_table(inst);
    const CMat H = ising_dense(inst);
    const StateVector psi = random_state(4, rng);
    StateVector a = psi;
    apply_diagonal_phase(a, table, 0.37);
    CHECK(max_diff(to_eigen(a), expi_hermitian(H, 0.37) * to_eigen(psi)) < 1e-12);
    const CVec v = to_eigen(psi);
    const double dense = (v.adjoint() * H * v)(0, 0).real();
    CHECK(expectation_diagonal(psi, table) == Approx(dense).margin(1e-12));
}

TEST_CASE("gates preserve the norm") {
    Rng rng(1);
    StateVector s = random_state(5, rng);
    for (int i = 0; i < 200; ++i) {
        const auto q = static_cast<std::size_t>(rng() % 5);
        const auto r = (q + 1 + rng() % 4) % 5;
        const double t = uniform01(rng) * 6.0;
        switch (rng() % 5) {
        case 0: apply_ry(s, q, t); break;
        case 1: apply_rx(s, q, t); break;
        case 2: apply_rz(s, q, t); break;
        case 3: apply_cnot(s, q, r); break;
        default: apply_rzz(s, q, r, t); break;
        }
    }
    CHECK(s.norm_squared() == Approx(1.0).margin(1e-12));
}

TEST_CASE("initial states") {
    const StateVector z = init_zero(3);
    CHECK(z[0] == Complex(1.0, 0.0));
    CHECK(z.norm_squared() == Approx(1.0));
    const StateVector p = init_plus(3);
    for (std::size_t x = 0; x < 8; ++x) {
        CHECK(std::norm(p[x]) == Approx(1.0 / 8));
    }
    CHECK(std::abs(inner_product(z, p)) == Approx(1.0 / std::sqrt(8.0)));
}

TEST_CASE("sampling follows the Born distribution and counts draws") {
    Rng rng(3);
    const StateVector psi = random_state(3, rng);
    const auto probs = psi.probabilities();
    ShotCounter counter;
    const std::size_t n = 200000;
    const auto shots = sample_shots(psi, n, rng, &counter);
    CHECK(counter.draws == n);
    std::vector<double> freq(8, 0.0);
    for (auto x : shots) {
        freq[x.value] += 1.0;
    }
    for (std::size_t x = 0; x < 8; ++x) {
        const double sigma = std::sqrt(probs[x] * (1 - probs[x]) / n);
        CHECK(std::abs(freq[x] / n - probs[x]) < 5 * sigma + 1e-12);
    }
}

TEST_CASE("basis state samples deterministically") {
    StateVector s = init_zero(4);
    apply_ry(s, 2, std::numbers::pi);
    Rng rng(0);
    for (auto x : sample_shots(s, 100, rng)) {
        CHECK(x.value == 4U);
    }
}

TEST_CASE("sampling validation") {
    Rng rng(0);
    StateVector s = init_zero(2);
    CHECK_THROWS_AS(sample_shots(s, 0, rng), DomainError);
    s[1] = 0.5;
    CHECK_THROWS_AS(sample_shots(s, 10, rng), IntegrityError);
    CHECK_THROWS_AS(apply_cnot(s, 1, 1), DomainError);
    CHECK_THROWS_AS(apply_rx(s, 2, 0.1), DomainError);
}

TEST_CASE("noise probabilities follow the relaxation times") {
    const NoiseModel n;
    CHECK(n.damping_probability(50.0) == Approx(1.0 - std::exp(-50.0 / 50000.0)));
    const double rate = 1.0 / 70000.0 - 1.0 / 100000.0;
    CHECK(n.dephasing_flip_probability(300.0) == Approx((1.0 - std::exp(-300.0 * rate)) / 2));
    CHECK_THROWS_AS((NoiseModel{50.0, 120.0, 50.0, 300.0}.validate()), DomainError);
    CHECK_THROWS_AS((NoiseModel{0.0, 70.0, 50.0, 300.0}.validate()), DomainError);
}

TEST_CASE("relaxation trajectories reproduce population and coherence decay") {
    const NoiseModel noise;
    const std::size_t trajectories = 4000;
    const std::size_t steps = 500; // 25 us of 50 ns idle steps
    const double t_ns = 50.0 * steps;
    Rng rng(21);
    double excited = 0.0;
    Complex coherence = 0.0;
    for (std::size_t k = 0; k < trajectories; ++k) {
        StateVector one = init_zero(1);
        apply_ry(one, 0, std::numbers::pi);
        StateVector plus = init_plus(1);
        for (std::size_t s = 0; s < steps; ++s) {
            apply_relaxation(one, 0, 50.0, noise, rng);
            apply_relaxation(plus, 0, 50.0, noise, rng);
        }
        excited += std::norm(one[1]);
        coherence += plus[0] * std::conj(plus[1]);
    }
    const double p1 = excited / trajectories;
    const double c = std::abs(coherence) / trajectories;
    CHECK(p1 == Approx(std::exp(-t_ns / 50000.0)).epsilon(0.05));
    CHECK(c == Approx(0.5 * std::exp(-t_ns / 70000.0)).epsilon(0.05));
}

TEST_CASE("noisy gates keep states normalized") {
    Rng rng(4);
    StateVector s = random_state(3, rng);
    const NoiseModel noise{5.0, 7.0, 50.0, 300.0};
    for (int i = 0; i < 100; ++i) {
        apply_noisy_gate(s, Gate{GateKind::Rzz, 0, 2, 0.3}, noise, rng);
        apply_noisy_gate(s, Gate{GateKind::Rx, 1, 0, 0.2}, noise, rng);
    }
    CHECK(s.norm_squared() == Approx(1.0).margin(1e-12));
}
