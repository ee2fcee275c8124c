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

#include <vqopt/ansatz.hpp>
#include <vqopt/errors.hpp>

#include <cmath>
#include <numbers>

using namespace vqopt;
using namespace vqopt::testing;
using Catch::Approx;

namespace {

double overlap(const StateVector &a, const StateVector &b) {
    return std::abs(inner_product(a, b));
}

CMat ry_dense(double t) {
    return expi_hermitian(pauli_y(), -t / 2);
}

} // namespace

TEST_CASE("parameter counts") {
    CHECK(AnsatzSpec::vqe(6, 1).n_params() == 12);
    CHECK(AnsatzSpec::vqe(4, 3).n_params() == 16);
    const auto p = make_problem(make_ferromagnetic(5));
    CHECK(AnsatzSpec::qaoa(p, 2).n_params() == 4);
    CHECK(AnsatzSpec::qaoa(p, 8).n_params() == 16);
    CHECK_THROWS_AS(AnsatzSpec::vqe(4, 0), DomainError);
    CHECK_THROWS_AS(AnsatzSpec::qaoa(nullptr, 1), DomainError);
}

TEST_CASE("zero parameters give the reference states") {
    const StateVector v = prepare_state(AnsatzSpec::vqe(4, 2), ParamVector(12, 0.0));
    CHECK(std::norm(v[0]) == Approx(1.0));
    const auto p = make_problem(make_ferromagnetic(4));
    const StateVector q = prepare_state(AnsatzSpec::qaoa(p, 3), ParamVector(6, 0.0));
    for (std::size_t x = 0; x < 16; ++x) {
        CHECK(std::norm(q[x]) == Approx(1.0 / 16));
    }
}

TEST_CASE("VQE circuit matches a dense two-qubit product") {
    const ParamVector th{0.3, -1.1, 2.0, 0.4};
    const StateVector s = prepare_state(AnsatzSpec::vqe(2, 1), th);
    CVec v = CVec::Zero(4);
    v[0] = 1.0;
    const CMat layer0 = kron(ry_dense(th[1]), ry_dense(th[0]));
    const CMat layer1 = kron(ry_dense(th[3]), ry_dense(th[2]));
    const CVec expect = layer1 * cnot_dense(0, 1, 2) * layer0 * v;
    CHECK((to_eigen(s) - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("QAOA matches exp(-i tM H_M) exp(+i tP H_P) on dense matrices") {
    const auto inst = make_disordered(3, 4);
    const auto p = make_problem(inst);
    const ParamVector th{0.7, 0.2, -0.5, 1.3};
    const StateVector s = prepare_state(AnsatzSpec::qaoa(p, 2), th);

    const std::size_t L = 3;
    const CMat HP = ising_dense(inst);
    CMat HM = CMat::Zero(8, 8);
    for (std::size_t j = 0; j < L; ++j) {
        HM += embed(pauli_x(), j, L);
    }
    CVec v = CVec::Constant(8, 1.0 / std::sqrt(8.0));
    for (std::size_t l = 0; l < 2; ++l) {
        v = expi_hermitian(HP, th[2 * l]) * v;
        v = expi_hermitian(HM, -th[2 * l + 1]) * v;
    }
    CHECK((to_eigen(s) - v).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gate-level and diagonal QAOA agree") {
    Rng rng(17);
    for (std::size_t L = 2; L <= 6; ++L) {
        const auto p = make_problem(L % 2 ? make_disordered(L, L) : make_ferromagnetic(L));
        const auto spec = AnsatzSpec::qaoa(p, 3);
        const auto th = init_random(spec, rng);
        const StateVector a = prepare_state(spec, th, PhaseMode::Diagonal);
        const StateVector b = prepare_state(spec, th, PhaseMode::GateLevel);
        CHECK(overlap(a, b) == Approx(1.0).margin(1e-10));
        // Up to a global phase, amplitudes agree
        const Complex phase = inner_product(a, b) / std::abs(inner_product(a, b));
        for (std::size_t x = 0; x < a.dimension(); ++x) {
            CHECK(std::abs(a[x] * phase - b[x]) < 1e-10);
        }
    }
}

TEST_CASE("gate counts") {
    const auto p = make_problem(make_ferromagnetic(5));
    const auto gl = count_gates(build_circuit(AnsatzSpec::qaoa(p, 2), ParamVector(4, 0.1), PhaseMode::GateLevel));
    CHECK(gl.rzz == 8);
    CHECK(gl.rz == 10);
    CHECK(gl.rx == 10);
    CHECK(gl.diagonal_phases == 0);
    const auto dg = count_gates(build_circuit(AnsatzSpec::qaoa(p, 2), ParamVector(4, 0.1)));
    CHECK(dg.diagonal_phases == 2);
    const auto v = count_gates(build_circuit(AnsatzSpec::vqe(5, 3), ParamVector(20, 0.1)));
    CHECK(v.ry == 20);
    CHECK(v.cnot == 12);
    CHECK_THROWS_AS(build_circuit(AnsatzSpec::vqe(5, 3), ParamVector(19, 0.1)), DomainError);
}

TEST_CASE("linear schedule") {
    const auto th = init_linear_schedule(4, 0.8);
    REQUIRE(th.size() == 8);
    for (std::size_t l = 1; l <= 4; ++l) {
        CHECK(th[2 * (l - 1)] == Approx(0.8 * l / 4.0));
        CHECK(th[2 * (l - 1) + 1] == Approx(0.8 * (1.0 - l / 4.0)).margin(1e-15));
    }
    CHECK_THROWS_AS(init_linear_schedule(0, 0.8), DomainError);
}

TEST_CASE("linear schedule concentrates weight on the ground state as depth grows") {
    const auto p = make_problem(make_ferromagnetic(6));
    double previous = 0.0;
    for (std::size_t d : {2, 4, 8}) {
        const StateVector s = prepare_state(AnsatzSpec::qaoa(p, d), init_linear_schedule(d, 0.8));
        const double pgs = std::norm(s[63]);
        CHECK(pgs > previous);
        previous = pgs;
    }
}

TEST_CASE("random initialization stays in (low, high]") {
    Rng rng(2);
    const auto spec = AnsatzSpec::vqe(4, 2);
    double lo = 10, hi = -10;
    for (int i = 0; i < 2000; ++i) {
        for (double v : init_random(spec, rng)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    CHECK(lo > -std::numbers::pi);
    CHECK(hi <= std::numbers::pi);
    CHECK(lo < -3.0);
    CHECK(hi > 3.0);
    for (double v : init_random(spec, rng, -1.0, 1.0)) {
        CHECK(std::abs(v) <= 1.0);
    }
}

TEST_CASE("noisy preparation approaches the ideal state for long coherence times") {
    const auto p = make_problem(make_ferromagnetic(4));
    const auto spec = AnsatzSpec::qaoa(p, 2);
    const ParamVector th{0.4, 0.3, 0.8, 0.1};
    const NoiseModel quiet{1e9, 1e9, 50.0, 300.0};
    Rng rng(0);
    const StateVector ideal = prepare_state(spec, th);
    const StateVector noisy = prepare_state(spec, th, quiet, rng);
    CHECK(overlap(ideal, noisy) == Approx(1.0).margin(1e-6));
}
