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

#include <vqopt/errors.hpp>
#include <vqopt/ising.hpp>

#include <cmath>
#include <numeric>

using namespace vqopt;
using Catch::Approx;

namespace {

// Straight transcription of the chain energy with explicit spins.
double reference_energy(const std::vector<double> &J, const std::vector<double> &h, unsigned x) {
    const std::size_t L = h.size();
    std::vector<int> s(L);
    for (std::size_t j = 0; j < L; ++j) {
        s[j] = ((x >> j) & 1U) ? -1 : 1;
    }
    double e = 0.0;
    for (std::size_t j = 0; j + 1 < L; ++j) {
        e -= J[j] * s[j] * s[j + 1];
    }
    for (std::size_t j = 0; j < L; ++j) {
        e -= h[j] * s[j];
    }
    return e;
}

} // namespace

TEST_CASE("two-site ferromagnet energy table") {
    const auto table = energy_table(make_ferromagnetic(2));
    REQUIRE(table.size() == 4);
    CHECK(table[0] == Approx(-0.9).margin(1e-15));
    CHECK(table[1] == Approx(1.0).margin(1e-15));
    CHECK(table[2] == Approx(1.0).margin(1e-15));
    CHECK(table[3] == Approx(-1.1).margin(1e-15));
}

TEST_CASE("eight-site ferromagnet extremes and unique ground state") {
    const auto inst = make_ferromagnetic(8);
    CHECK(energy(inst, BitString{0xFF}) == Approx(-7.4).margin(1e-12));
    CHECK(energy(inst, BitString{0x00}) == Approx(-6.6).margin(1e-12));
    const auto g = brute_force_minimum(inst);
    REQUIRE(g.degeneracy() == 1);
    CHECK(g.minimizers[0].value == 0xFFU);
    CHECK(g.minimum_energy == Approx(-7.4).margin(1e-12));
}

TEST_CASE("energy table matches the explicit-spin reference on random instances") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto inst = make_disordered(7, seed);
        const std::vector<double> J(inst.couplings().begin(), inst.couplings().end());
        const std::vector<double> h(inst.fields().begin(), inst.fields().end());
        const auto table = energy_table(inst);
        for (unsigned x = 0; x < table.size(); ++x) {
            CHECK(table[x] == Approx(reference_energy(J, h, x)).margin(1e-12));
        }
    }
}

TEST_CASE("disorder is reproducible and standard normal") {
    CHECK(make_disordered(8, 42) == make_disordered(8, 42));
    CHECK_FALSE(make_disordered(8, 42) == make_disordered(8, 43));
    const auto a = make_disordered(6, 9);
    CHECK(a.couplings().size() == 5);
    CHECK(a.fields().size() == 6);
    CHECK(a.kind() == InstanceKind::Disordered);
    CHECK(a.seed() == 9);

    double s = 0.0, s2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double v = disorder_normal(7, static_cast<std::uint64_t>(i));
        s += v;
        s2 += v * v;
    }
    const double mean = s / n;
    CHECK(std::abs(mean) < 5.0 / std::sqrt(n));
    CHECK(s2 / n - mean * mean == Approx(1.0).margin(0.02));
}

TEST_CASE("global spin flip with reversed fields preserves the energy") {
    const auto inst = make_disordered(6, 3);
    std::vector<double> J(inst.couplings().begin(), inst.couplings().end());
    std::vector<double> h(inst.fields().begin(), inst.fields().end());
    for (auto &v : h) {
        v = -v;
    }
    const IsingInstance flipped(J, h);
    for (std::uint32_t x = 0; x < 64; ++x) {
        CHECK(energy(inst, BitString{x}) == Approx(energy(flipped, BitString{x ^ 63U})).margin(1e-12));
    }
}

TEST_CASE("zero field makes the ground state doubly degenerate") {
    const IsingInstance inst({1.0, 1.0, 1.0}, {0.0, 0.0, 0.0, 0.0});
    const auto g = brute_force_minimum(inst);
    REQUIRE(g.degeneracy() == 2);
    CHECK(g.contains(BitString{0}));
    CHECK(g.contains(BitString{15}));
    CHECK(g.minimum_energy == Approx(-3.0));
}

TEST_CASE("problem bundles the table and minimizer mask") {
    const auto p = make_problem(make_ferromagnetic(5));
    CHECK(p->size() == 5);
    CHECK(p->energies.size() == 32);
    const auto hits = std::count(p->is_minimizer.begin(), p->is_minimizer.end(), 1);
    CHECK(hits == 1);
    CHECK(p->hits(BitString{31}));
    CHECK_FALSE(p->hits(BitString{0}));
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(IsingInstance({}, {1.0}), DomainError);
    CHECK_THROWS_AS(IsingInstance({1.0, 1.0}, {0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(energy(make_ferromagnetic(3), BitString{8}), DomainError);
    CHECK_THROWS_AS(energy_table(make_ferromagnetic(kMaxQubits + 1)), CapacityError);
    CHECK(instance_kind_from_string(to_string(InstanceKind::Disordered)) == InstanceKind::Disordered);
    CHECK_THROWS_AS(instance_kind_from_string("glass"), DomainError);
}
