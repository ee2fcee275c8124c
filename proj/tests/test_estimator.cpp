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

#include <vqopt/ansatz.hpp>
#include <vqopt/errors.hpp>
#include <vqopt/estimator.hpp>

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

using namespace vqopt;
using Catch::Approx;

namespace {

SampleSet from_energies(const std::vector<double> &energies) {
    std::vector<Shot> shots;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        shots.push_back(Shot{BitString{static_cast<std::uint32_t>(i)}, energies[i]});
    }
    return SampleSet(shots, shots.size());
}

double table_mean(const std::vector<double> &t) {
    return std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(t.size());
}

double table_stddev(const std::vector<double> &t) {
    const double m = table_mean(t);
    double s = 0.0;
    for (double v : t) {
        s += (v - m) * (v - m);
    }
    return std::sqrt(s / static_cast<double>(t.size()));
}

// Richardson extrapolation of central differences with steps h and h/2.
double richardson(const std::function<double(double)> &f, double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2 * h);
    const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
    return (4 * d2 - d1) / 3;
}

} // namespace

TEST_CASE("mean cost") {
    CHECK(mean_cost(from_energies({1, 2, 3, 4})) == 2.5);
    CHECK(mean_cost(from_energies({-7.25})) == -7.25);
    CHECK_THROWS_AS(mean_cost(SampleSet{}), DomainError);
}

TEST_CASE("CVaR keeps the best fraction") {
    CHECK(cvar_cost(from_energies({4, 1, 3, 2}), 0.25) == 1.0);
    CHECK(cvar_cost(from_energies({8, 7, 6, 5, 4, 3, 2, 1}), 0.25) == 1.5);
    CHECK(cvar_cost(from_energies({3, 5}), 0.25) == 3.0);
    CHECK(cvar_cost(from_energies({1, 2, 3, 4}), 1.0) == 2.5);
    CHECK_THROWS_AS(cvar_cost(from_energies({1}), 0.0), DomainError);
    CHECK_THROWS_AS(cvar_cost(from_energies({1}), 1.5), DomainError);
    CHECK_THROWS_AS(CostKind::cvar(-0.1), DomainError);
}

TEST_CASE("CVaR order statistics on random sets") {
    Rng rng(9);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t M = 1 + rng() % 40;
        std::vector<double> e(M);
        for (auto &v : e) {
            v = std::round(standard_normal(rng) * 4) / 4;
        }
        const auto s = from_energies(e);
        const double mean = mean_cost(s);
        CHECK(cvar_cost(s, 1.0) == mean);
        const double cv = cvar_cost(s, 0.25);
        CHECK(cv <= mean + 1e-12);
        CHECK(*std::min_element(e.begin(), e.end()) <= cv + 1e-12);
        CHECK(cost(s, CostKind::cvar(0.25)) == cv);
    }
}

TEST_CASE("uniform QAOA state samples the table mean") {
    const auto p = make_problem(make_ferromagnetic(6));
    const auto spec = AnsatzSpec::qaoa(p, 1);
    Rng rng(1);
    EvalContext ctx{&rng};
    const std::size_t M = 100000;
    const auto ev = evaluate(spec, ParamVector{0.0, 0.0}, *p, M, CostKind::mean(), ctx);
    CHECK(ev.samples.shots_spent() == M);
    const double se = table_stddev(p->energies) / std::sqrt(static_cast<double>(M));
    CHECK(std::abs(ev.cost - table_mean(p->energies)) < 4 * se);
}

TEST_CASE("VQE at zero angles only samples the all-zero string") {
    const auto p = make_problem(make_ferromagnetic(4));
    Rng rng(1);
    EvalContext ctx{&rng};
    const auto ev = evaluate(AnsatzSpec::vqe(4, 1), ParamVector(8, 0.0), *p, 50, CostKind::cvar(0.25), ctx);
    CHECK(ev.cost == Approx(-2.8).margin(1e-12));
    for (const auto &s : ev.samples.entries()) {
        CHECK(s.x.value == 0U);
    }
}

TEST_CASE("single-shot cost equals the sampled energy") {
    const auto p = make_problem(make_disordered(5, 1));
    const auto spec = AnsatzSpec::qaoa(p, 2);
    Rng rng(3);
    EvalContext ctx{&rng};
    for (int i = 0; i < 20; ++i) {
        const auto th = init_random(spec, rng);
        for (auto kind : {CostKind::mean(), CostKind::cvar(0.25)}) {
            const auto ev = evaluate(spec, th, *p, 1, kind, ctx);
            CHECK(ev.cost == ev.samples.entries()[0].energy);
            CHECK(ev.cost == p->energies[ev.samples.entries()[0].x.value]);
        }
    }
}

TEST_CASE("exact parameter-shift gradient matches finite differences") {
    const auto p = make_problem(make_ferromagnetic(4));
    const auto spec = AnsatzSpec::vqe(4, 1);
    Rng rng(5);
    EvalContext ctx{&rng};
    for (int trial = 0; trial < 20; ++trial) {
        const auto th = init_random(spec, rng);
        const auto g = grad_param_shift(spec, th, *p, kExactExpectation, ctx);
        CHECK(g.shots_spent == 0);
        for (std::size_t n = 0; n < th.size(); ++n) {
            const auto f = [&](double v) {
                ParamVector t = th;
                t[n] = v;
                return exact_cost(spec, t, *p);
            };
            const double fd = (f(th[n] + 1e-6) - f(th[n] - 1e-6)) / 2e-6;
            CHECK(g.gradient[n] == Approx(fd).margin(1e-6));
        }
    }
}

TEST_CASE("parameter shift rejects QAOA and counts shots") {
    const auto p = make_problem(make_ferromagnetic(4));
    Rng rng(0);
    EvalContext ctx{&rng};
    CHECK_THROWS_AS(grad_param_shift(AnsatzSpec::qaoa(p, 1), ParamVector{0.1, 0.2}, *p, 8, ctx),
                    DomainError);
    ShotCounter counter;
    ctx.counter = &counter;
    const auto g = grad_param_shift(AnsatzSpec::vqe(4, 1), ParamVector(8, 0.3), *p, 8, ctx);
    CHECK(g.shots_spent == 128);
    CHECK(counter.draws == 128);
    CHECK(g.samples.size() == 16);
}

TEST_CASE("zero-variance parameter-shift component at one shot") {
    // Shifting theta_0 = pi/2 by +-pi/2 prepares |11> or |00>, both basis states.
    const auto p = make_problem(make_ferromagnetic(2));
    const auto spec = AnsatzSpec::vqe(2, 1);
    const ParamVector th{std::numbers::pi / 2, 0.0, 0.0, 0.0};
    Rng rng(0);
    EvalContext ctx{&rng};
    const auto g = grad_param_shift(spec, th, *p, 1, ctx);
    const auto exact = grad_param_shift(spec, th, *p, kExactExpectation, ctx);
    CHECK(g.gradient[0] == Approx(exact.gradient[0]).margin(1e-12));
}

TEST_CASE("exact finite differences match a Richardson oracle for QAOA") {
    const auto p = make_problem(make_disordered(4, 2));
    const auto spec = AnsatzSpec::qaoa(p, 2);
    Rng rng(6);
    EvalContext ctx{&rng};
    for (int trial = 0; trial < 10; ++trial) {
        const auto th = init_random(spec, rng);
        const auto g = grad_finite_diff(spec, th, *p, 1e-6, kExactExpectation, ctx);
        for (std::size_t n = 0; n < th.size(); ++n) {
            const auto f = [&](double v) {
                ParamVector t = th;
                t[n] = v;
                return exact_cost(spec, t, *p);
            };
            CHECK(g.gradient[n] == Approx(richardson(f, th[n], 1e-3)).margin(1e-5));
        }
    }
    CHECK_THROWS_AS(grad_finite_diff(spec, ParamVector(4, 0.0), *p, 0.0, 4, ctx), DomainError);
}

TEST_CASE("shot-based finite differences are unbiased for the eps-difference") {
    const auto p = make_problem(make_ferromagnetic(4));
    const auto spec = AnsatzSpec::qaoa(p, 1);
    const ParamVector th{0.4, 0.7};
    Rng rng(8);
    EvalContext ctx{&rng};
    const auto exact = grad_finite_diff(spec, th, *p, 0.5, kExactExpectation, ctx);
    const int n = 10000;
    std::vector<double> sum(2, 0.0), sum2(2, 0.0);
    for (int i = 0; i < n; ++i) {
        const auto g = grad_finite_diff(spec, th, *p, 0.5, 4, ctx);
        for (std::size_t k = 0; k < 2; ++k) {
            sum[k] += g.gradient[k];
            sum2[k] += g.gradient[k] * g.gradient[k];
        }
    }
    for (std::size_t k = 0; k < 2; ++k) {
        const double mean = sum[k] / n;
        const double se = std::sqrt((sum2[k] / n - mean * mean) / n);
        CHECK(std::abs(mean - exact.gradient[k]) < 4 * se);
    }
}

TEST_CASE("doubling gradient shots halves the variance") {
    const auto p = make_problem(make_ferromagnetic(4));
    const auto spec = AnsatzSpec::qaoa(p, 1);
    const ParamVector th{0.4, 0.7};
    Rng rng(12);
    EvalContext ctx{&rng};
    auto variance = [&](std::size_t shots) {
        double s = 0.0, s2 = 0.0;
        const int n = 500;
        for (int i = 0; i < n; ++i) {
            const double v = grad_finite_diff(spec, th, *p, 0.5, shots, ctx).gradient[0];
            s += v;
            s2 += v * v;
        }
        return s2 / n - (s / n) * (s / n);
    };
    const double ratio = variance(8) / variance(16);
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.7);
}

TEST_CASE("minimum tracking") {
    const auto p = make_problem(make_ferromagnetic(3));
    MinimumTracker t;
    t.observe(SampleSet({Shot{BitString{1}, 3.0}, Shot{BitString{2}, 4.0}}, 2), *p);
    t.observe(SampleSet({Shot{BitString{1}, 5.0}, Shot{BitString{2}, 6.0}}, 2), *p);
    CHECK(t.f_min() == 3.0);
    CHECK_FALSE(t.hit());
    CHECK(t.cumulative_shots() == 4);
    t.observe(SampleSet::score(std::vector<BitString>{BitString{0}, BitString{7}}, *p), *p);
    REQUIRE(t.hit());
    CHECK(*t.first_hit_calls() == 6);
    CHECK(t.f_min() == Approx(p->ground.minimum_energy));
}

TEST_CASE("noisy evaluation splits shots over trajectories") {
    const auto p = make_problem(make_ferromagnetic(3));
    const auto spec = AnsatzSpec::qaoa(p, 1);
    const NoiseModel noise;
    Rng rng(2);
    ShotCounter counter;
    EvalContext ctx{&rng, &counter, &noise, 4};
    const auto ev = evaluate(spec, ParamVector{0.3, 0.2}, *p, 10, CostKind::mean(), ctx);
    CHECK(ev.samples.size() == 10);
    CHECK(counter.draws == 10);
}

TEST_CASE("sample CSV export") {
    std::ostringstream os;
    write_samples_csv(os, SampleSet({Shot{BitString{10}, -1.5}}, 1));
    CHECK(os.str() == "shot_index,bitstring_hex,energy\n0,0xa,-1.5\n");
}
