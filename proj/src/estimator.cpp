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
#include "vqopt/estimator.hpp"

#include "vqopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace vqopt {

SampleSet::SampleSet(std::vector<Shot> entries, std::uint64_t shots_spent)
    : entries_(std::move(entries)), shots_spent_(shots_spent) {
    if (shots_spent_ < entries_.size()) {
        throw IntegrityError("sample set reports fewer shots spent than it holds");
    }
}

SampleSet SampleSet::score(std::span<const BitString> shots, const Problem &problem) {
    std::vector<Shot> entries;
    entries.reserve(shots.size());
    for (auto x : shots) {
        if (x.value >= problem.energies.size()) {
            throw DomainError("shot outside the problem's configuration space");
        }
        entries.push_back(Shot{x, problem.energies[x.value]});
    }
    return SampleSet(std::move(entries), shots.size());
}

std::optional<std::size_t> SampleSet::first_hit(const Problem &problem) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (problem.hits(entries_[i].x)) {
            return i;
        }
    }
    return std::nullopt;
}

CostKind CostKind::cvar(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("CVaR fraction must lie in (0, 1]");
    }
    return CostKind{alpha};
}

double mean_cost(const SampleSet &samples) {
    if (samples.empty()) {
        throw DomainError("cost of an empty sample set");
    }
    double s = 0.0;
    for (const auto &e : samples.entries()) {
        s += e.energy;
    }
    return s / static_cast<double>(samples.size());
}

double cvar_cost(const SampleSet &samples, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("CVaR fraction must lie in (0, 1]");
    }
    if (samples.empty()) {
        throw DomainError("cost of an empty sample set");
    }
    if (alpha == 1.0) {
        return mean_cost(samples);
    }
    std::vector<Shot> sorted(samples.entries().begin(), samples.entries().end());
    const auto kept = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(alpha * static_cast<double>(sorted.size()))));
    const auto by_energy = [](const Shot &a, const Shot &b) {
        return a.energy < b.energy || (a.energy == b.energy && a.x < b.x);
    };
    std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(kept),
                      sorted.end(), by_energy);
    double s = 0.0;
    for (std::size_t i = 0; i < kept; ++i) {
        s += sorted[i].energy;
    }
    return s / static_cast<double>(kept);
}

double cost(const SampleSet &samples, CostKind kind) {
    return kind.is_mean() ? mean_cost(samples) : cvar_cost(samples, kind.alpha);
}

Rng &EvalContext::random() const {
    if (rng == nullptr) {
        throw DomainError("shot-based evaluation needs a random number generator");
    }
    return *rng;
}

namespace {

void check_problem(const AnsatzSpec &spec, const Problem &problem) {
    if (spec.num_qubits() != problem.size()) {
        throw DomainError("ansatz acts on " + std::to_string(spec.num_qubits()) +
                          " qubits but the problem has " + std::to_string(problem.size()) +
                          " spins");
    }
}

} // namespace

SampleSet sample_circuit(const AnsatzSpec &spec, std::span<const double> theta,
                         const Problem &problem, std::size_t shots, EvalContext &ctx) {
    check_problem(spec, problem);
    if (shots == 0) {
        throw DomainError("evaluation needs at least one shot");
    }
    Rng &rng = ctx.random();
    if (ctx.noise == nullptr) {
        const StateVector psi = prepare_state(spec, theta);
        const auto xs = sample_shots(psi, shots, rng, ctx.counter);
        return SampleSet::score(xs, problem);
    }
    const std::size_t trajectories = std::clamp<std::size_t>(ctx.max_trajectories, 1, shots);
    std::vector<BitString> xs;
    xs.reserve(shots);
    for (std::size_t t = 0; t < trajectories; ++t) {
        const std::size_t share = shots / trajectories + (t < shots % trajectories ? 1 : 0);
        const StateVector psi = prepare_state(spec, theta, *ctx.noise, rng);
        const auto part = sample_shots(psi, share, rng, ctx.counter);
        xs.insert(xs.end(), part.begin(), part.end());
    }
    return SampleSet::score(xs, problem);
}

Evaluation evaluate(const AnsatzSpec &spec, std::span<const double> theta, const Problem &problem,
                    std::size_t shots, CostKind kind, EvalContext &ctx) {
    Evaluation ev;
    ev.samples = sample_circuit(spec, theta, problem, shots, ctx);
    ev.cost = cost(ev.samples, kind);
    return ev;
}

double exact_cost(const AnsatzSpec &spec, std::span<const double> theta, const Problem &problem) {
    check_problem(spec, problem);
    return expectation_diagonal(prepare_state(spec, theta), problem.energies);
}

namespace {

GradientEstimate central_difference(const AnsatzSpec &spec, std::span<const double> theta,
                                    const Problem &problem, double shift, double scale,
                                    ShotBudget shots, EvalContext &ctx) {
    const std::size_t n = theta.size();
    GradientEstimate g;
    g.gradient.assign(n, 0.0);
    if (shots) {
        g.samples.reserve(2 * n);
    }
    ParamVector shifted(theta.begin(), theta.end());
    for (std::size_t k = 0; k < n; ++k) {
        double values[2];
        for (int side = 0; side < 2; ++side) {
            shifted[k] = theta[k] + (side == 0 ? shift : -shift);
            if (shots) {
                auto s = sample_circuit(spec, shifted, problem, *shots, ctx);
                values[side] = mean_cost(s);
                g.shots_spent += s.shots_spent();
                g.samples.push_back(std::move(s));
            } else {
                values[side] = exact_cost(spec, shifted, problem);
            }
        }
        shifted[k] = theta[k];
        g.gradient[k] = (values[0] - values[1]) * scale;
    }
    return g;
}

} // namespace

GradientEstimate grad_param_shift(const AnsatzSpec &spec, std::span<const double> theta,
                                  const Problem &problem, ShotBudget shots, EvalContext &ctx) {
    if (spec.family() != AnsatzFamily::VqeRyCnot) {
        throw DomainError("the parameter-shift rule applies only to the RY-CNOT ansatz");
    }
    if (theta.size() != spec.n_params()) {
        throw DomainError("parameter vector length does not match the ansatz");
    }
    return central_difference(spec, theta, problem, std::numbers::pi / 2, 0.5, shots, ctx);
}

GradientEstimate grad_finite_diff(const AnsatzSpec &spec, std::span<const double> theta,
                                  const Problem &problem, double eps, ShotBudget shots,
                                  EvalContext &ctx) {
    if (!(eps > 0.0)) {
        throw DomainError("finite-difference step must be positive");
    }
    if (theta.size() != spec.n_params()) {
        throw DomainError("parameter vector length does not match the ansatz");
    }
    return central_difference(spec, theta, problem, eps, 0.5 / eps, shots, ctx);
}

void MinimumTracker::observe(const SampleSet &samples, const Problem &problem) {
    for (const auto &e : samples.entries()) {
        f_min_ = std::min(f_min_, e.energy);
    }
    if (!first_hit_) {
        if (auto i = samples.first_hit(problem)) {
            first_hit_ = cumulative_ + *i + 1;
        }
    }
    cumulative_ += samples.shots_spent();
}

void write_samples_csv(std::ostream &os, const SampleSet &samples) {
    os << "shot_index,bitstring_hex,energy\n";
    char buf[96];
    std::size_t i = 0;
    for (const auto &e : samples.entries()) {
        std::snprintf(buf, sizeof(buf), "%zu,0x%x,%.17g\n", i++, e.x.value, e.energy);
        os << buf;
    }
}

} // namespace vqopt
