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
#include "vqopt/experiment.hpp"

#include "vqopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace vqopt {

std::string to_string(InitKind kind) {
    switch (kind) {
    case InitKind::Random:
        return "random";
    case InitKind::LinearSchedule:
        return "linear";
    case InitKind::Zero:
        return "zero";
    }
    return "random";
}

InitKind init_kind_from_string(const std::string &name) {
    if (name == "random") {
        return InitKind::Random;
    }
    if (name == "linear") {
        return InitKind::LinearSchedule;
    }
    if (name == "zero") {
        return InitKind::Zero;
    }
    throw DomainError("unknown initialization '" + name + "' (expected random, linear or zero)");
}

void ProblemSetup::validate() const {
    if (L < 2 || L > kMaxQubits) {
        throw CapacityError("chain length must lie in [2, " + std::to_string(kMaxQubits) + "]");
    }
    if (depth < 1) {
        throw DomainError("circuit depth must be at least 1");
    }
    if (instance == InstanceKind::Custom) {
        throw DomainError("sweeps support ferromagnetic and disordered instances only");
    }
    if (instance == InstanceKind::Disordered && disorder_seeds.empty()) {
        throw DomainError("a disordered setup needs at least one disorder seed");
    }
    if (init == InitKind::LinearSchedule && family != AnsatzFamily::Qaoa) {
        throw DomainError("the linear schedule initializes QAOA parameters only");
    }
    if (init == InitKind::Random && !(init_high > init_low)) {
        throw DomainError("random initialization range must be non-empty");
    }
    if (noise) {
        noise->validate();
    }
    vqopt::validate(optimizer);
    if (const auto *gd = std::get_if<GradientDescentConfig>(&optimizer)) {
        if (gd->method == GradientMethod::ParamShift && family != AnsatzFamily::VqeRyCnot) {
            throw DomainError("the parameter-shift rule applies only to the RY-CNOT ansatz");
        }
    }
}

std::size_t ProblemSetup::instance_count() const {
    return instance == InstanceKind::Disordered ? disorder_seeds.size() : 1;
}

std::vector<ProblemPtr> ProblemSetup::problems() const {
    std::vector<ProblemPtr> out;
    if (instance == InstanceKind::Disordered) {
        for (auto seed : disorder_seeds) {
            out.push_back(make_problem(make_disordered(L, seed)));
        }
    } else {
        out.push_back(make_problem(make_ferromagnetic(L)));
    }
    return out;
}

AnsatzSpec ProblemSetup::ansatz(const ProblemPtr &problem) const {
    return family == AnsatzFamily::Qaoa ? AnsatzSpec::qaoa(problem, depth)
                                        : AnsatzSpec::vqe(L, depth);
}

ParamVector ProblemSetup::initial_parameters(const AnsatzSpec &spec, Rng &rng) const {
    switch (init) {
    case InitKind::Random:
        return init_random(spec, rng, init_low, init_high);
    case InitKind::LinearSchedule:
        return init_linear_schedule(depth, dt);
    case InitKind::Zero:
        break;
    }
    return ParamVector(spec.n_params(), 0.0);
}

std::uint64_t ProblemSetup::nominal_calls(std::size_t shots, std::size_t n_iter) const {
    const std::uint64_t M = shots;
    return std::visit(
        [&](const auto &c) -> std::uint64_t {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, GradientDescentConfig>) {
                if (c.exact_gradient) {
                    return M;
                }
                const std::uint64_t n_par =
                    family == AnsatzFamily::Qaoa ? 2 * depth : L * (depth + 1);
                return M + n_iter * 2 * n_par * c.shots_per_circuit.value_or(shots);
            } else if constexpr (std::is_same_v<T, TrustRegionConfig>) {
                const std::size_t n = c.max_iter > 0 ? std::min(n_iter, c.max_iter) : n_iter;
                return (n + 1) * M;
            } else {
                return (n_iter + 1) * M;
            }
        },
        optimizer);
}

SweepGrid SweepGrid::defaults() {
    SweepGrid g;
    for (std::size_t p = 1; p <= 12; ++p) {
        g.shots.push_back(std::size_t{1} << p);
    }
    g.n_iters = {5, 10, 20, 40, 80, 160, 320};
    return g;
}

void SweepGrid::validate() const {
    if (shots.empty() || n_iters.empty()) {
        throw DomainError("sweep grid must contain at least one shot count and one n_iter");
    }
    for (auto m : shots) {
        if (m == 0) {
            throw DomainError("grid shot counts must be positive");
        }
    }
    if (max_calls && *max_calls == 0) {
        throw DomainError("max_calls must be positive");
    }
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) {
        return {0.0, 1.0};
    }
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double percentile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw DomainError("percentile of an empty set");
    }
    std::sort(values.begin(), values.end());
    const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

const SweepCell *SweepResult::cell(std::size_t shots, std::size_t n_iter) const {
    for (const auto &c : cells) {
        if (c.shots == shots && c.n_iter == n_iter) {
            return &c;
        }
    }
    return nullptr;
}

namespace {

struct Job {
    std::size_t instance;
    std::size_t column; // index into grid.shots
    std::size_t repetition;
};

/// Median and band of per-instance fractions.
struct Aggregate {
    double value;
    Band band;
};

Aggregate aggregate(const std::vector<std::size_t> &successes, std::size_t trials) {
    if (successes.size() == 1) {
        const Interval w = wilson_interval(successes[0], trials);
        return {static_cast<double>(successes[0]) / static_cast<double>(trials), {w.lower, w.upper}};
    }
    std::vector<double> fractions;
    fractions.reserve(successes.size());
    for (auto s : successes) {
        fractions.push_back(static_cast<double>(s) / static_cast<double>(trials));
    }
    return {percentile(fractions, 50.0), {percentile(fractions, 25.0), percentile(fractions, 75.0)}};
}

template <class F> void parallel_for(std::size_t count, std::size_t threads, F &&body) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(count);
                return;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace

SweepResult success_sweep(const ProblemSetup &setup, const SweepGrid &grid,
                          const SweepOptions &options) {
    setup.validate();
    grid.validate();
    if (options.repetitions == 0) {
        throw DomainError("repetitions must be at least 1");
    }
    const auto problems = setup.problems();
    const std::size_t R = options.repetitions;

    std::vector<std::size_t> n_iters = grid.n_iters;
    std::sort(n_iters.begin(), n_iters.end());
    n_iters.erase(std::unique(n_iters.begin(), n_iters.end()), n_iters.end());
    const std::size_t n_max = n_iters.back();

    // Per shot count, the longest run that respects max_calls (or none).
    std::vector<std::optional<std::size_t>> horizon(grid.shots.size());
    for (std::size_t c = 0; c < grid.shots.size(); ++c) {
        const std::size_t M = grid.shots[c];
        if (!grid.max_calls) {
            horizon[c] = n_max;
            continue;
        }
        for (std::size_t n = n_max + 1; n-- > 0;) {
            if (setup.nominal_calls(M, n) <= *grid.max_calls) {
                horizon[c] = n;
                break;
            }
        }
    }

    std::vector<Job> jobs;
    for (std::size_t i = 0; i < problems.size(); ++i) {
        for (std::size_t c = 0; c < grid.shots.size(); ++c) {
            if (!horizon[c]) {
                continue;
            }
            for (std::size_t r = 0; r < R; ++r) {
                jobs.push_back(Job{i, c, r});
            }
        }
    }

    std::vector<RunSummary> summaries(jobs.size());
    std::mutex sink_mutex;
    std::atomic<bool> cancelled{false};
    const std::optional<NoiseModel> noise = setup.noise;

    parallel_for(jobs.size(), options.threads, [&](std::size_t j) {
        if (options.cancel != nullptr && options.cancel->load()) {
            cancelled.store(true);
            return;
        }
        const Job &job = jobs[j];
        const std::size_t M = grid.shots[job.column];
        const std::size_t horizon_n = *horizon[job.column];
        Rng rng(derive_seed(options.master_seed, {job.instance, M, job.repetition}));
        const AnsatzSpec spec = setup.ansatz(problems[job.instance]);
        const ParamVector theta0 = setup.initial_parameters(spec, rng);

        RunOptions ro;
        ro.shots = M;
        ro.n_iter = horizon_n;
        ro.cost = setup.cost;
        ro.noise = noise ? &*noise : nullptr;
        ro.max_trajectories = setup.max_trajectories;
        for (auto n : n_iters) {
            if (n <= horizon_n) {
                ro.psucc_checkpoints.push_back(n);
            }
        }
        const RunTrace trace =
            run(spec, *problems[job.instance], setup.optimizer, ro, theta0, rng);

        RunSummary &s = summaries[j];
        s.instance = job.instance;
        s.shots = M;
        s.repetition = job.repetition;
        s.iterations = trace.records.size() - 1;
        s.first_hit_iteration = trace.first_hit_iteration;
        s.first_hit_calls = trace.first_hit_calls;
        s.n_calls = trace.total_calls();
        s.probe_shots = trace.probe_shots;
        s.f_min = trace.records.back().f_min;
        s.probes = trace.probes;
        if (options.on_run) {
            std::lock_guard lock(sink_mutex);
            options.on_run(s);
        }
    });
    if (cancelled.load()) {
        throw Cancelled("sweep cancelled");
    }

    SweepResult result;
    result.setup = setup;
    result.grid = grid;
    result.repetitions = R;
    result.master_seed = options.master_seed;
    result.band_kind = problems.size() == 1 ? "wilson95" : "percentile25-75";

    const std::size_t I = problems.size();
    for (std::size_t c = 0; c < grid.shots.size(); ++c) {
        if (!horizon[c]) {
            continue;
        }
        const std::size_t M = grid.shots[c];
        const std::size_t H = *horizon[c];
        // hits[i][n]: runs of instance i whose first hit is at iteration n.
        std::vector<std::vector<std::size_t>> hits(I, std::vector<std::size_t>(H + 1, 0));
        std::vector<std::vector<std::size_t>> probe_hits(I, std::vector<std::size_t>(H + 1, 0));
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            if (jobs[j].column != c) {
                continue;
            }
            const RunSummary &s = summaries[j];
            if (s.first_hit_iteration) {
                ++hits[s.instance][*s.first_hit_iteration];
            }
            for (const auto &p : s.probes) {
                if (p.hit) {
                    ++probe_hits[s.instance][p.iteration];
                }
            }
        }
        std::vector<std::vector<std::size_t>> cumulative(I, std::vector<std::size_t>(H + 1, 0));
        for (std::size_t i = 0; i < I; ++i) {
            std::size_t acc = 0;
            for (std::size_t n = 0; n <= H; ++n) {
                acc += hits[i][n];
                cumulative[i][n] = acc;
            }
        }

        SuccessCurve curve;
        curve.shots = M;
        for (std::size_t n = 0; n <= H; ++n) {
            std::vector<std::size_t> per_instance(I);
            for (std::size_t i = 0; i < I; ++i) {
                per_instance[i] = cumulative[i][n];
            }
            curve.n_calls.push_back(setup.nominal_calls(M, n));
            curve.f_succ.push_back(aggregate(per_instance, R).value);
        }
        result.curves.push_back(std::move(curve));

        for (auto n : n_iters) {
            if (n > H) {
                continue;
            }
            std::vector<std::size_t> f(I), p(I);
            for (std::size_t i = 0; i < I; ++i) {
                f[i] = cumulative[i][n];
                p[i] = probe_hits[i][n];
            }
            const Aggregate fa = aggregate(f, R);
            const Aggregate pa = aggregate(p, R);
            SweepCell cell;
            cell.shots = M;
            cell.n_iter = n;
            cell.repetitions = R;
            cell.n_calls = setup.nominal_calls(M, n);
            cell.f_succ = fa.value;
            cell.f_band = fa.band;
            cell.p_succ = pa.value;
            cell.p_band = pa.band;
            result.cells.push_back(cell);
        }
    }
    return result;
}

OptimalCalls optimal_calls(const SweepResult &sweep, double target) {
    if (!(target >= 0.0 && target <= 1.0)) {
        throw DomainError("target success probability must lie in [0, 1]");
    }
    OptimalCalls best;
    for (const auto &curve : sweep.curves) {
        for (std::size_t n = 0; n < curve.f_succ.size(); ++n) {
            if (curve.f_succ[n] < target) {
                continue;
            }
            const std::uint64_t calls = curve.n_calls[n];
            const bool better =
                !best.reached || calls < best.n_calls ||
                (calls == best.n_calls &&
                 (curve.shots < best.shots || (curve.shots == best.shots && n < best.n_iter)));
            if (better) {
                best = OptimalCalls{true, calls, curve.shots, n, curve.f_succ[n]};
            }
            break; // later checkpoints of this curve only cost more
        }
    }
    return best;
}

OptimalCalls optimal_calls(const ProblemSetup &setup, double target, const SweepGrid &grid,
                           const SweepOptions &options) {
    return optimal_calls(success_sweep(setup, grid, options), target);
}

double ScalingFit::predict(double L) const {
    return a * std::exp2(k * L);
}

ScalingFit fit_scaling(const std::vector<ScalingPoint> &points, std::size_t L_min) {
    std::vector<ScalingPoint> used;
    for (const auto &p : points) {
        if (p.L >= L_min) {
            if (!(p.n_calls > 0.0) || !std::isfinite(p.n_calls)) {
                throw DomainError("scaling points need positive finite n_calls");
            }
            used.push_back(p);
        }
    }
    if (used.size() < 2) {
        throw DomainError("fit needs at least two points with L >= " + std::to_string(L_min));
    }
    double sx = 0.0, sy = 0.0;
    for (const auto &p : used) {
        sx += static_cast<double>(p.L);
        sy += std::log2(p.n_calls);
    }
    const double n = static_cast<double>(used.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto &p : used) {
        const double dx = static_cast<double>(p.L) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log2(p.n_calls) - my);
    }
    if (sxx == 0.0) {
        throw DomainError("fit needs at least two distinct sizes");
    }
    ScalingFit fit;
    fit.points = points;
    fit.L_min = L_min;
    fit.k = sxy / sxx;
    const double intercept = my - fit.k * mx;
    fit.a = std::exp2(intercept);
    for (const auto &p : used) {
        fit.residuals.push_back(std::log2(p.n_calls) -
                                (intercept + fit.k * static_cast<double>(p.L)));
    }
    return fit;
}

double random_search_baseline(std::size_t L, std::uint64_t g, std::uint64_t n_calls) {
    if (L > 63) {
        throw CapacityError("baseline supports L <= 63");
    }
    const std::uint64_t space = std::uint64_t{1} << L;
    if (g < 1 || g > space) {
        throw DomainError("ground-state degeneracy must lie in [1, 2^L]");
    }
    if (n_calls == 0) {
        return 0.0;
    }
    if (g == space) {
        return 1.0;
    }
    const double q = static_cast<double>(g) / static_cast<double>(space);
    return -std::expm1(static_cast<double>(n_calls) * std::log1p(-q));
}

double runtime_bound(double n_calls, double d, double t_gate) {
    if (!(n_calls >= 0.0) || !(d > 0.0) || !(t_gate > 0.0)) {
        throw DomainError("run-time bound needs n_calls >= 0 and positive d, t_gate");
    }
    return n_calls * d * t_gate;
}

double ground_state_probability(const StateVector &state, const Problem &problem) {
    if (state.num_qubits() != problem.size()) {
        throw DomainError("state and problem sizes differ");
    }
    double p = 0.0;
    for (auto x : problem.ground.minimizers) {
        p += std::norm(state[x.value]);
    }
    return p;
}

DepthSweepResult depth_sweep(const DepthSweepOptions &options) {
    if (options.sizes.empty() || options.depths.empty()) {
        throw DomainError("depth sweep needs at least one size and one depth");
    }
    if (options.shots == 0 || options.repetitions == 0) {
        throw DomainError("depth sweep needs positive shots and repetitions");
    }
    if (options.instance == InstanceKind::Disordered && options.disorder_seeds.empty()) {
        throw DomainError("a disordered depth sweep needs at least one disorder seed");
    }
    if (options.instance == InstanceKind::Custom) {
        throw DomainError("depth sweeps support ferromagnetic and disordered instances only");
    }
    DepthSweepResult result;
    result.instance = options.instance;
    result.dt = options.dt;
    result.shots = options.shots;
    result.repetitions = options.repetitions;
    result.master_seed = options.master_seed;

    for (auto L : options.sizes) {
        std::vector<ProblemPtr> problems;
        std::vector<std::uint64_t> seeds;
        if (options.instance == InstanceKind::Disordered) {
            for (auto s : options.disorder_seeds) {
                problems.push_back(make_problem(make_disordered(L, s)));
                seeds.push_back(s);
            }
        } else {
            problems.push_back(make_problem(make_ferromagnetic(L)));
            seeds.push_back(0);
        }
        for (auto d : options.depths) {
            std::vector<double> p_values, f_values;
            std::size_t single_successes = 0;
            for (std::size_t i = 0; i < problems.size(); ++i) {
                const AnsatzSpec spec = AnsatzSpec::qaoa(problems[i], d);
                const StateVector psi = prepare_state(spec, init_linear_schedule(d, options.dt));
                Rng rng(derive_seed(options.master_seed, {L, i, d}));
                const auto xs = sample_shots(psi, options.shots * options.repetitions, rng);
                std::size_t successes = 0;
                for (std::size_t r = 0; r < options.repetitions; ++r) {
                    for (std::size_t m = 0; m < options.shots; ++m) {
                        if (problems[i]->hits(xs[r * options.shots + m])) {
                            ++successes;
                            break;
                        }
                    }
                }
                DepthSweepRow row;
                row.L = L;
                row.depth = d;
                row.instance = i;
                row.disorder_seed = seeds[i];
                row.p_gs = ground_state_probability(psi, *problems[i]);
                row.f_succ =
                    static_cast<double>(successes) / static_cast<double>(options.repetitions);
                row.f_band = wilson_interval(successes, options.repetitions);
                result.rows.push_back(row);
                p_values.push_back(row.p_gs);
                f_values.push_back(row.f_succ);
                single_successes = successes;
            }
            DepthSweepSummary s;
            s.L = L;
            s.depth = d;
            s.p_gs_median = percentile(p_values, 50.0);
            s.f_succ_median = percentile(f_values, 50.0);
            if (problems.size() == 1) {
                const Interval w = wilson_interval(single_successes, options.repetitions);
                s.f_band = {w.lower, w.upper};
            } else {
                s.f_band = {percentile(f_values, 25.0), percentile(f_values, 75.0)};
            }
            result.summary.push_back(s);
        }
    }
    return result;
}

} // namespace vqopt
