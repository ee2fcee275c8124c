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
#include "vqopt/optimizer.hpp"

#include "vqopt/errors.hpp"
#include "vqopt/trust_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vqopt {

void validate(const OptimizerConfig &cfg) {
    std::visit(
        [](const auto &c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, TrustRegionConfig>) {
                TrustRegionOptions{c.initial_radius, c.final_radius, 1}.validate();
            } else if constexpr (std::is_same_v<T, HillClimbConfig>) {
                if (!(c.step_norm > 0.0) || !std::isfinite(c.step_norm)) {
                    throw DomainError("hill-climb step norm W must be positive");
                }
            } else {
                if (!(c.learning_rate > 0.0) || !std::isfinite(c.learning_rate)) {
                    throw DomainError("learning rate must be positive");
                }
                if (c.method == GradientMethod::FiniteDiff && !(c.epsilon > 0.0)) {
                    throw DomainError("finite-difference step must be positive");
                }
                if (c.shots_per_circuit && *c.shots_per_circuit == 0) {
                    throw DomainError("gradient circuits need at least one shot");
                }
            }
        },
        cfg);
}

std::string optimizer_name(const OptimizerConfig &cfg) {
    switch (cfg.index()) {
    case 0:
        return "cobyla";
    case 1:
        return "hill-climb";
    default:
        return "gradient-descent";
    }
}

std::uint64_t RunTrace::total_calls() const {
    return records.empty() ? 0 : records.back().n_calls;
}

bool RunTrace::success_at(std::size_t n) const {
    return first_hit_iteration.has_value() && *first_hit_iteration <= n;
}

std::uint64_t RunTrace::calls_at(std::size_t n) const {
    if (records.empty()) {
        return 0;
    }
    return records[std::min(n, records.size() - 1)].n_calls;
}

std::optional<bool> RunTrace::probe_at(std::size_t n) const {
    for (const auto &p : probes) {
        if (p.iteration == n) {
            return p.hit;
        }
    }
    return std::nullopt;
}

ParamVector step_hill_climb(std::span<const double> theta, double W, Rng &rng) {
    if (!(W > 0.0)) {
        throw DomainError("hill-climb step norm W must be positive");
    }
    ParamVector delta(theta.size());
    double norm = 0.0;
    while (norm == 0.0) {
        double s = 0.0;
        for (auto &v : delta) {
            v = standard_normal(rng);
            s += v * v;
        }
        norm = std::sqrt(s);
    }
    ParamVector out(theta.begin(), theta.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += W * delta[i] / norm;
    }
    return out;
}

ParamVector step_gradient_descent(std::span<const double> theta, std::span<const double> gradient,
                                  double eta) {
    if (theta.size() != gradient.size()) {
        throw DomainError("gradient length does not match the parameter vector");
    }
    ParamVector out(theta.begin(), theta.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] -= eta * gradient[i];
    }
    return out;
}

namespace {

class RunState {
  public:
    RunState(const AnsatzSpec &spec, const Problem &problem, const RunOptions &options, Rng &rng,
             ShotCounter *counter, RunObserver *observer)
        : spec_(spec), problem_(problem), options_(options), probe_rng_(rng()),
          ctx_{&rng, counter, options.noise, options.max_trajectories}, observer_(observer) {
        checkpoints_ = options.psucc_checkpoints;
        checkpoints_.push_back(options.n_iter);
        std::sort(checkpoints_.begin(), checkpoints_.end());
        checkpoints_.erase(std::unique(checkpoints_.begin(), checkpoints_.end()),
                           checkpoints_.end());
        checkpoints_.erase(std::remove_if(checkpoints_.begin(), checkpoints_.end(),
                                          [&](std::size_t c) { return c > options.n_iter; }),
                           checkpoints_.end());
    }

    EvalContext &ctx() { return ctx_; }
    [[nodiscard]] std::size_t next_iteration() const { return trace_.records.size(); }

    Evaluation evaluate(std::span<const double> theta) {
        Evaluation ev = vqopt::evaluate(spec_, theta, problem_, options_.shots, options_.cost, ctx_);
        observe(ev.samples);
        return ev;
    }

    void observe(const SampleSet &samples) {
        tracker_.observe(samples, problem_);
        if (tracker_.hit() && !trace_.first_hit_iteration) {
            trace_.first_hit_iteration = next_iteration();
            trace_.first_hit_calls = tracker_.first_hit_calls();
        }
        if (observer_ != nullptr) {
            observer_->on_samples(next_iteration(), samples);
        }
    }

    /// Closes the current iteration; the incumbent is what a probe would sample.
    void record(double cost, std::span<const double> incumbent) {
        IterationRecord r;
        r.iteration = next_iteration();
        r.cost = cost;
        r.f_min = tracker_.f_min();
        r.n_calls = tracker_.cumulative_shots();
        trace_.records.push_back(r);
        while (probe_index_ < checkpoints_.size() && checkpoints_[probe_index_] == r.iteration) {
            probe(r.iteration, incumbent);
        }
    }

    RunTrace finish(std::span<const double> incumbent) {
        while (probe_index_ < checkpoints_.size()) {
            probe(checkpoints_[probe_index_], incumbent);
        }
        trace_.final_theta.assign(incumbent.begin(), incumbent.end());
        trace_.success = tracker_.hit();
        return std::move(trace_);
    }

  private:
    void probe(std::size_t iteration, std::span<const double> incumbent) {
        EvalContext pctx = ctx_;
        pctx.rng = &probe_rng_;
        const SampleSet s = sample_circuit(spec_, incumbent, problem_, options_.shots, pctx);
        trace_.probes.push_back(ProbeOutcome{iteration, s.first_hit(problem_).has_value()});
        trace_.probe_shots += s.shots_spent();
        ++probe_index_;
    }

    const AnsatzSpec &spec_;
    const Problem &problem_;
    const RunOptions &options_;
    Rng probe_rng_;
    EvalContext ctx_;
    RunObserver *observer_;
    MinimumTracker tracker_;
    RunTrace trace_;
    std::vector<std::size_t> checkpoints_;
    std::size_t probe_index_ = 0;
};

RunTrace run_trust_region(RunState &state, const TrustRegionConfig &cfg, const RunOptions &options,
                          std::span<const double> theta0) {
    std::size_t iterations = options.n_iter;
    if (cfg.max_iter > 0) {
        iterations = std::min(iterations, cfg.max_iter);
    }
    ParamVector incumbent(theta0.begin(), theta0.end());
    double best = std::numeric_limits<double>::infinity();
    const Objective objective = [&](std::span<const double> x) {
        const Evaluation ev = state.evaluate(x);
        if (ev.cost < best) {
            best = ev.cost;
            incumbent.assign(x.begin(), x.end());
        }
        state.record(ev.cost, incumbent);
        return ev.cost;
    };
    TrustRegionOptions tro{cfg.initial_radius, cfg.final_radius, iterations + 1};
    minimize_trust_region(objective, theta0, tro);
    return state.finish(incumbent);
}

RunTrace run_hill_climb(RunState &state, const HillClimbConfig &cfg, const RunOptions &options,
                        std::span<const double> theta0) {
    ParamVector theta(theta0.begin(), theta0.end());
    double current = state.evaluate(theta).cost;
    state.record(current, theta);
    for (std::size_t i = 1; i <= options.n_iter; ++i) {
        ParamVector proposal = step_hill_climb(theta, cfg.step_norm, state.ctx().random());
        const double c = state.evaluate(proposal).cost;
        if (c < current) {
            current = c;
            theta = std::move(proposal);
        }
        state.record(c, theta);
    }
    return state.finish(theta);
}

RunTrace run_gradient_descent(RunState &state, const AnsatzSpec &spec, const Problem &problem,
                              const GradientDescentConfig &cfg, const RunOptions &options,
                              std::span<const double> theta0) {
    ParamVector theta(theta0.begin(), theta0.end());
    state.record(state.evaluate(theta).cost, theta);
    const ShotBudget shots = cfg.exact_gradient
                                 ? kExactExpectation
                                 : ShotBudget(cfg.shots_per_circuit.value_or(options.shots));
    for (std::size_t i = 1; i <= options.n_iter; ++i) {
        GradientEstimate g =
            cfg.method == GradientMethod::ParamShift
                ? grad_param_shift(spec, theta, problem, shots, state.ctx())
                : grad_finite_diff(spec, theta, problem, cfg.epsilon, shots, state.ctx());
        double cost = 0.0;
        std::size_t count = 0;
        for (const auto &s : g.samples) {
            state.observe(s);
            for (const auto &e : s.entries()) {
                cost += e.energy;
            }
            count += s.size();
        }
        theta = step_gradient_descent(theta, g.gradient, cfg.learning_rate);
        // Exact mode has no samples; report the exact cost after the step.
        cost = count > 0 ? cost / static_cast<double>(count) : exact_cost(spec, theta, problem);
        state.record(cost, theta);
    }
    return state.finish(theta);
}

} // namespace

RunTrace run(const AnsatzSpec &spec, const Problem &problem, const OptimizerConfig &cfg,
             const RunOptions &options, std::span<const double> theta0, Rng &rng,
             ShotCounter *counter, RunObserver *observer) {
    validate(cfg);
    if (theta0.size() != spec.n_params()) {
        throw DomainError("initial parameters have length " + std::to_string(theta0.size()) +
                          ", the ansatz needs " + std::to_string(spec.n_params()));
    }
    if (spec.num_qubits() != problem.size()) {
        throw DomainError("ansatz and problem sizes differ");
    }
    if (options.shots == 0) {
        throw DomainError("shots per evaluation must be positive");
    }
    if (const auto *gd = std::get_if<GradientDescentConfig>(&cfg)) {
        if (gd->method == GradientMethod::ParamShift && spec.family() != AnsatzFamily::VqeRyCnot) {
            throw DomainError("the parameter-shift rule applies only to the RY-CNOT ansatz");
        }
    }
    RunState state(spec, problem, options, rng, counter, observer);
    return std::visit(
        [&](const auto &c) -> RunTrace {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, TrustRegionConfig>) {
                return run_trust_region(state, c, options, theta0);
            } else if constexpr (std::is_same_v<T, HillClimbConfig>) {
                return run_hill_climb(state, c, options, theta0);
            } else {
                return run_gradient_descent(state, spec, problem, c, options, theta0);
            }
        },
        cfg);
}

} // namespace vqopt
