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
/**
 * @file
 * Classical outer loops (trust-region DFO, random-direction hill climbing,
 * gradient descent) behind one run() entry point with shot accounting.
 *
 * Every run starts with one M-shot evaluation of theta_0, recorded as
 * iteration 0. Record i then carries the cumulative number of Born draws
 * n_calls: (i + 1) M for the energy-based loops and M + i * 2 n_par M~ for
 * gradient descent.
 */
#pragma once

#include "vqopt/ansatz.hpp"
#include "vqopt/estimator.hpp"
#include "vqopt/ising.hpp"
#include "vqopt/simulator.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace vqopt {

struct TrustRegionConfig {
    double initial_radius = 1.0;
    double final_radius = 1e-4;
    /// Iteration cap in addition to the run's n_iter; 0 means none.
    std::size_t max_iter = 0;

    friend bool operator==(const TrustRegionConfig &, const TrustRegionConfig &) = default;
};

struct HillClimbConfig {
    /// Norm of every proposed step.
    double step_norm = 0.03;

    friend bool operator==(const HillClimbConfig &, const HillClimbConfig &) = default;
};

enum class GradientMethod { ParamShift, FiniteDiff };

struct GradientDescentConfig {
    double learning_rate = 0.1;
    GradientMethod method = GradientMethod::ParamShift;
    double epsilon = 0.5; ///< finite-difference step
    /// Shots per gradient circuit (M~); defaults to the run's M.
    std::optional<std::size_t> shots_per_circuit;
    /// Use exact expectations for the gradient; draws no shots for it.
    bool exact_gradient = false;

    friend bool operator==(const GradientDescentConfig &, const GradientDescentConfig &) = default;
};

using OptimizerConfig = std::variant<TrustRegionConfig, HillClimbConfig, GradientDescentConfig>;

void validate(const OptimizerConfig &cfg);
std::string optimizer_name(const OptimizerConfig &cfg);

struct RunOptions {
    std::size_t shots = 64; ///< M: shots per cost evaluation
    std::size_t n_iter = 0;
    CostKind cost = CostKind::mean();
    const NoiseModel *noise = nullptr;
    std::size_t max_trajectories = 16;
    /// Iterations at which a fresh M-shot sample of the incumbent is drawn
    /// for P_succ; n_iter is always probed.
    std::vector<std::size_t> psucc_checkpoints;
};

struct IterationRecord {
    std::size_t iteration = 0;
    double cost = 0.0;
    double f_min = 0.0;
    std::uint64_t n_calls = 0;

    friend bool operator==(const IterationRecord &, const IterationRecord &) = default;
};

struct ProbeOutcome {
    std::size_t iteration = 0;
    bool hit = false;

    friend bool operator==(const ProbeOutcome &, const ProbeOutcome &) = default;
};

struct RunTrace {
    std::vector<IterationRecord> records;
    std::optional<std::uint64_t> first_hit_calls;
    std::optional<std::size_t> first_hit_iteration;
    ParamVector final_theta;
    bool success = false;
    /// Sorted by iteration; the last entry is the terminal P_succ outcome.
    std::vector<ProbeOutcome> probes;
    std::uint64_t probe_shots = 0;

    [[nodiscard]] std::uint64_t total_calls() const;
    /// Success within the first n iterations.
    [[nodiscard]] bool success_at(std::size_t n) const;
    /// Cumulative shots after n iterations (the last record if the
    /// optimizer stopped earlier).
    [[nodiscard]] std::uint64_t calls_at(std::size_t n) const;
    [[nodiscard]] std::optional<bool> probe_at(std::size_t n) const;

    friend bool operator==(const RunTrace &, const RunTrace &) = default;
};

/// Optional instrumentation: sample sets are forwarded here as they are drawn.
struct RunObserver {
    virtual ~RunObserver() = default;
    virtual void on_samples(std::size_t iteration, const SampleSet &samples) = 0;
};

/// Runs the optimizer for n_iter iterations from theta0. The probe sample
/// stream is split from rng before anything else is drawn, so probes do not
/// perturb the optimization trajectory.
RunTrace run(const AnsatzSpec &spec, const Problem &problem, const OptimizerConfig &cfg,
             const RunOptions &options, std::span<const double> theta0, Rng &rng,
             ShotCounter *counter = nullptr, RunObserver *observer = nullptr);

/// theta + Delta with Delta uniform on the sphere of radius W.
ParamVector step_hill_climb(std::span<const double> theta, double W, Rng &rng);

ParamVector step_gradient_descent(std::span<const double> theta, std::span<const double> gradient,
                                  double eta);

} // namespace vqopt
