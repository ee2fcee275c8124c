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
 * Measurement protocols: success-probability sweeps over (M, n_iter)
 * grids, optimal n_calls*, exponential scaling fits, the random-search
 * baseline, the run-time bound, and the linear-schedule depth sweep.
 */
#pragma once

#include "vqopt/ansatz.hpp"
#include "vqopt/errors.hpp"
#include "vqopt/estimator.hpp"
#include "vqopt/ising.hpp"
#include "vqopt/optimizer.hpp"
#include "vqopt/simulator.hpp"

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vqopt {

enum class InitKind { Random, LinearSchedule, Zero };

std::string to_string(InitKind kind);
InitKind init_kind_from_string(const std::string &name);

/// Everything that defines one optimization problem and how runs start.
struct ProblemSetup {
    AnsatzFamily family = AnsatzFamily::Qaoa;
    std::size_t L = 6;
    std::size_t depth = 2;
    InstanceKind instance = InstanceKind::Ferromagnetic;
    /// Disorder realizations; ferromagnetic setups use a single instance.
    std::vector<std::uint64_t> disorder_seeds;
    InitKind init = InitKind::Random;
    double init_low = kDefaultInitLow;
    double init_high = kDefaultInitHigh;
    double dt = 0.8; ///< linear-schedule total time
    OptimizerConfig optimizer = TrustRegionConfig{};
    CostKind cost = CostKind::mean();
    std::optional<NoiseModel> noise;
    std::size_t max_trajectories = 16;

    void validate() const;
    [[nodiscard]] std::size_t instance_count() const;
    [[nodiscard]] std::vector<ProblemPtr> problems() const;
    [[nodiscard]] AnsatzSpec ansatz(const ProblemPtr &problem) const;
    [[nodiscard]] ParamVector initial_parameters(const AnsatzSpec &spec, Rng &rng) const;
    /// n_calls after n iterations when the optimizer uses its whole budget.
    [[nodiscard]] std::uint64_t nominal_calls(std::size_t shots, std::size_t n_iter) const;

    friend bool operator==(const ProblemSetup &, const ProblemSetup &) = default;
};

struct SweepGrid {
    std::vector<std::size_t> shots;
    std::vector<std::size_t> n_iters;
    /// Runs are truncated so no cell exceeds this many shots.
    std::optional<std::uint64_t> max_calls;

    /// M in {2^1..2^12}, n_iter in {5, 10, 20, ..., 320}.
    static SweepGrid defaults();
    void validate() const;

    friend bool operator==(const SweepGrid &, const SweepGrid &) = default;
};

/// Uncertainty band: Wilson 95% interval for a single instance, 25th/75th
/// percentiles across disorder realizations otherwise.
struct Band {
    double lower = 0.0;
    double upper = 0.0;

    friend bool operator==(const Band &, const Band &) = default;
};

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

/// Linear-interpolated percentile, q in [0, 100].
double percentile(std::vector<double> values, double q);

struct SweepCell {
    std::size_t shots = 0;
    std::size_t n_iter = 0;
    std::size_t repetitions = 0; ///< runs per instance
    std::uint64_t n_calls = 0;   ///< nominal cumulative shots
    double f_succ = 0.0;
    Band f_band;
    double p_succ = 0.0;
    Band p_band;

    friend bool operator==(const SweepCell &, const SweepCell &) = default;
};

/// F_succ after every iteration boundary for one shot count.
struct SuccessCurve {
    std::size_t shots = 0;
    std::vector<std::uint64_t> n_calls;
    std::vector<double> f_succ;

    friend bool operator==(const SuccessCurve &, const SuccessCurve &) = default;
};

struct SweepResult {
    ProblemSetup setup;
    SweepGrid grid;
    std::size_t repetitions = 0;
    std::uint64_t master_seed = 0;
    /// "wilson95" or "percentile25-75".
    std::string band_kind;
    /// Cells whose n_iter exceeds the max_calls truncation are omitted.
    std::vector<SweepCell> cells;
    std::vector<SuccessCurve> curves;

    [[nodiscard]] const SweepCell *cell(std::size_t shots, std::size_t n_iter) const;

    friend bool operator==(const SweepResult &, const SweepResult &) = default;
};

/// Per-run outcome handed to an optional sink as runs complete.
struct RunSummary {
    std::size_t instance = 0;
    std::size_t shots = 0;
    std::size_t repetition = 0;
    std::size_t iterations = 0; ///< records minus the initial evaluation
    std::optional<std::size_t> first_hit_iteration;
    std::optional<std::uint64_t> first_hit_calls;
    std::uint64_t n_calls = 0;
    std::uint64_t probe_shots = 0;
    double f_min = 0.0;
    std::vector<ProbeOutcome> probes;
};

struct SweepOptions {
    std::size_t repetitions = 100;
    std::uint64_t master_seed = 0;
    std::size_t threads = 1;
    /// Checked between runs; a set flag makes success_sweep throw Cancelled.
    const std::atomic<bool> *cancel = nullptr;
    /// Called (serialized) after each completed run.
    std::function<void(const RunSummary &)> on_run;
};

class Cancelled : public Error {
  public:
    using Error::Error;
};

SweepResult success_sweep(const ProblemSetup &setup, const SweepGrid &grid,
                          const SweepOptions &options);

struct OptimalCalls {
    bool reached = false;
    std::uint64_t n_calls = 0;
    std::size_t shots = 0;
    std::size_t n_iter = 0;
    double f_succ = 0.0;
};

/// Smallest nominal n_calls among all shot counts and iteration checkpoints
/// whose F_succ meets the target. Not reached if no checkpoint does.
OptimalCalls optimal_calls(const SweepResult &sweep, double target);

OptimalCalls optimal_calls(const ProblemSetup &setup, double target, const SweepGrid &grid,
                           const SweepOptions &options);

struct ScalingPoint {
    std::size_t L = 0;
    double n_calls = 0.0;

    friend bool operator==(const ScalingPoint &, const ScalingPoint &) = default;
};

/// n_calls* = a 2^(k L) fitted by least squares on log2 n_calls*.
struct ScalingFit {
    std::vector<ScalingPoint> points;
    std::size_t L_min = 8;
    double a = 0.0;
    double k = 0.0;
    /// log2 residuals of the points used in the fit.
    std::vector<double> residuals;

    [[nodiscard]] double predict(double L) const;

    friend bool operator==(const ScalingFit &, const ScalingFit &) = default;
};

inline constexpr std::size_t kDefaultFitMinSize = 8;

ScalingFit fit_scaling(const std::vector<ScalingPoint> &points,
                       std::size_t L_min = kDefaultFitMinSize);

/// 1 - (1 - g / 2^L)^n_calls.
double random_search_baseline(std::size_t L, std::uint64_t g, std::uint64_t n_calls);

/// n_calls * d * t_gate (same time unit as t_gate).
double runtime_bound(double n_calls, double d, double t_gate);

struct DepthSweepRow {
    std::size_t L = 0;
    std::size_t depth = 0;
    std::size_t instance = 0;
    std::uint64_t disorder_seed = 0;
    double p_gs = 0.0; ///< exact ground-state Born probability
    double f_succ = 0.0;
    Interval f_band;
};

struct DepthSweepSummary {
    std::size_t L = 0;
    std::size_t depth = 0;
    double p_gs_median = 0.0;
    double f_succ_median = 0.0;
    Band f_band; ///< Wilson for one instance, percentiles across several
};

struct DepthSweepResult {
    InstanceKind instance = InstanceKind::Ferromagnetic;
    double dt = 0.8;
    std::size_t shots = 16;
    std::size_t repetitions = 1000;
    std::uint64_t master_seed = 0;
    std::vector<DepthSweepRow> rows;
    std::vector<DepthSweepSummary> summary;
};

struct DepthSweepOptions {
    std::vector<std::size_t> sizes{6, 8, 10, 12};
    std::vector<std::size_t> depths{2, 4, 8};
    InstanceKind instance = InstanceKind::Ferromagnetic;
    std::vector<std::uint64_t> disorder_seeds;
    double dt = 0.8;
    std::size_t shots = 16;
    std::size_t repetitions = 1000;
    std::uint64_t master_seed = 0;
};

/// Linear-schedule QAOA sampled without optimization (n_iter = 0).
DepthSweepResult depth_sweep(const DepthSweepOptions &options);

/// Exact probability of measuring a ground state.
double ground_state_probability(const StateVector &state, const Problem &problem);

} // namespace vqopt
