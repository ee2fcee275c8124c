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
 * Shot-based cost estimation (mean and CVaR), running-minimum tracking, and
 * the parameter-shift and finite-difference gradient estimators.
 */
#pragma once

#include "vqopt/ansatz.hpp"
#include "vqopt/ising.hpp"
#include "vqopt/simulator.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace vqopt {

struct Shot {
    BitString x;
    double energy = 0.0;
};

class SampleSet {
  public:
    SampleSet() = default;
    SampleSet(std::vector<Shot> entries, std::uint64_t shots_spent);

    /// Looks up each bitstring's energy in the problem's table.
    static SampleSet score(std::span<const BitString> shots, const Problem &problem);

    [[nodiscard]] std::span<const Shot> entries() const { return entries_; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] std::uint64_t shots_spent() const { return shots_spent_; }

    /// Index of the first shot that hits a ground state, if any.
    [[nodiscard]] std::optional<std::size_t> first_hit(const Problem &problem) const;

  private:
    std::vector<Shot> entries_;
    std::uint64_t shots_spent_ = 0;
};

/// Mean (alpha = 1) or CVaR over the best alpha fraction of shots.
struct CostKind {
    double alpha = 1.0;

    static CostKind mean() { return CostKind{1.0}; }
    static CostKind cvar(double alpha);

    [[nodiscard]] bool is_mean() const { return alpha == 1.0; }
    friend bool operator==(const CostKind &, const CostKind &) = default;
};

double mean_cost(const SampleSet &samples);

/// Average of the M* = max(1, floor(alpha M)) lowest energies; ties are
/// ordered by bitstring value.
double cvar_cost(const SampleSet &samples, double alpha);

double cost(const SampleSet &samples, CostKind kind);

/// Everything a shot-based evaluation needs besides the circuit itself.
struct EvalContext {
    Rng *rng = nullptr;
    ShotCounter *counter = nullptr;
    const NoiseModel *noise = nullptr;
    /// Independent noise trajectories per noisy evaluation (shots split evenly).
    std::size_t max_trajectories = 16;

    [[nodiscard]] Rng &random() const;
};

struct Evaluation {
    double cost = 0.0;
    SampleSet samples;
};

/// M shots from the (possibly noisy) prepared state, scored against the
/// problem's energy table.
SampleSet sample_circuit(const AnsatzSpec &spec, std::span<const double> theta,
                         const Problem &problem, std::size_t shots, EvalContext &ctx);

Evaluation evaluate(const AnsatzSpec &spec, std::span<const double> theta, const Problem &problem,
                    std::size_t shots, CostKind kind, EvalContext &ctx);

/// Noiseless <psi(theta)|H_P|psi(theta)>.
double exact_cost(const AnsatzSpec &spec, std::span<const double> theta, const Problem &problem);

/// Shots per circuit for a gradient; std::nullopt is the exact-expectation
/// mode, which draws no shots and is excluded from accounting.
using ShotBudget = std::optional<std::size_t>;
inline constexpr ShotBudget kExactExpectation = std::nullopt;

struct GradientEstimate {
    std::vector<double> gradient;
    std::uint64_t shots_spent = 0;
    /// The 2 n_par sample sets in the order (+, -) per parameter; empty in exact mode.
    std::vector<SampleSet> samples;
};

/// (E(theta_n + pi/2) - E(theta_n - pi/2)) / 2 with mean-cost estimates.
/// Only valid for VqeRyCnot.
GradientEstimate grad_param_shift(const AnsatzSpec &spec, std::span<const double> theta,
                                  const Problem &problem, ShotBudget shots, EvalContext &ctx);

/// Central difference (E(theta_n + eps) - E(theta_n - eps)) / (2 eps).
GradientEstimate grad_finite_diff(const AnsatzSpec &spec, std::span<const double> theta,
                                  const Problem &problem, double eps, ShotBudget shots,
                                  EvalContext &ctx);

/// Running minimum over every sample set generated by a run.
class MinimumTracker {
  public:
    void observe(const SampleSet &samples, const Problem &problem);

    [[nodiscard]] double f_min() const { return f_min_; }
    [[nodiscard]] std::uint64_t cumulative_shots() const { return cumulative_; }
    /// Cumulative shot count (1-based) of the first ground-state sample.
    [[nodiscard]] std::optional<std::uint64_t> first_hit_calls() const { return first_hit_; }
    [[nodiscard]] bool hit() const { return first_hit_.has_value(); }

  private:
    double f_min_ = std::numeric_limits<double>::infinity();
    std::uint64_t cumulative_ = 0;
    std::optional<std::uint64_t> first_hit_;
};

/// CSV rows shot_index,bitstring_hex,energy with a header line.
void write_samples_csv(std::ostream &os, const SampleSet &samples);

} // namespace vqopt
