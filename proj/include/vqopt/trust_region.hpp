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
 * Unconstrained linear-model trust-region minimizer following the control
 * flow of Powell's COBYLA with an empty constraint set.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace vqopt {

struct TrustRegionOptions {
    double initial_radius = 1.0;
    double final_radius = 1e-4;
    /// Hard cap on objective evaluations, including the initial simplex.
    std::size_t max_evaluations = 1000;

    void validate() const;
};

struct TrustRegionResult {
    /// Pole of the final simplex (the best vertex kept by the method).
    std::vector<double> x;
    double f = 0.0;
    std::size_t evaluations = 0;
    /// True if the radius reached final_radius; false if the budget ran out.
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

TrustRegionResult minimize_trust_region(const Objective &objective, std::span<const double> x0,
                                        const TrustRegionOptions &options);

} // namespace vqopt
