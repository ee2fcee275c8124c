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
 * CSV tables and SVG figures for sweeps, scaling fits and depth sweeps.
 */
#pragma once

#include "vqopt/experiment.hpp"

#include <iosfwd>
#include <string>

namespace vqopt {

void write_cells_csv(std::ostream &os, const SweepResult &sweep);

/// F_succ against n_calls per shot count, with the random-search baseline
/// for the first instance's ground-state degeneracy.
void write_curves_csv(std::ostream &os, const SweepResult &sweep);

void write_fit_csv(std::ostream &os, const ScalingFit &fit);

void write_depth_csv(std::ostream &os, const DepthSweepResult &result);

/// F_succ versus log2 n_calls, one polyline per shot count, baseline dashed.
std::string success_curves_svg(const SweepResult &sweep);

/// log2 n_calls* versus L with the fitted line over L >= L_min.
std::string scaling_svg(const ScalingFit &fit);

} // namespace vqopt
