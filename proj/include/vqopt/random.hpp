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
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace vqopt {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

/// Seed for an independent stream identified by a master seed and a path of
/// indices (instance, shots, repetition, ...).
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = splitmix64(master);
    for (auto p : path) {
        h = splitmix64(h ^ splitmix64(p + 0x5851F42D4C957F2DULL));
    }
    return h;
}

/// Uniform in [0, 1) with 53 random bits; independent of the standard
/// library's distribution implementation.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11U) * 0x1.0p-53;
}

inline double standard_normal(Rng &rng) {
    std::normal_distribution<double> dist;
    return dist(rng);
}

} // namespace vqopt
