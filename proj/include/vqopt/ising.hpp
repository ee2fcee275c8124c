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
 * One-dimensional Ising problem instances with open boundaries, their
 * classical energy, and exhaustive ground-state enumeration.
 *
 * Bit convention used throughout vqopt: bit j of a BitString (LSB is j = 0)
 * holds x_j, and the spin is sigma_j = 1 - 2 x_j, so x_j = 0 is spin up.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace vqopt {

/// Largest chain for which energy tables and statevectors are materialized.
inline constexpr std::size_t kMaxQubits = 24;

enum class InstanceKind { Ferromagnetic, Disordered, Custom };

std::string to_string(InstanceKind kind);
InstanceKind instance_kind_from_string(const std::string &name);

struct BitString {
    std::uint32_t value = 0;

    [[nodiscard]] bool bit(std::size_t j) const { return ((value >> j) & 1U) != 0U; }
    [[nodiscard]] int spin(std::size_t j) const { return bit(j) ? -1 : 1; }

    friend bool operator==(BitString, BitString) = default;
    friend auto operator<=>(BitString, BitString) = default;
};

class IsingInstance {
  public:
    /// Arbitrary couplings J_{j,j+1} (size L-1) and fields h_j (size L).
    IsingInstance(std::vector<double> couplings, std::vector<double> fields,
                  InstanceKind kind = InstanceKind::Custom, std::uint64_t seed = 0);

    [[nodiscard]] std::size_t size() const { return fields_.size(); }
    [[nodiscard]] std::span<const double> couplings() const { return couplings_; }
    [[nodiscard]] std::span<const double> fields() const { return fields_; }
    [[nodiscard]] InstanceKind kind() const { return kind_; }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    friend bool operator==(const IsingInstance &, const IsingInstance &) = default;

  private:
    std::vector<double> couplings_;
    std::vector<double> fields_;
    InstanceKind kind_;
    std::uint64_t seed_;
};

inline constexpr double kFerromagneticCoupling = 1.0;
inline constexpr double kFerromagneticField = -0.05;

IsingInstance make_ferromagnetic(std::size_t L);

/// Couplings then fields, 2L-1 standard-normal draws from a counter-based
/// stream keyed by (seed, draw index); reproducible across platforms.
IsingInstance make_disordered(std::size_t L, std::uint64_t seed);

/// The counter-based normal draw used by make_disordered.
double disorder_normal(std::uint64_t seed, std::uint64_t index);

double energy(const IsingInstance &instance, BitString x);

/// energy(instance, x) for x = 0 .. 2^L - 1.
std::vector<double> energy_table(const IsingInstance &instance);

struct GroundTruth {
    double minimum_energy = 0.0;
    std::vector<BitString> minimizers;

    [[nodiscard]] std::size_t degeneracy() const { return minimizers.size(); }
    [[nodiscard]] bool contains(BitString x) const;
};

GroundTruth brute_force_minimum(const IsingInstance &instance);

/// Scan of a precomputed table; minimizers are all entries within a relative
/// 1e-12 of the minimum.
GroundTruth minimum_of_table(std::span<const double> table);

/// An instance with its energy table and ground truth, computed once and
/// shared read-only by every run on that instance.
struct Problem {
    IsingInstance instance;
    std::vector<double> energies;
    GroundTruth ground;
    /// 1 at every minimizer index, 0 elsewhere.
    std::vector<std::uint8_t> is_minimizer;

    explicit Problem(IsingInstance inst);

    [[nodiscard]] std::size_t size() const { return instance.size(); }
    [[nodiscard]] bool hits(BitString x) const { return is_minimizer[x.value] != 0; }
};

using ProblemPtr = std::shared_ptr<const Problem>;

inline ProblemPtr make_problem(IsingInstance instance) {
    return std::make_shared<const Problem>(std::move(instance));
}

} // namespace vqopt
