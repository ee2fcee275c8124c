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
#include "vqopt/ising.hpp"

#include "vqopt/errors.hpp"
#include "vqopt/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace vqopt {

std::string to_string(InstanceKind kind) {
    switch (kind) {
    case InstanceKind::Ferromagnetic:
        return "ferro";
    case InstanceKind::Disordered:
        return "disordered";
    case InstanceKind::Custom:
        return "custom";
    }
    return "custom";
}

InstanceKind instance_kind_from_string(const std::string &name) {
    if (name == "ferro" || name == "ferromagnetic") {
        return InstanceKind::Ferromagnetic;
    }
    if (name == "disordered") {
        return InstanceKind::Disordered;
    }
    if (name == "custom") {
        return InstanceKind::Custom;
    }
    throw DomainError("unknown instance kind '" + name + "'");
}

IsingInstance::IsingInstance(std::vector<double> couplings, std::vector<double> fields,
                             InstanceKind kind, std::uint64_t seed)
    : couplings_(std::move(couplings)), fields_(std::move(fields)), kind_(kind), seed_(seed) {
    if (fields_.size() < 2) {
        throw DomainError("Ising chain needs L >= 2 spins");
    }
    if (couplings_.size() + 1 != fields_.size()) {
        throw DomainError("Ising chain of L spins needs exactly L-1 couplings");
    }
}

IsingInstance make_ferromagnetic(std::size_t L) {
    if (L < 2) {
        throw DomainError("Ising chain needs L >= 2 spins");
    }
    return IsingInstance(std::vector<double>(L - 1, kFerromagneticCoupling),
                         std::vector<double>(L, kFerromagneticField), InstanceKind::Ferromagnetic,
                         0);
}

double disorder_normal(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t key = splitmix64(seed);
    const std::uint64_t h1 = splitmix64(key + 2 * index);
    const std::uint64_t h2 = splitmix64(key + 2 * index + 1);
    // u1 in (0, 1] keeps the logarithm finite.
    const double u1 = static_cast<double>((h1 >> 11U) + 1U) * 0x1.0p-53;
    const double u2 = static_cast<double>(h2 >> 11U) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

IsingInstance make_disordered(std::size_t L, std::uint64_t seed) {
    if (L < 2) {
        throw DomainError("Ising chain needs L >= 2 spins");
    }
    std::vector<double> couplings(L - 1);
    std::vector<double> fields(L);
    std::uint64_t index = 0;
    for (auto &j : couplings) {
        j = disorder_normal(seed, index++);
    }
    for (auto &h : fields) {
        h = disorder_normal(seed, index++);
    }
    return IsingInstance(std::move(couplings), std::move(fields), InstanceKind::Disordered, seed);
}

double energy(const IsingInstance &instance, BitString x) {
    const std::size_t L = instance.size();
    if (L < 32 && (x.value >> L) != 0U) {
        throw DomainError("bitstring out of range for chain of " + std::to_string(L) + " spins");
    }
    const auto J = instance.couplings();
    const auto h = instance.fields();
    double e = 0.0;
    for (std::size_t j = 0; j + 1 < L; ++j) {
        e -= J[j] * x.spin(j) * x.spin(j + 1);
    }
    for (std::size_t j = 0; j < L; ++j) {
        e -= h[j] * x.spin(j);
    }
    return e;
}

std::vector<double> energy_table(const IsingInstance &instance) {
    const std::size_t L = instance.size();
    if (L > kMaxQubits) {
        throw CapacityError("energy table for L = " + std::to_string(L) + " exceeds the limit of " +
                            std::to_string(kMaxQubits) + " spins");
    }
    const std::size_t dim = std::size_t{1} << L;
    std::vector<double> table(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        table[x] = energy(instance, BitString{static_cast<std::uint32_t>(x)});
    }
    return table;
}

bool GroundTruth::contains(BitString x) const {
    return std::find(minimizers.begin(), minimizers.end(), x) != minimizers.end();
}

GroundTruth minimum_of_table(std::span<const double> table) {
    if (table.empty()) {
        throw DomainError("empty energy table");
    }
    GroundTruth gt;
    gt.minimum_energy = *std::min_element(table.begin(), table.end());
    const double tol = 1e-12 * std::max(1.0, std::abs(gt.minimum_energy));
    for (std::size_t x = 0; x < table.size(); ++x) {
        if (table[x] - gt.minimum_energy <= tol) {
            gt.minimizers.push_back(BitString{static_cast<std::uint32_t>(x)});
        }
    }
    return gt;
}

GroundTruth brute_force_minimum(const IsingInstance &instance) {
    return minimum_of_table(energy_table(instance));
}

Problem::Problem(IsingInstance inst)
    : instance(std::move(inst)), energies(energy_table(instance)),
      ground(minimum_of_table(energies)), is_minimizer(energies.size(), 0) {
    for (auto x : ground.minimizers) {
        is_minimizer[x.value] = 1;
    }
}

} // namespace vqopt
