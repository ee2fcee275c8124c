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
 * Dense statevector simulator: the gate set of the two ansatze, exact
 * diagonal-phase evolution, Born-rule shot sampling, and a stochastic
 * (Kraus trajectory) thermal-relaxation channel.
 *
 * Gate conventions:
 *   R_y(t)  = exp(-i t sigma^y / 2)
 *   R_x(t)  = exp(+i t sigma^x / 2)
 *   R_z(t)  = exp(+i t sigma^z / 2)
 *   R_zz(t) = exp(+i t sigma^z (x) sigma^z / 2)
 * with sigma^z |x_j> = (1 - 2 x_j) |x_j>.
 */
#pragma once

#include "vqopt/ising.hpp"
#include "vqopt/random.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vqopt {

using Complex = std::complex<double>;

class StateVector {
  public:
    explicit StateVector(std::size_t num_qubits);
    StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t dimension() const { return amplitudes_.size(); }

    [[nodiscard]] std::span<Complex> amplitudes() { return amplitudes_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amplitudes_; }

    Complex &operator[](std::size_t x) { return amplitudes_[x]; }
    const Complex &operator[](std::size_t x) const { return amplitudes_[x]; }

    [[nodiscard]] double norm_squared() const;
    void normalize();
    [[nodiscard]] std::vector<double> probabilities() const;

  private:
    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

StateVector init_zero(std::size_t L);
/// Uniform superposition (|0> + |1>)^{(x)L} / 2^{L/2}.
StateVector init_plus(std::size_t L);

/// <a|b>
Complex inner_product(const StateVector &a, const StateVector &b);

void apply_ry(StateVector &state, std::size_t q, double theta);
void apply_rx(StateVector &state, std::size_t q, double theta);
void apply_rz(StateVector &state, std::size_t q, double theta);
void apply_cnot(StateVector &state, std::size_t control, std::size_t target);
void apply_rzz(StateVector &state, std::size_t q1, std::size_t q2, double theta);
void apply_pauli_z(StateVector &state, std::size_t q);

/// Multiplies amplitude x by exp(i gamma f(x)).
void apply_diagonal_phase(StateVector &state, std::span<const double> energies, double gamma);

/// sum_x |psi(x)|^2 f(x)
double expectation_diagonal(const StateVector &state, std::span<const double> energies);

enum class GateKind { Identity, Ry, Rx, Rz, Cnot, Rzz };

struct Gate {
    GateKind kind = GateKind::Identity;
    std::size_t q0 = 0;
    std::size_t q1 = 0;
    double angle = 0.0;

    [[nodiscard]] bool two_qubit() const { return kind == GateKind::Cnot || kind == GateKind::Rzz; }
};

void apply_gate(StateVector &state, const Gate &gate);

/// Thermal relaxation parameters. Times T1/T2 in microseconds, gate
/// durations in nanoseconds.
struct NoiseModel {
    double t1_us = 50.0;
    double t2_us = 70.0;
    double t1q_ns = 50.0;
    double t2q_ns = 300.0;

    /// Throws DomainError unless T1 > 0, T2 > 0 and T2 <= 2 T1.
    void validate() const;

    /// Amplitude-damping probability for a duration in nanoseconds.
    [[nodiscard]] double damping_probability(double duration_ns) const;
    /// Phase-flip probability of the pure-dephasing part, rate 1/T2 - 1/(2 T1).
    [[nodiscard]] double dephasing_flip_probability(double duration_ns) const;

    friend bool operator==(const NoiseModel &, const NoiseModel &) = default;
};

/// One relaxation trajectory step on qubit q for the given duration: picks
/// one Kraus branch of amplitude damping, then a phase flip, renormalizing.
void apply_relaxation(StateVector &state, std::size_t q, double duration_ns,
                      const NoiseModel &noise, Rng &rng);

/// Ideal gate followed by a relaxation step on every touched qubit.
void apply_noisy_gate(StateVector &state, const Gate &gate, const NoiseModel &noise, Rng &rng);

/// Counts Born-rule draws; shot accounting is audited against it.
struct ShotCounter {
    std::uint64_t draws = 0;
};

/// M independent Born-rule draws. Throws IntegrityError if the norm deviates
/// by more than 1e-8.
std::vector<BitString> sample_shots(const StateVector &state, std::size_t shots, Rng &rng,
                                    ShotCounter *counter = nullptr);

} // namespace vqopt
