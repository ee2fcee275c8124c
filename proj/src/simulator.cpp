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
#include "vqopt/simulator.hpp"

#include "vqopt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace vqopt {

namespace {

void check_capacity(std::size_t L) {
    if (L < 1 || L > kMaxQubits) {
        throw CapacityError("statevector size L = " + std::to_string(L) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
}

void check_qubit(const StateVector &state, std::size_t q) {
    if (q >= state.num_qubits()) {
        throw DomainError("qubit index " + std::to_string(q) + " out of range for " +
                          std::to_string(state.num_qubits()) + " qubits");
    }
}

void check_pair(const StateVector &state, std::size_t a, std::size_t b) {
    check_qubit(state, a);
    check_qubit(state, b);
    if (a == b) {
        throw DomainError("two-qubit gate needs distinct qubits");
    }
}

/// Applies the 2x2 matrix [[m00, m01], [m10, m11]] to qubit q.
void apply_single(StateVector &state, std::size_t q, Complex m00, Complex m01, Complex m10,
                  Complex m11) {
    check_qubit(state, q);
    auto amp = state.amplitudes();
    const std::size_t mask = std::size_t{1} << q;
    const std::size_t dim = amp.size();
    for (std::size_t hi = 0; hi < dim; hi += 2 * mask) {
        for (std::size_t i0 = hi; i0 < hi + mask; ++i0) {
            const std::size_t i1 = i0 | mask;
            const Complex a = amp[i0];
            const Complex b = amp[i1];
            amp[i0] = m00 * a + m01 * b;
            amp[i1] = m10 * a + m11 * b;
        }
    }
}

} // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
    check_capacity(num_qubits);
    amplitudes_.assign(std::size_t{1} << num_qubits, Complex{});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    check_capacity(num_qubits);
    if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
        throw DomainError("amplitude array length must be 2^L");
    }
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto &a : amplitudes_) {
        s += std::norm(a);
    }
    return s;
}

void StateVector::normalize() {
    const double n = std::sqrt(norm_squared());
    if (n == 0.0) {
        throw IntegrityError("cannot normalize the zero vector");
    }
    for (auto &a : amplitudes_) {
        a /= n;
    }
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(),
                   [](const Complex &a) { return std::norm(a); });
    return p;
}

StateVector init_zero(std::size_t L) { return StateVector(L); }

StateVector init_plus(std::size_t L) {
    check_capacity(L);
    const std::size_t dim = std::size_t{1} << L;
    return StateVector(L, std::vector<Complex>(dim, Complex{1.0 / std::sqrt(double(dim)), 0.0}));
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.dimension() != b.dimension()) {
        throw DomainError("inner product of states with different sizes");
    }
    Complex s{};
    for (std::size_t x = 0; x < a.dimension(); ++x) {
        s += std::conj(a[x]) * b[x];
    }
    return s;
}

void apply_ry(StateVector &state, std::size_t q, double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    apply_single(state, q, c, -s, s, c);
}

void apply_rx(StateVector &state, std::size_t q, double theta) {
    const double c = std::cos(theta / 2);
    const Complex is{0.0, std::sin(theta / 2)};
    apply_single(state, q, c, is, is, c);
}

void apply_rz(StateVector &state, std::size_t q, double theta) {
    check_qubit(state, q);
    const Complex up = std::polar(1.0, theta / 2);
    const Complex down = std::conj(up);
    auto amp = state.amplitudes();
    const std::size_t mask = std::size_t{1} << q;
    for (std::size_t x = 0; x < amp.size(); ++x) {
        amp[x] *= (x & mask) ? down : up;
    }
}

void apply_pauli_z(StateVector &state, std::size_t q) {
    check_qubit(state, q);
    auto amp = state.amplitudes();
    const std::size_t mask = std::size_t{1} << q;
    for (std::size_t x = 0; x < amp.size(); ++x) {
        if (x & mask) {
            amp[x] = -amp[x];
        }
    }
}

void apply_cnot(StateVector &state, std::size_t control, std::size_t target) {
    check_pair(state, control, target);
    auto amp = state.amplitudes();
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    for (std::size_t x = 0; x < amp.size(); ++x) {
        if ((x & cmask) && !(x & tmask)) {
            std::swap(amp[x], amp[x | tmask]);
        }
    }
}

void apply_rzz(StateVector &state, std::size_t q1, std::size_t q2, double theta) {
    check_pair(state, q1, q2);
    const Complex aligned = std::polar(1.0, theta / 2);
    const Complex anti = std::conj(aligned);
    auto amp = state.amplitudes();
    for (std::size_t x = 0; x < amp.size(); ++x) {
        const bool b1 = ((x >> q1) & 1U) != 0U;
        const bool b2 = ((x >> q2) & 1U) != 0U;
        amp[x] *= (b1 == b2) ? aligned : anti;
    }
}

void apply_diagonal_phase(StateVector &state, std::span<const double> energies, double gamma) {
    if (energies.size() != state.dimension()) {
        throw DomainError("diagonal phase needs one energy per basis state");
    }
    if (gamma == 0.0) {
        return;
    }
    auto amp = state.amplitudes();
    for (std::size_t x = 0; x < amp.size(); ++x) {
        amp[x] *= std::polar(1.0, gamma * energies[x]);
    }
}

double expectation_diagonal(const StateVector &state, std::span<const double> energies) {
    if (energies.size() != state.dimension()) {
        throw DomainError("expectation needs one energy per basis state");
    }
    double s = 0.0;
    for (std::size_t x = 0; x < energies.size(); ++x) {
        s += std::norm(state[x]) * energies[x];
    }
    return s;
}

void apply_gate(StateVector &state, const Gate &gate) {
    switch (gate.kind) {
    case GateKind::Identity:
        check_qubit(state, gate.q0);
        break;
    case GateKind::Ry:
        apply_ry(state, gate.q0, gate.angle);
        break;
    case GateKind::Rx:
        apply_rx(state, gate.q0, gate.angle);
        break;
    case GateKind::Rz:
        apply_rz(state, gate.q0, gate.angle);
        break;
    case GateKind::Cnot:
        apply_cnot(state, gate.q0, gate.q1);
        break;
    case GateKind::Rzz:
        apply_rzz(state, gate.q0, gate.q1, gate.angle);
        break;
    }
}

void NoiseModel::validate() const {
    if (!(t1_us > 0.0) || !(t2_us > 0.0)) {
        throw DomainError("noise model needs T1 > 0 and T2 > 0");
    }
    if (t2_us > 2.0 * t1_us) {
        throw DomainError("noise model needs T2 <= 2 T1");
    }
    if (t1q_ns < 0.0 || t2q_ns < 0.0) {
        throw DomainError("gate durations must be non-negative");
    }
}

double NoiseModel::damping_probability(double duration_ns) const {
    return -std::expm1(-duration_ns * 1e-3 / t1_us);
}

double NoiseModel::dephasing_flip_probability(double duration_ns) const {
    const double rate = std::max(0.0, 1.0 / t2_us - 0.5 / t1_us);
    return -0.5 * std::expm1(-duration_ns * 1e-3 * rate);
}

void apply_relaxation(StateVector &state, std::size_t q, double duration_ns,
                      const NoiseModel &noise, Rng &rng) {
    check_qubit(state, q);
    auto amp = state.amplitudes();
    const std::size_t mask = std::size_t{1} << q;

    const double gamma = noise.damping_probability(duration_ns);
    const double u_damp = uniform01(rng);
    if (gamma > 0.0) {
        double excited = 0.0;
        double total = 0.0;
        for (std::size_t x = 0; x < amp.size(); ++x) {
            const double p = std::norm(amp[x]);
            total += p;
            if (x & mask) {
                excited += p;
            }
        }
        if (u_damp < gamma * excited / total) {
            // K1 = sqrt(gamma) |0><1|
            for (std::size_t x = 0; x < amp.size(); ++x) {
                if (x & mask) {
                    amp[x & ~mask] = amp[x];
                    amp[x] = 0.0;
                }
            }
        } else {
            // K0 = |0><0| + sqrt(1 - gamma) |1><1|
            const double keep = std::sqrt(1.0 - gamma);
            for (std::size_t x = 0; x < amp.size(); ++x) {
                if (x & mask) {
                    amp[x] *= keep;
                }
            }
        }
        state.normalize();
    }

    const double flip = noise.dephasing_flip_probability(duration_ns);
    const double u_flip = uniform01(rng);
    if (u_flip < flip) {
        apply_pauli_z(state, q);
    }
}

void apply_noisy_gate(StateVector &state, const Gate &gate, const NoiseModel &noise, Rng &rng) {
    apply_gate(state, gate);
    const double duration = gate.two_qubit() ? noise.t2q_ns : noise.t1q_ns;
    apply_relaxation(state, gate.q0, duration, noise, rng);
    if (gate.two_qubit()) {
        apply_relaxation(state, gate.q1, duration, noise, rng);
    }
}

std::vector<BitString> sample_shots(const StateVector &state, std::size_t shots, Rng &rng,
                                    ShotCounter *counter) {
    if (shots == 0) {
        throw DomainError("sample_shots needs at least one shot");
    }
    std::vector<double> cdf(state.dimension());
    double acc = 0.0;
    for (std::size_t x = 0; x < cdf.size(); ++x) {
        acc += std::norm(state[x]);
        cdf[x] = acc;
    }
    if (std::abs(acc - 1.0) > 1e-8) {
        throw IntegrityError("sampling from a state with norm^2 = " + std::to_string(acc));
    }
    std::vector<BitString> out(shots);
    for (auto &s : out) {
        // First index whose cumulative weight exceeds u; never a zero-weight outcome.
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) {
            --it;
        }
        s.value = static_cast<std::uint32_t>(it - cdf.begin());
    }
    if (counter != nullptr) {
        counter->draws += shots;
    }
    return out;
}

} // namespace vqopt
