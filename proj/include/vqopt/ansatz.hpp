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
 * The two parametrized circuit families and their parameter initializations.
 *
 * VqeRyCnot: d blocks of [R_y layer, CNOT ladder q_{j-1} -> q_j] followed
 * by a final R_y layer, acting on |0...0>. Parameters are layer-major:
 * theta[l * L + j] drives qubit j in rotation layer l.
 *
 * Qaoa: d blocks of [exp(i theta_P H_P), exp(-i theta_M H_M)] acting on
 * |+...+>, with H_M = sum_j sigma^x_j. Parameters are interleaved per block:
 * [theta_P^1, theta_M^1, ..., theta_P^d, theta_M^d].
 */
#pragma once

#include "vqopt/ising.hpp"
#include "vqopt/random.hpp"
#include "vqopt/simulator.hpp"

#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace vqopt {

enum class AnsatzFamily { VqeRyCnot, Qaoa };

std::string to_string(AnsatzFamily family);
AnsatzFamily ansatz_family_from_string(const std::string &name);

using ParamVector = std::vector<double>;

class AnsatzSpec {
  public:
    static AnsatzSpec vqe(std::size_t L, std::size_t depth);
    /// QAOA over the problem's Hamiltonian; the problem is shared, not copied.
    static AnsatzSpec qaoa(ProblemPtr problem, std::size_t depth);

    [[nodiscard]] AnsatzFamily family() const { return family_; }
    [[nodiscard]] std::size_t num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t depth() const { return depth_; }
    [[nodiscard]] std::size_t n_params() const;
    [[nodiscard]] const ProblemPtr &problem() const { return problem_; }

  private:
    AnsatzSpec(AnsatzFamily family, std::size_t L, std::size_t depth, ProblemPtr problem);

    AnsatzFamily family_;
    std::size_t num_qubits_;
    std::size_t depth_;
    ProblemPtr problem_;
};

/// How exp(i theta_P H_P) is realized in a QAOA circuit.
enum class PhaseMode {
    Diagonal,  ///< one exact diagonal phase from the energy table
    GateLevel, ///< R_zz per bond and R_z per site
};

struct CircuitOp {
    enum class Kind { Gate, DiagonalPhase };
    Kind kind = Kind::Gate;
    Gate gate;
    double gamma = 0.0; ///< phase angle for Kind::DiagonalPhase
};

struct Circuit {
    std::size_t num_qubits = 0;
    bool start_plus = false; ///< |+...+> if true, else |0...0>
    std::vector<CircuitOp> ops;
};

struct GateCounts {
    std::size_t ry = 0;
    std::size_t rx = 0;
    std::size_t rz = 0;
    std::size_t cnot = 0;
    std::size_t rzz = 0;
    std::size_t diagonal_phases = 0;
};

Circuit build_circuit(const AnsatzSpec &spec, std::span<const double> theta,
                      PhaseMode mode = PhaseMode::Diagonal);

GateCounts count_gates(const Circuit &circuit);

/// Noiseless state. Uses the exact diagonal phase for QAOA.
StateVector prepare_state(const AnsatzSpec &spec, std::span<const double> theta,
                          PhaseMode mode = PhaseMode::Diagonal);

/// One noisy trajectory: every gate goes through apply_noisy_gate. QAOA is
/// expanded to gate level so its phase layers also decohere.
StateVector prepare_state(const AnsatzSpec &spec, std::span<const double> theta,
                          const NoiseModel &noise, Rng &rng);

StateVector run_circuit(const Circuit &circuit, const std::vector<double> *energies);

inline constexpr double kDefaultInitLow = -std::numbers::pi;
inline constexpr double kDefaultInitHigh = std::numbers::pi;

/// i.i.d. uniform angles in (low, high].
ParamVector init_random(const AnsatzSpec &spec, Rng &rng, double low = kDefaultInitLow,
                        double high = kDefaultInitHigh);

/// Annealing-inspired QAOA start: theta_P^l = (l/d) dt, theta_M^l = (1 - l/d) dt.
ParamVector init_linear_schedule(std::size_t depth, double dt);

} // namespace vqopt
