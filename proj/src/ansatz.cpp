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
#include "vqopt/ansatz.hpp"

#include "vqopt/errors.hpp"

namespace vqopt {

std::string to_string(AnsatzFamily family) {
    return family == AnsatzFamily::Qaoa ? "qaoa" : "vqe";
}

AnsatzFamily ansatz_family_from_string(const std::string &name) {
    if (name == "vqe" || name == "vqe_ry_cnot") {
        return AnsatzFamily::VqeRyCnot;
    }
    if (name == "qaoa") {
        return AnsatzFamily::Qaoa;
    }
    throw DomainError("unknown ansatz family '" + name + "'");
}

AnsatzSpec::AnsatzSpec(AnsatzFamily family, std::size_t L, std::size_t depth, ProblemPtr problem)
    : family_(family), num_qubits_(L), depth_(depth), problem_(std::move(problem)) {
    if (depth_ < 1) {
        throw DomainError("ansatz depth must be >= 1");
    }
    if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
        throw CapacityError("ansatz size outside [1, 24] qubits");
    }
}

AnsatzSpec AnsatzSpec::vqe(std::size_t L, std::size_t depth) {
    return AnsatzSpec(AnsatzFamily::VqeRyCnot, L, depth, nullptr);
}

AnsatzSpec AnsatzSpec::qaoa(ProblemPtr problem, std::size_t depth) {
    if (!problem) {
        throw DomainError("QAOA ansatz needs a problem instance");
    }
    const std::size_t L = problem->size();
    return AnsatzSpec(AnsatzFamily::Qaoa, L, depth, std::move(problem));
}

std::size_t AnsatzSpec::n_params() const {
    return family_ == AnsatzFamily::Qaoa ? 2 * depth_ : num_qubits_ * (depth_ + 1);
}

namespace {

CircuitOp gate_op(GateKind kind, std::size_t q0, std::size_t q1, double angle) {
    CircuitOp op;
    op.gate = Gate{kind, q0, q1, angle};
    return op;
}

void append_ry_layer(Circuit &c, std::span<const double> angles) {
    for (std::size_t j = 0; j < angles.size(); ++j) {
        c.ops.push_back(gate_op(GateKind::Ry, j, 0, angles[j]));
    }
}

void append_problem_layer(Circuit &c, const Problem &problem, double gamma, PhaseMode mode) {
    if (mode == PhaseMode::Diagonal) {
        CircuitOp op;
        op.kind = CircuitOp::Kind::DiagonalPhase;
        op.gamma = gamma;
        c.ops.push_back(op);
        return;
    }
    // exp(i gamma H_P) with H_P = -sum J Z Z - sum h Z.
    const auto J = problem.instance.couplings();
    const auto h = problem.instance.fields();
    for (std::size_t j = 0; j < J.size(); ++j) {
        c.ops.push_back(gate_op(GateKind::Rzz, j, j + 1, -2.0 * gamma * J[j]));
    }
    for (std::size_t j = 0; j < h.size(); ++j) {
        c.ops.push_back(gate_op(GateKind::Rz, j, 0, -2.0 * gamma * h[j]));
    }
}

} // namespace

Circuit build_circuit(const AnsatzSpec &spec, std::span<const double> theta, PhaseMode mode) {
    if (theta.size() != spec.n_params()) {
        throw DomainError("parameter vector has " + std::to_string(theta.size()) +
                          " entries, ansatz needs " + std::to_string(spec.n_params()));
    }
    const std::size_t L = spec.num_qubits();
    const std::size_t d = spec.depth();
    Circuit c;
    c.num_qubits = L;
    if (spec.family() == AnsatzFamily::VqeRyCnot) {
        c.ops.reserve((d + 1) * L + d * (L - 1));
        for (std::size_t l = 0; l < d; ++l) {
            append_ry_layer(c, theta.subspan(l * L, L));
            for (std::size_t j = 1; j < L; ++j) {
                c.ops.push_back(gate_op(GateKind::Cnot, j - 1, j, 0.0));
            }
        }
        append_ry_layer(c, theta.subspan(d * L, L));
        return c;
    }

    c.start_plus = true;
    for (std::size_t l = 0; l < d; ++l) {
        append_problem_layer(c, *spec.problem(), theta[2 * l], mode);
        // exp(-i theta_M sigma^x) = R_x(-2 theta_M) under R_x(t) = exp(+i t sigma^x / 2).
        for (std::size_t j = 0; j < L; ++j) {
            c.ops.push_back(gate_op(GateKind::Rx, j, 0, -2.0 * theta[2 * l + 1]));
        }
    }
    return c;
}

GateCounts count_gates(const Circuit &circuit) {
    GateCounts n;
    for (const auto &op : circuit.ops) {
        if (op.kind == CircuitOp::Kind::DiagonalPhase) {
            ++n.diagonal_phases;
            continue;
        }
        switch (op.gate.kind) {
        case GateKind::Ry:
            ++n.ry;
            break;
        case GateKind::Rx:
            ++n.rx;
            break;
        case GateKind::Rz:
            ++n.rz;
            break;
        case GateKind::Cnot:
            ++n.cnot;
            break;
        case GateKind::Rzz:
            ++n.rzz;
            break;
        case GateKind::Identity:
            break;
        }
    }
    return n;
}

StateVector run_circuit(const Circuit &circuit, const std::vector<double> *energies) {
    StateVector psi = circuit.start_plus ? init_plus(circuit.num_qubits)
                                         : init_zero(circuit.num_qubits);
    for (const auto &op : circuit.ops) {
        if (op.kind == CircuitOp::Kind::DiagonalPhase) {
            if (energies == nullptr) {
                throw DomainError("diagonal phase layer without an energy table");
            }
            apply_diagonal_phase(psi, *energies, op.gamma);
        } else {
            apply_gate(psi, op.gate);
        }
    }
    return psi;
}

StateVector prepare_state(const AnsatzSpec &spec, std::span<const double> theta, PhaseMode mode) {
    const Circuit c = build_circuit(spec, theta, mode);
    return run_circuit(c, spec.problem() ? &spec.problem()->energies : nullptr);
}

StateVector prepare_state(const AnsatzSpec &spec, std::span<const double> theta,
                          const NoiseModel &noise, Rng &rng) {
    noise.validate();
    const Circuit c = build_circuit(spec, theta, PhaseMode::GateLevel);
    StateVector psi = c.start_plus ? init_plus(c.num_qubits) : init_zero(c.num_qubits);
    for (const auto &op : c.ops) {
        apply_noisy_gate(psi, op.gate, noise, rng);
    }
    return psi;
}

ParamVector init_random(const AnsatzSpec &spec, Rng &rng, double low, double high) {
    if (!(low < high)) {
        throw DomainError("random initialization needs low < high");
    }
    ParamVector theta(spec.n_params());
    for (auto &t : theta) {
        t = high - uniform01(rng) * (high - low);
    }
    return theta;
}

ParamVector init_linear_schedule(std::size_t depth, double dt) {
    if (depth < 1) {
        throw DomainError("linear schedule needs depth >= 1");
    }
    if (!(dt > 0.0)) {
        throw DomainError("linear schedule needs dt > 0");
    }
    ParamVector theta(2 * depth);
    const double d = static_cast<double>(depth);
    for (std::size_t l = 1; l <= depth; ++l) {
        const double s = static_cast<double>(l) / d;
        theta[2 * (l - 1)] = s * dt;
        theta[2 * (l - 1) + 1] = (1.0 - s) * dt;
    }
    return theta;
}

} // namespace vqopt
