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
#include "vqopt/trust_region.hpp"

#include "vqopt/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace vqopt {

void TrustRegionOptions::validate() const {
    if (!(initial_radius > 0.0) || !(final_radius > 0.0) || final_radius > initial_radius) {
        throw DomainError("trust radii must be positive with final_radius <= initial_radius");
    }
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Simplex acceptability and step constants from Powell's code.
constexpr double kAlpha = 0.25;
constexpr double kBeta = 2.1;
constexpr double kGamma = 0.5;
constexpr double kDelta = 1.1;

struct BudgetExhausted {};

class Driver {
  public:
    Driver(const Objective &objective, std::size_t n, std::size_t max_evals)
        : objective_(objective), n_(n), max_evals_(max_evals), sim_(MatrixXd::Zero(n, n)),
          fval_(VectorXd::Zero(n)), pole_(VectorXd::Zero(n)) {}

    TrustRegionResult run(std::span<const double> x0, double rhobeg, double rhoend);

  private:
    double eval(const VectorXd &x) {
        if (evals_ >= max_evals_) {
            throw BudgetExhausted{};
        }
        ++evals_;
        return objective_(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    }

    void make_pole_best();

    const Objective &objective_;
    std::size_t n_;
    std::size_t max_evals_;
    std::size_t evals_ = 0;
    // Column j is the displacement of vertex j from the pole.
    MatrixXd sim_;
    VectorXd fval_;
    VectorXd pole_;
    double fpole_ = 0.0;
    bool simplex_ready_ = false;
};

void Driver::make_pole_best() {
    Eigen::Index best = -1;
    double fbest = fpole_;
    for (Eigen::Index j = 0; j < fval_.size(); ++j) {
        if (fval_[j] < fbest) {
            best = j;
            fbest = fval_[j];
        }
    }
    if (best < 0) {
        return;
    }
    const VectorXd shift = sim_.col(best);
    pole_ += shift;
    for (Eigen::Index k = 0; k < sim_.cols(); ++k) {
        sim_.col(k) -= shift;
    }
    sim_.col(best) = -shift;
    std::swap(fval_[best], fpole_);
}

TrustRegionResult Driver::run(std::span<const double> x0, double rhobeg, double rhoend) {
    const auto n = static_cast<Eigen::Index>(n_);
    double rho = rhobeg;
    bool converged = false;
    try {
        pole_ = Eigen::Map<const VectorXd>(x0.data(), n);
        fpole_ = eval(pole_);
        for (Eigen::Index j = 0; j < n; ++j) {
            VectorXd x = pole_;
            x[j] += rho;
            const double f = eval(x);
            if (fpole_ <= f) {
                sim_(j, j) = rho;
                fval_[j] = f;
            } else {
                // The new point becomes the pole; earlier vertices are re-expressed
                // relative to it.
                for (Eigen::Index k = 0; k <= j; ++k) {
                    sim_(j, k) = -rho;
                }
                fval_[j] = fpole_;
                fpole_ = f;
                pole_ = x;
            }
        }
        simplex_ready_ = true;

        bool trust_branch = true;
        for (;;) {
            make_pole_best();
            const MatrixXd simi = sim_.partialPivLu().inverse();
            // Linear model gradient at the pole.
            const VectorXd g = simi.transpose() * (fval_.array() - fpole_).matrix();

            const double parsig = kAlpha * rho;
            const double pareta = kBeta * rho;
            VectorXd vsig(n), veta(n);
            bool acceptable = true;
            for (Eigen::Index j = 0; j < n; ++j) {
                vsig[j] = 1.0 / simi.row(j).norm();
                veta[j] = sim_.col(j).norm();
                if (vsig[j] < parsig || veta[j] > pareta) {
                    acceptable = false;
                }
            }

            bool reduce = false;
            if (!trust_branch && !acceptable) {
                // Geometry step: replace the vertex that spoils the simplex most.
                Eigen::Index jdrop = -1;
                double worst = pareta;
                for (Eigen::Index j = 0; j < n; ++j) {
                    if (veta[j] > worst) {
                        jdrop = j;
                        worst = veta[j];
                    }
                }
                if (jdrop < 0) {
                    worst = parsig;
                    for (Eigen::Index j = 0; j < n; ++j) {
                        if (vsig[j] < worst) {
                            jdrop = j;
                            worst = vsig[j];
                        }
                    }
                }
                VectorXd dx = (kGamma * rho * vsig[jdrop]) * simi.row(jdrop).transpose();
                if (g.dot(dx) > 0.0) {
                    dx = -dx;
                }
                const double f = eval(pole_ + dx);
                sim_.col(jdrop) = dx;
                fval_[jdrop] = f;
                trust_branch = true;
                continue;
            }

            // Trust-region step: the linear model's minimizer on the ball of radius rho.
            const double gnorm = g.norm();
            VectorXd dx = VectorXd::Zero(n);
            if (gnorm > 0.0) {
                dx = (-rho / gnorm) * g;
            }
            if (dx.squaredNorm() < 0.25 * rho * rho) {
                reduce = true;
            } else {
                const double prerem = -g.dot(dx);
                const double fnew = eval(pole_ + dx);
                const double trured = fpole_ - fnew;

                double ratio = trured <= 0.0 ? 1.0 : 0.0;
                Eigen::Index jdrop = -1;
                VectorXd sigbar(n);
                for (Eigen::Index j = 0; j < n; ++j) {
                    const double t = std::abs(simi.row(j).dot(dx));
                    if (t > ratio) {
                        jdrop = j;
                        ratio = t;
                    }
                    sigbar[j] = t * vsig[j];
                }
                double edgmax = kDelta * rho;
                Eigen::Index l = -1;
                for (Eigen::Index j = 0; j < n; ++j) {
                    if (sigbar[j] >= parsig || sigbar[j] >= vsig[j]) {
                        const double t = trured > 0.0 ? (dx - sim_.col(j)).norm() : veta[j];
                        if (t > edgmax) {
                            l = j;
                            edgmax = t;
                        }
                    }
                }
                if (l >= 0) {
                    jdrop = l;
                }
                if (jdrop < 0) {
                    reduce = true;
                } else {
                    sim_.col(jdrop) = dx;
                    fval_[jdrop] = fnew;
                    reduce = !(trured > 0.0 && trured >= 0.1 * prerem);
                }
            }

            if (reduce) {
                if (!acceptable) {
                    trust_branch = false;
                    continue;
                }
                if (rho > rhoend) {
                    rho *= 0.5;
                    if (rho <= 1.5 * rhoend) {
                        rho = rhoend;
                    }
                    continue;
                }
                converged = true;
                break;
            }
        }
    } catch (const BudgetExhausted &) {
    }

    TrustRegionResult result;
    result.evaluations = evals_;
    result.converged = converged;
    if (simplex_ready_) {
        make_pole_best();
    }
    result.x.assign(pole_.data(), pole_.data() + n);
    result.f = fpole_;
    return result;
}

} // namespace

TrustRegionResult minimize_trust_region(const Objective &objective, std::span<const double> x0,
                                        const TrustRegionOptions &options) {
    options.validate();
    if (x0.empty()) {
        throw DomainError("trust-region minimization needs at least one parameter");
    }
    Driver driver(objective, x0.size(), options.max_evaluations);
    return driver.run(x0, options.initial_radius, options.final_radius);
}

} // namespace vqopt
