#include "qctl/propagate.h"

#include <cmath>

#include "qctl/linalg.h"

namespace qctl {

namespace {

Eigen::MatrixXcd step_unitary(const HamiltonianFn& hamiltonian, double t_mid, double dt,
                              Eigen::Index expected_dim) {
    Eigen::MatrixXcd h = hamiltonian(t_mid);
    if (h.rows() != h.cols() || h.rows() != expected_dim) {
        throw dimension_error("hamiltonian dimension mismatch");
    }
    if (!h.allFinite()) {
        throw numeric_error("hamiltonian has non-finite entries");
    }
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (hermiticity_defect(h) > 1e-10 * scale) {
        throw contract_error("hamiltonian is not hermitian at a sampled midpoint");
    }
    return matrix_exponential(complexd(0.0, -dt) * h, 1e-8 * scale * std::abs(dt) + 1e-12);
}

}  // namespace

std::vector<StateVector> propagate(const HamiltonianFn& hamiltonian, const StateVector& psi0,
                                   const TimeGrid& grid) {
    psi0.require_normalized();
    std::vector<StateVector> trajectory;
    trajectory.reserve(grid.n_samples());
    trajectory.push_back(psi0);
    Eigen::VectorXcd psi = psi0.amplitudes;
    const double dt = grid.dt();
    for (int i = 0; i < grid.n_steps; ++i) {
        psi = step_unitary(hamiltonian, grid.midpoint(i), dt, psi.size()) * psi;
        if (!(std::abs(psi.squaredNorm() - 1.0) <= 1e-9)) {
            throw numeric_error("propagation lost normalization");
        }
        trajectory.emplace_back(psi);
    }
    return trajectory;
}

Operator propagator_accumulate(const HamiltonianFn& hamiltonian, const TimeGrid& grid) {
    const Eigen::Index dim = hamiltonian(grid.t_start).rows();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    const double dt = grid.dt();
    for (int i = 0; i < grid.n_steps; ++i) {
        u = step_unitary(hamiltonian, grid.midpoint(i), dt, dim) * u;
    }
    return Operator::unitary(std::move(u));
}

}  // namespace qctl
