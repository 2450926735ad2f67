#pragma once

#include <functional>
#include <vector>

#include "qctl/types.h"

namespace qctl {

// Time-dependent hermitian generator H(t).
using HamiltonianFn = std::function<Eigen::MatrixXcd(double)>;

// Steps the Schrodinger equation with the midpoint exponential
// U_step = exp(-i H(t_mid) dt), which is exactly unitary per step.
// Returns the state at every grid sample (n_steps + 1 entries).
std::vector<StateVector> propagate(const HamiltonianFn& hamiltonian, const StateVector& psi0,
                                   const TimeGrid& grid);

// Left-ordered product of the per-step midpoint exponentials.
Operator propagator_accumulate(const HamiltonianFn& hamiltonian, const TimeGrid& grid);

}  // namespace qctl
