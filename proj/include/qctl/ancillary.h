#pragma once

#include "qctl/propagate.h"
#include "qctl/schedule.h"
#include "qctl/types.h"

namespace qctl {

// Relative-phase angles of the rotating basis and their rates.
struct PhaseFunctions {
    double alpha0 = 0.0;
    double alpha = 0.0;
    double dalpha0 = 0.0;
    double dalpha = 0.0;
};

// The three rotating-frame basis states at one instant.
struct AncillaryBasis {
    Eigen::VectorXcd mu1, mu2, mu3;
    double alpha0 = 0.0;
    double alpha = 0.0;
    double at_time = 0.0;

    const Eigen::VectorXcd& mu(int k) const;
    Eigen::MatrixXcd gram() const;
};

// Accumulated path phases f1, f2, f3 at one instant (f2 + f3 tracks -f1's
// rate, which is zero for the constant-f1 schedules built here).
struct GlobalPhases {
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
};

// alpha0 = pi/2 (forced by the constant path-1 phase when theta moves) and
// alpha = arccot(-lambda*sin 2phi) on (0, pi). dalpha is evaluated from the
// quotient form and cross-checked against the closed-form derivative.
PhaseFunctions phase_functions(const PathSchedule& schedule, double t);

AncillaryBasis ancillary_states(const PathSchedule& schedule, double t);

GlobalPhases global_phases(const PathSchedule& schedule, double t);

// Product over stages of sum_k e^{i df_k} |mu_k(hi)><mu_k(lo)|, using phase
// increments so the propagator is exactly the identity at the start time.
Operator exact_propagator(const PathSchedule& schedule, double t);

// max entrywise | dPi_k/dt + i [H0, Pi_k] | over the three path projectors,
// with the derivative taken by central differences (h = 1e-6 of the period).
double von_neumann_residual(const PathSchedule& schedule, const HamiltonianFn& hamiltonian,
                            double t);

}  // namespace qctl
