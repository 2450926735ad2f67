#pragma once

#include <array>
#include <vector>

#include "qctl/fields.h"
#include "qctl/schedule.h"
#include "qctl/types.h"

namespace qctl {

// Error Hamiltonian expressed in the frozen rotating basis:
// entries <mu_k(t)|H1(t)|mu_n(t)> e^{-i(f_k - f_n)}. Hermitian.
Eigen::MatrixXcd dtilde_err(const PathSchedule& schedule, const ErrorModel& model, double t);

// Running integral M(t) of dtilde_err from the schedule start; its
// off-diagonal magnitudes set the leading-order transition probabilities.
struct ErrorRotation {
    Eigen::MatrixXcd m;
    double at_time = 0.0;
    ErrorModel model;
};

ErrorRotation error_rotation(const PathSchedule& schedule, const ErrorModel& model, double t);

// Closed-form integrands of the off-diagonal M elements for the commutative
// model, as functions of the schedule angles. Each equals the corresponding
// dtilde_err entry, giving an independent route to the same integrals.
struct CommutativeKernels {
    complexd k12;
    complexd k13;
    complexd k23;
};

CommutativeKernels m_kernels_commutative(const PathSchedule& schedule, double t);

// Leading-order fidelity along path k: F = 1 - eps^2 sum_{n != k} |M_kn|^2.
struct FidelityEstimate {
    double value = 1.0;
    int order = 2;
    int path_index = 0;
};

FidelityEstimate magnus_fidelity(const PathSchedule& schedule, const ErrorModel& model,
                                 int path_index, double t);

// Second-order interaction-picture propagator
// U = 1 - i eps M - (eps^2/2)(M^2 + C2), C2 the ordered commutator integral.
Eigen::MatrixXcd magnus_propagator(const PathSchedule& schedule, const ErrorModel& model,
                                   double t);

// min over grid samples of |f_k' - f_n'| / max(|d/dt <mu_k|H1|mu_n>|, floor).
// Large values mean the phase-rate separation outruns the error matrix
// element and the transition integral averages away.
double correction_margin(const PathSchedule& schedule, const ErrorModel& model, int path_k,
                         int path_n, const TimeGrid& grid);

// Integration-by-parts estimate of |M_12(T)|: partial sums of
// |∫ e^{if} d[(dalpha/2f')^k g / f']| truncated after k_max terms.
struct BoundSeries {
    std::vector<double> terms;
    double total = 0.0;
};

BoundSeries m12_bound_commutative(const PathSchedule& schedule, int k_max = 3);
BoundSeries m12_bound_noncommutative(const PathSchedule& schedule, int k_max = 3);
// Single-term estimate for |M_23(T)| (diagnostic only; not a proven bound).
double m23_bound_commutative(const PathSchedule& schedule);

// Bundled diagnostics for one (schedule, model) configuration.
struct AuditReport {
    double lambda = 0.0;
    ErrorModel model;
    double m12 = 0.0, m13 = 0.0, m23 = 0.0;
    double margin_12 = 0.0, margin_13 = 0.0, margin_23 = 0.0;
    double fidelity_magnus = 1.0;
    double fidelity_numerical = 1.0;
    BoundSeries m12_bound;
    double m23_bound = 0.0;
};

AuditReport audit(double lambda, const ErrorModel& model, int n_steps);

}  // namespace qctl
