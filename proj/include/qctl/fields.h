#pragma once

#include "qctl/propagate.h"
#include "qctl/schedule.h"
#include "qctl/types.h"

namespace qctl {

// Instantaneous lab-frame controls. Amplitudes are nonnegative; drive signs
// live in the phases (normal form: phase in (-pi, pi]).
struct FieldSet {
    double delta_e = 0.0;
    double delta_1 = 0.0;
    double delta_0 = 0.0;
    double omega_0 = 0.0;
    double omega_1 = 0.0;
    double omega_2 = 0.0;
    double varphi_0 = 0.0;
    double varphi_1 = 0.0;
    double varphi_2 = 0.0;
    double at_time = 0.0;

    complexd rabi_0() const { return std::polar(omega_0, varphi_0); }
    complexd rabi_1() const { return std::polar(omega_1, varphi_1); }
    complexd rabi_2() const { return std::polar(omega_2, varphi_2); }
};

struct ErrorModel {
    enum class Kind { none, commutative, noncommutative };
    Kind kind = Kind::none;
    double epsilon = 0.0;
};

// Control synthesis from the schedule's closed-form branch:
//   Delta_e = dalpha + 2*lambda*dphi*cos(2phi), Delta_1/0 = -Delta_e * cos^2/sin^2(theta)
//   Omega_0/1 = -|dphi| sqrt(1 + lambda^2 sin^2 2phi) * sin/cos(theta) * e^{∓i alpha0/2}
//   Omega_2   = -dtheta - (Delta_e/4) sin(2 theta) e^{-i alpha0}
FieldSet synthesize_fields_lambda(const PathSchedule& schedule, double t);

// Same fields from the two-subsystem inversion (theta/f1 and phi/f blocks),
// with drive signs following the ramp directions. Agrees with the lambda
// form to 1e-9 wherever both apply.
FieldSet synthesize_fields_general(const PathSchedule& schedule, double t);

// 3x3 hermitian Hamiltonian in basis order (|0>, |1>, |e>): diagonal
// (Delta_0/2, Delta_1/2, Delta_e/2), drives Omega_0 on |e><0|, Omega_1 on
// |e><1|, Omega_2 on |1><0|.
Eigen::MatrixXcd assemble_h0(const FieldSet& fields);

// Unscaled error Hamiltonian H1 (the caller multiplies by epsilon).
// commutative: the full drive part of H0. noncommutative: a level-|1>
// detuning deviation of magnitude Delta_1/2 together with the Omega_0 drive
// term (the deviation enters with sign opposite to Delta_1's own sign).
Eigen::MatrixXcd error_hamiltonian(const FieldSet& fields, const ErrorModel& model);

// H(t) = H0(t) + epsilon * H1(t) as a propagation-ready callable.
HamiltonianFn hamiltonian_fn(const PathSchedule& schedule, const ErrorModel& model);

}  // namespace qctl
