#include "qctl/fields.h"

#include <cmath>

#include "qctl/ancillary.h"

namespace qctl {

namespace {

void set_polar(double& amplitude, double& phase, complexd z) {
    amplitude = std::abs(z);
    phase = (amplitude == 0.0) ? 0.0 : std::arg(z);
}

double sign_of(double x) {
    return x < 0.0 ? -1.0 : 1.0;
}

FieldSet from_complex(double t, double de, double d1, double d0, complexd r0, complexd r1,
                      complexd r2) {
    FieldSet f;
    f.at_time = t;
    f.delta_e = de;
    f.delta_1 = d1;
    f.delta_0 = d0;
    set_polar(f.omega_0, f.varphi_0, r0);
    set_polar(f.omega_1, f.varphi_1, r1);
    set_polar(f.omega_2, f.varphi_2, r2);
    return f;
}

}  // namespace

FieldSet synthesize_fields_lambda(const PathSchedule& schedule, double t) {
    const PathSchedule::Angles a = schedule.angles_at(t);
    const PhaseFunctions ph = phase_functions(schedule, t);

    const double sin2phi = std::sin(2.0 * a.phi);
    const double cos2phi = std::cos(2.0 * a.phi);
    const double delta = ph.dalpha + 2.0 * a.lambda * a.dphi * cos2phi;
    const double st = std::sin(a.theta), ct = std::cos(a.theta);

    const double rabi_be =
        std::abs(a.dphi) * std::sqrt(1.0 + a.lambda * a.lambda * sin2phi * sin2phi);
    const complexd half_a0 = std::polar(1.0, ph.alpha0 / 2.0);
    const complexd r0 = -rabi_be * st / half_a0;
    const complexd r1 = -rabi_be * ct * half_a0;
    const complexd r2 =
        -a.dtheta - (delta / 4.0) * std::sin(2.0 * a.theta) / (half_a0 * half_a0);

    return from_complex(t, delta, -delta * ct * ct, -delta * st * st, r0, r1, r2);
}

FieldSet synthesize_fields_general(const PathSchedule& schedule, double t) {
    const PathSchedule::Angles a = schedule.angles_at(t);
    const PhaseFunctions ph = phase_functions(schedule, t);

    // theta / f1 block; f1 is constant here, so its rate terms drop out.
    const double f1_rate = 0.0;
    const double sin2th = std::sin(2.0 * a.theta);
    const double delta_a = ph.dalpha0 + 2.0 * f1_rate * std::cos(2.0 * a.theta);
    const double rabi_a =
        -sign_of(a.dtheta) *
        std::sqrt(a.dtheta * a.dtheta + f1_rate * f1_rate * sin2th * sin2th);

    // phi / f block
    const double fdot = a.lambda * a.dphi;
    const double sin2phi = std::sin(2.0 * a.phi);
    const double delta =
        ph.dalpha + 2.0 * fdot * std::cos(2.0 * a.phi) + f1_rate;
    const double rabi =
        -sign_of(a.dphi) * std::sqrt(a.dphi * a.dphi + fdot * fdot * sin2phi * sin2phi);

    const double st = std::sin(a.theta), ct = std::cos(a.theta);
    const complexd half_a0 = std::polar(1.0, ph.alpha0 / 2.0);
    const complexd r0 = rabi * st / half_a0;
    const complexd r1 = rabi * ct * half_a0;
    const complexd r2 = rabi_a - 0.5 * delta * st * ct / (half_a0 * half_a0);

    return from_complex(t, delta, -delta * ct * ct + delta_a, -delta * st * st - delta_a, r0, r1,
                        r2);
}

Eigen::MatrixXcd assemble_h0(const FieldSet& fields) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
    h(0, 0) = fields.delta_0 / 2.0;
    h(1, 1) = fields.delta_1 / 2.0;
    h(2, 2) = fields.delta_e / 2.0;
    h(2, 0) = fields.rabi_0();
    h(0, 2) = std::conj(h(2, 0));
    h(2, 1) = fields.rabi_1();
    h(1, 2) = std::conj(h(2, 1));
    h(1, 0) = fields.rabi_2();
    h(0, 1) = std::conj(h(1, 0));
    if (!h.allFinite()) {
        throw numeric_error("field set has non-finite entries");
    }
    return h;
}

Eigen::MatrixXcd error_hamiltonian(const FieldSet& fields, const ErrorModel& model) {
    Eigen::MatrixXcd h1 = Eigen::MatrixXcd::Zero(3, 3);
    switch (model.kind) {
        case ErrorModel::Kind::none:
            throw contract_error("error hamiltonian requested for the error-free model");
        case ErrorModel::Kind::commutative:
            h1(2, 0) = fields.rabi_0();
            h1(2, 1) = fields.rabi_1();
            h1(1, 0) = fields.rabi_2();
            h1(0, 2) = std::conj(h1(2, 0));
            h1(1, 2) = std::conj(h1(2, 1));
            h1(0, 1) = std::conj(h1(1, 0));
            break;
        case ErrorModel::Kind::noncommutative:
            h1(1, 1) = -fields.delta_1 / 2.0;
            h1(2, 0) = fields.rabi_0();
            h1(0, 2) = std::conj(h1(2, 0));
            break;
    }
    if (!h1.allFinite()) {
        throw numeric_error("error hamiltonian has non-finite entries");
    }
    return h1;
}

HamiltonianFn hamiltonian_fn(const PathSchedule& schedule, const ErrorModel& model) {
    return [schedule, model](double t) {
        const FieldSet f = synthesize_fields_lambda(schedule, t);
        Eigen::MatrixXcd h = assemble_h0(f);
        if (model.kind != ErrorModel::Kind::none && model.epsilon != 0.0) {
            h += model.epsilon * error_hamiltonian(f, model);
        }
        return h;
    };
}

}  // namespace qctl
