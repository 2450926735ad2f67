#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qctl/ancillary.h"
#include "qctl/fields.h"
#include "qctl/linalg.h"

using namespace qctl;

namespace {

constexpr double kPi = std::numbers::pi;

double field_diff(const FieldSet& a, const FieldSet& b) {
    double d = 0.0;
    d = std::max(d, std::abs(a.delta_e - b.delta_e));
    d = std::max(d, std::abs(a.delta_1 - b.delta_1));
    d = std::max(d, std::abs(a.delta_0 - b.delta_0));
    d = std::max(d, std::abs(a.rabi_0() - b.rabi_0()));
    d = std::max(d, std::abs(a.rabi_1() - b.rabi_1()));
    d = std::max(d, std::abs(a.rabi_2() - b.rabi_2()));
    return d;
}

}  // namespace

TEST_CASE("parallel-transport limit: no detunings, plain bright-state drives") {
    const PathSchedule schedule = single_transfer_schedule(0.0, kPi / 2.0, 1.0);
    for (double t : {0.1, 0.35, 0.5, 0.8}) {
        const FieldSet f = synthesize_fields_lambda(schedule, t);
        const double theta = schedule.angles_at(t).theta;
        CHECK(f.delta_e == doctest::Approx(0.0));
        CHECK(f.delta_1 == doctest::Approx(0.0));
        CHECK(f.delta_0 == doctest::Approx(0.0));
        CHECK(f.omega_0 == doctest::Approx(kPi * std::abs(std::sin(theta))).epsilon(1e-12));
        CHECK(f.omega_1 == doctest::Approx(kPi * std::abs(std::cos(theta))).epsilon(1e-12));
        CHECK(f.omega_2 == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("drive values at the launch point") {
    const PathSchedule schedule = single_transfer_schedule(5.0, kPi / 2.0, 1.0);
    const FieldSet f = synthesize_fields_lambda(schedule, 0.0);
    CHECK(f.omega_0 == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(f.varphi_0 == doctest::Approx(3.0 * kPi / 4.0).epsilon(1e-12));
    CHECK(f.omega_1 == doctest::Approx(0.0).epsilon(1e-12));  // cos(theta) = 0 at start
    // re-assembled generator keeps the paths on track
    const HamiltonianFn h = hamiltonian_fn(schedule, ErrorModel{});
    CHECK(von_neumann_residual(schedule, h, 1e-3) < 1e-5);
}

TEST_CASE("detunings balance: Delta_1 + Delta_0 = -Delta_e") {
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    const PathSchedule schedule = single_transfer_schedule(5.0, kPi / 2.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const FieldSet f = synthesize_fields_lambda(schedule, pick(rng));
        CHECK(f.delta_1 + f.delta_0 == doctest::Approx(-f.delta_e).epsilon(1e-12));
    }
}

TEST_CASE("both synthesis routes agree, on forward and retracing stages") {
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> pick_t(0.0, 1.0);
    for (double lam : {0.0, 3.0, 5.0, 10.0}) {
        const PathSchedule transfer = single_transfer_schedule(lam, kPi / 2.0, 1.0);
        for (int i = 0; i < 100; ++i) {
            const double t = pick_t(rng);
            CHECK(field_diff(synthesize_fields_lambda(transfer, t),
                             synthesize_fields_general(transfer, t)) < 1e-9);
        }
        const PathSchedule loop = cyclic_schedule(lam, 1, kPi / 2.0);
        for (int i = 0; i < 100; ++i) {
            const double t = 1.5 * pick_t(rng);
            CHECK(field_diff(synthesize_fields_lambda(loop, t),
                             synthesize_fields_general(loop, t)) < 1e-9);
        }
    }
}

TEST_CASE("constant path-1 phase puts the whole 0-1 drive into -dtheta") {
    const PathSchedule schedule = single_transfer_schedule(5.0, kPi / 2.0, 1.0);
    for (double t : {0.2, 0.5, 0.75}) {
        const FieldSet f = synthesize_fields_general(schedule, t);
        const double dtheta = schedule.angles_at(t).dtheta;
        CHECK(f.rabi_2().real() == doctest::Approx(-std::abs(dtheta)).epsilon(1e-12));
        // Delta_a = 0: the detuning split carries no theta-subsystem part
        CHECK(f.delta_1 + f.delta_e * std::pow(std::cos(schedule.angles_at(t).theta), 2) ==
              doctest::Approx(0.0));
    }
}

TEST_CASE("stretching the protocol slows every field derivative accordingly") {
    const double stretch = 100.0;
    const PathSchedule fast = single_transfer_schedule(5.0, kPi / 2.0, 1.0);
    const PathSchedule slow = single_transfer_schedule(5.0, kPi / 2.0, stretch);
    const double h = 1e-6;
    auto delta_rate = [&](const PathSchedule& s, double t, double step) {
        return std::abs(synthesize_fields_lambda(s, t + step).delta_e -
                        synthesize_fields_lambda(s, t - step).delta_e) /
               (2.0 * step);
    };
    for (double frac : {0.21, 0.47, 0.73}) {
        const double rate_fast = delta_rate(fast, frac, h);
        const double rate_slow = delta_rate(slow, frac * stretch, h * stretch);
        CHECK(rate_fast / rate_slow == doctest::Approx(stretch * stretch).epsilon(1e-4));
    }
}

TEST_CASE("hamiltonian assembly") {
    CHECK(max_abs_diff(assemble_h0(FieldSet{}), Eigen::MatrixXcd::Zero(3, 3)) == 0.0);

    const PathSchedule schedule = single_transfer_schedule(5.0, kPi / 2.0, 1.0);
    for (double t : {0.0, 0.33, 0.77, 1.0}) {
        const FieldSet f = synthesize_fields_lambda(schedule, t);
        const Eigen::MatrixXcd h = assemble_h0(f);
        CHECK(hermiticity_defect(h) < 1e-15);
        CHECK(std::abs(h.trace().real() - (f.delta_0 + f.delta_1 + f.delta_e) / 2.0) < 1e-14);
        CHECK(std::abs(h.trace().imag()) < 1e-15);
    }

    FieldSet bad;
    bad.delta_e = std::nan("");
    CHECK_THROWS_AS(assemble_h0(bad), numeric_error);
}

TEST_CASE("drive-scaling error model is the detuning-free part of H0") {
    const PathSchedule schedule = single_transfer_schedule(5.0, kPi / 2.0, 1.0);
    const ErrorModel model{ErrorModel::Kind::commutative, -0.2};
    for (double t : {0.18, 0.5, 0.82}) {
        FieldSet f = synthesize_fields_lambda(schedule, t);
        const Eigen::MatrixXcd h1 = error_hamiltonian(f, model);
        FieldSet drives_only = f;
        drives_only.delta_e = drives_only.delta_1 = drives_only.delta_0 = 0.0;
        CHECK(max_abs_diff(h1, assemble_h0(drives_only)) == 0.0);

        // H0 + eps*H1: drives scale by (1 + eps), detunings stay put
        const Eigen::MatrixXcd total = assemble_h0(f) + model.epsilon * h1;
        CHECK(std::abs(total(2, 0) - 0.8 * f.rabi_0()) < 1e-15);
        CHECK(std::abs(total(1, 0) - 0.8 * f.rabi_2()) < 1e-15);
        CHECK(std::abs(total(1, 1) - f.delta_1 / 2.0) < 1e-15);
    }
}

TEST_CASE("detuning-deviation error model structure") {
    const PathSchedule schedule = single_transfer_schedule(5.0, kPi / 2.0, 1.0);
    const ErrorModel model{ErrorModel::Kind::noncommutative, -0.2};
    for (double t : {0.18, 0.5, 0.82}) {
        const FieldSet f = synthesize_fields_lambda(schedule, t);
        const Eigen::MatrixXcd h1 = error_hamiltonian(f, model);
        CHECK(std::abs(h1(2, 1)) == 0.0);  // the 1<->e drive is untouched
        CHECK(std::abs(h1(1, 0)) == 0.0);  // so is the 0<->1 drive
        CHECK(std::abs(h1(2, 0) - f.rabi_0()) == 0.0);
        CHECK(h1(1, 1).real() == doctest::Approx(-f.delta_1 / 2.0));
        CHECK(hermiticity_defect(h1) == 0.0);
    }
    CHECK_THROWS_AS(error_hamiltonian(FieldSet{}, ErrorModel{}), contract_error);
}
