#include <doctest.h>

#include <cstdlib>

#include <cmath>
#include <limits>
#include <numbers>

#include "qctl/scenarios.h"

using namespace qctl;

namespace {

constexpr double kPi = std::numbers::pi;

TransferSpec transfer_spec(double lam, ErrorModel::Kind kind, double eps, int n_steps = 0) {
    TransferSpec spec;
    spec.lambda = lam;
    spec.model = ErrorModel{kind, eps};
    spec.n_steps = n_steps > 0 ? n_steps : default_steps(lam);
    return spec;
}

CyclicSpec cyclic_spec(double lam, ErrorModel::Kind kind, double eps, int loops = 2) {
    CyclicSpec spec;
    spec.lambda = lam;
    spec.model = ErrorModel{kind, eps};
    spec.loops = loops;
    spec.n_steps_per_period = 4800;
    return spec;
}

}  // namespace

TEST_CASE("error-free transfers are exact for every phase ratio") {
    for (double lam : {0.0, 3.0, 5.0, 10.0}) {
        const SimulationResult run =
            single_transfer(transfer_spec(lam, ErrorModel::Kind::none, 0.0));
        CHECK(std::abs(run.fidelity_at.at(1.0) - 1.0) < 1e-6);
        CHECK(std::abs(run.fidelity_at.at(0.5) - 1.0) < 1e-6);
    }
}

TEST_CASE("parallel transport is fragile to drive scaling") {
    const SimulationResult run =
        single_transfer(transfer_spec(0.0, ErrorModel::Kind::commutative, -0.2));
    CHECK(run.fidelity_at.at(1.0) == doctest::Approx(0.673).epsilon(0.015));
}

TEST_CASE("parallel transport under the detuning-deviation error") {
    for (double eps : {-0.2, 0.2}) {
        const SimulationResult run =
            single_transfer(transfer_spec(0.0, ErrorModel::Kind::noncommutative, eps));
        CHECK(std::abs(run.fidelity_at.at(1.0) - 0.883) < 0.01);
    }
}

TEST_CASE("fidelity under drive scaling improves monotonically with the phase ratio") {
    double previous = 0.0;
    for (double lam : {0.0, 3.0, 5.0, 10.0}) {
        const double f =
            single_transfer(transfer_spec(lam, ErrorModel::Kind::commutative, -0.2))
                .fidelity_at.at(1.0);
        CHECK(f >= previous);
        previous = f;
    }
}

TEST_CASE("population projections") {
    SimulationResult result;
    result.states.push_back(StateVector::basis(3, 2));
    Eigen::VectorXcd superposition(3);
    superposition << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
    result.states.emplace_back(superposition);
    const auto p = populations(result);
    CHECK(p[0][0] == doctest::Approx(0.0));
    CHECK(p[0][2] == doctest::Approx(1.0));
    CHECK(p[1][0] == doctest::Approx(0.5));
    CHECK(p[1][1] == doctest::Approx(0.5));

    SimulationResult empty;
    CHECK_THROWS_AS(populations(empty), contract_error);
}

TEST_CASE("populations always sum to one along a run") {
    const SimulationResult run =
        single_transfer(transfer_spec(5.0, ErrorModel::Kind::commutative, -0.2, 1000));
    for (const auto& p : run.populations) {
        CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) < 1e-9);
    }
}

TEST_CASE("error-free loop returns home") {
    for (double lam : {0.0, 3.0, 5.0, 10.0}) {
        const SimulationResult run =
            cyclic_transfer(cyclic_spec(lam, ErrorModel::Kind::none, 0.0, 1));
        CHECK(std::abs(run.fidelity_at.at(0.5) - 1.0) < 1e-6);
        CHECK(std::abs(run.fidelity_at.at(1.0) - 1.0) < 1e-6);
        CHECK(std::abs(run.fidelity_at.at(1.5) - 1.0) < 1e-6);
        // final state is |0> again
        const auto& back_home = run.populations.back();
        CHECK(std::abs(back_home[0] - 1.0) < 1e-6);
        CHECK(back_home[1] < 1e-6);
        CHECK(back_home[2] < 1e-6);
    }
}

TEST_CASE("thread cap does not change sweep results") {
    std::vector<double> epsilons;
    for (int i = -4; i <= 4; ++i) {
        epsilons.push_back(i * 0.05);
    }
    setenv("QCTL_THREADS", "3", 1);
    const auto threaded = epsilon_sweep({0.0, 5.0}, epsilons, ErrorModel::Kind::commutative, 1000);
    setenv("QCTL_THREADS", "1", 1);
    const auto serial = epsilon_sweep({0.0, 5.0}, epsilons, ErrorModel::Kind::commutative, 1000);
    unsetenv("QCTL_THREADS");
    REQUIRE(threaded.size() == serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(threaded[i].lambda == serial[i].lambda);
        CHECK(threaded[i].epsilon == serial[i].epsilon);
        CHECK(threaded[i].fidelity == serial[i].fidelity);
    }
}

TEST_CASE("unprotected loop, scaled drives: checkpoint populations and revival peaks") {
    const SimulationResult run =
        cyclic_transfer(cyclic_spec(0.0, ErrorModel::Kind::commutative, -0.2));
    CHECK(std::abs(run.fidelity_at.at(0.5) - 0.898) < 0.01);
    CHECK(std::abs(run.fidelity_at.at(1.0) - 0.673) < 0.01);
    CHECK(std::abs(run.fidelity_at.at(1.5) - 0.750) < 0.01);

    const Peak pe = find_peak(run, 2, 0.5, 0.8);
    CHECK(std::abs(pe.value - 0.984) < 0.01);
    CHECK(std::abs(pe.t - 0.62) < 0.02);
    const Peak p0 = find_peak(run, 0, 1.5, 1.9);
    CHECK(std::abs(p0.value - 0.990) < 0.01);
    CHECK(std::abs(p0.t - 1.70) < 0.02);
}

TEST_CASE("protected loop keeps the populations near one") {
    const SimulationResult run =
        cyclic_transfer(cyclic_spec(5.0, ErrorModel::Kind::commutative, -0.2));
    for (const auto& [t, value] : run.fidelity_at) {
        CHECK(value > 0.95);
    }
}

TEST_CASE("checkpoint values are grid-converged") {
    const SimulationResult coarse =
        single_transfer(transfer_spec(5.0, ErrorModel::Kind::commutative, -0.2, 4000));
    const SimulationResult fine =
        single_transfer(transfer_spec(5.0, ErrorModel::Kind::commutative, -0.2, 8000));
    for (const auto& [t, value] : coarse.fidelity_at) {
        CHECK(std::abs(value - fine.fidelity_at.at(t)) < 5e-4);
    }

    const SimulationResult loop_coarse =
        cyclic_transfer(cyclic_spec(5.0, ErrorModel::Kind::commutative, -0.2, 1));
    CyclicSpec finer = cyclic_spec(5.0, ErrorModel::Kind::commutative, -0.2, 1);
    finer.n_steps_per_period = 9600;
    const SimulationResult loop_fine = cyclic_transfer(finer);
    for (const auto& [t, value] : loop_coarse.fidelity_at) {
        CHECK(std::abs(value - loop_fine.fidelity_at.at(t)) < 5e-4);
    }
}

TEST_CASE("sweep rows are complete, ordered, and record bad points") {
    const std::vector<double> lambdas = {0.0, 5.0};
    const std::vector<double> epsilons = {-0.2, -0.1, 0.0, 0.1,
                                          std::numeric_limits<double>::quiet_NaN()};
    const auto rows =
        epsilon_sweep(lambdas, epsilons, ErrorModel::Kind::commutative, 1000);
    REQUIRE(rows.size() == 10);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].lambda == lambdas[i / 5]);
        if (i % 5 != 4) {
            CHECK(rows[i].ok);
            CHECK(rows[i].epsilon == epsilons[i % 5]);
        } else {
            CHECK_FALSE(rows[i].ok);
            CHECK_FALSE(rows[i].message.empty());
        }
    }
    // error-free points are exact
    CHECK(std::abs(rows[2].fidelity - 1.0) < 1e-6);

    CHECK_THROWS_AS(epsilon_sweep({}, {0.1}, ErrorModel::Kind::commutative, 1000),
                    contract_error);
}

TEST_CASE("spec validation") {
    TransferSpec coarse;
    coarse.n_steps = 500;
    CHECK_THROWS_AS(single_transfer(coarse), contract_error);

    CyclicSpec no_loops = cyclic_spec(5.0, ErrorModel::Kind::none, 0.0, 0);
    CHECK_THROWS_AS(cyclic_transfer(no_loops), contract_error);

    CyclicSpec odd = cyclic_spec(5.0, ErrorModel::Kind::none, 0.0, 1);
    odd.n_steps_per_period = 4801;
    CHECK_THROWS_AS(cyclic_transfer(odd), contract_error);
}

TEST_CASE("peak finder validates its window") {
    const SimulationResult run =
        single_transfer(transfer_spec(0.0, ErrorModel::Kind::none, 0.0, 1000));
    CHECK_THROWS_AS(find_peak(run, 2, 5.0, 6.0), domain_error);
    CHECK_THROWS_AS(find_peak(run, 7, 0.0, 1.0), dimension_error);
    // clean transfer: P_e peaks at mid-run with value 1
    const Peak pe = find_peak(run, 2, 0.2, 0.8);
    CHECK(pe.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(pe.t == doctest::Approx(0.5).epsilon(1e-3));
}
