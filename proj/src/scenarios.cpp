#include "qctl/scenarios.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "qctl/propagate.h"

namespace qctl {

namespace {

constexpr double kPi = std::numbers::pi;

std::array<double, 3> level_populations(const StateVector& psi) {
    return {psi.population(0), psi.population(1), psi.population(2)};
}

SimulationResult run_schedule(const PathSchedule& schedule, const ErrorModel& model,
                              const TimeGrid& grid) {
    SimulationResult result;
    const HamiltonianFn h = hamiltonian_fn(schedule, model);
    const std::vector<StateVector> trajectory =
        propagate(h, StateVector::basis(3, 0), grid);
    result.times.reserve(trajectory.size());
    result.populations.reserve(trajectory.size());
    for (int i = 0; i < grid.n_samples(); ++i) {
        result.times.push_back(grid.sample(i));
        result.populations.push_back(level_populations(trajectory[i]));
    }
    result.states = trajectory;
    return result;
}

int sweep_thread_cap() {
    if (const char* env = std::getenv("QCTL_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) {
            return n;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int default_steps(double lambda) {
    return std::abs(lambda) >= 10.0 ? 8000 : 4000;
}

SimulationResult single_transfer(const TransferSpec& spec) {
    if (spec.n_steps < 1000) {
        throw contract_error("single transfer needs n_steps >= 1000");
    }
    if (spec.n_steps % 2 != 0) {
        throw contract_error("single transfer needs an even n_steps");
    }
    const PathSchedule schedule =
        single_transfer_schedule(spec.lambda, kPi / 2.0, spec.duration);
    const TimeGrid grid(0.0, spec.duration, spec.n_steps);
    SimulationResult result = run_schedule(schedule, spec.model, grid);
    const int mid = spec.n_steps / 2;
    result.fidelity_at[spec.duration / 2.0] = result.populations[mid][2];
    result.fidelity_at[spec.duration] = result.populations[spec.n_steps][1];
    return result;
}

std::vector<SweepRow> epsilon_sweep(const std::vector<double>& lambdas,
                                    const std::vector<double>& epsilons,
                                    ErrorModel::Kind kind, int n_steps) {
    if (lambdas.empty() || epsilons.empty()) {
        throw contract_error("sweep needs nonempty lambda and epsilon grids");
    }
    // rows come out ordered by (lambda, epsilon); non-finite grid entries sort last
    auto ordered = [](std::vector<double> v) {
        std::sort(v.begin(), v.end(), [](double a, double b) {
            if (std::isnan(a)) {
                return false;
            }
            if (std::isnan(b)) {
                return true;
            }
            return a < b;
        });
        return v;
    };
    const std::vector<double> lam_grid = ordered(lambdas);
    const std::vector<double> eps_grid = ordered(epsilons);
    std::vector<SweepRow> rows(lam_grid.size() * eps_grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t job = next.fetch_add(1); job < rows.size();
             job = next.fetch_add(1)) {
            const double lambda = lam_grid[job / eps_grid.size()];
            const double epsilon = eps_grid[job % eps_grid.size()];
            SweepRow& row = rows[job];
            row.lambda = lambda;
            row.epsilon = epsilon;
            try {
                TransferSpec spec;
                spec.lambda = lambda;
                spec.model = ErrorModel{kind, epsilon};
                spec.n_steps = n_steps > 0 ? n_steps : default_steps(lambda);
                const SimulationResult run = single_transfer(spec);
                row.fidelity = run.fidelity_at.at(spec.duration);
                row.ok = true;
            } catch (const std::exception& e) {
                row.ok = false;
                row.message = e.what();
            }
        }
    };
    const int n_threads =
        std::min<int>(sweep_thread_cap(), static_cast<int>(rows.size()));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int i = 0; i < n_threads; ++i) {
            pool.emplace_back(worker);
        }
        for (std::thread& th : pool) {
            th.join();
        }
    }
    return rows;
}

SimulationResult cyclic_transfer(const CyclicSpec& spec) {
    if (spec.loops < 1) {
        throw contract_error("cyclic run needs at least one loop");
    }
    if (spec.n_steps_per_period < 1000) {
        throw contract_error("cyclic run needs n_steps_per_period >= 1000");
    }
    if (spec.n_steps_per_period % 2 != 0) {
        throw contract_error("cyclic run needs an even n_steps_per_period");
    }
    const PathSchedule schedule = cyclic_schedule(spec.lambda, spec.loops, kPi / 2.0);
    const double t_end = 1.5 * spec.loops;
    const int n_steps = spec.n_steps_per_period * 3 * spec.loops / 2;
    const TimeGrid grid(0.0, t_end, n_steps);
    SimulationResult result = run_schedule(schedule, spec.model, grid);
    // per-loop checkpoints: P_e mid-transfer, P_1 at the hand-off, P_0 at
    // the loop close
    for (int k = 0; k < spec.loops; ++k) {
        const int base = k * spec.n_steps_per_period * 3 / 2;
        const double t0 = 1.5 * k;
        result.fidelity_at[t0 + 0.5] =
            result.populations[base + spec.n_steps_per_period / 2][2];
        result.fidelity_at[t0 + 1.0] =
            result.populations[base + spec.n_steps_per_period][1];
        result.fidelity_at[t0 + 1.5] =
            result.populations[base + spec.n_steps_per_period * 3 / 2][0];
    }
    return result;
}

std::vector<std::array<double, 3>> populations(const SimulationResult& result) {
    if (result.states.empty()) {
        throw contract_error("no trajectory to project");
    }
    std::vector<std::array<double, 3>> out;
    out.reserve(result.states.size());
    for (const StateVector& psi : result.states) {
        const std::array<double, 3> p = level_populations(psi);
        if (std::abs(p[0] + p[1] + p[2] - 1.0) > 1e-9) {
            throw numeric_error("populations do not sum to one");
        }
        out.push_back(p);
    }
    return out;
}

Peak find_peak(const SimulationResult& result, int level, double t_lo, double t_hi) {
    if (level < 0 || level > 2) {
        throw dimension_error("level must be 0, 1 or 2");
    }
    std::size_t best = result.times.size();
    for (std::size_t i = 0; i < result.times.size(); ++i) {
        if (result.times[i] < t_lo || result.times[i] > t_hi) {
            continue;
        }
        if (best == result.times.size() ||
            result.populations[i][level] > result.populations[best][level]) {
            best = i;
        }
    }
    if (best == result.times.size()) {
        throw domain_error("peak window contains no samples");
    }
    Peak peak{result.times[best], result.populations[best][level]};
    if (best == 0 || best + 1 == result.times.size()) {
        return peak;
    }
    // parabolic refinement through the three nearest samples
    const double ym = result.populations[best - 1][level];
    const double y0 = result.populations[best][level];
    const double yp = result.populations[best + 1][level];
    const double denom = ym - 2.0 * y0 + yp;
    if (denom < 0.0) {
        const double shift = 0.5 * (ym - yp) / denom;
        const double dt = result.times[best] - result.times[best - 1];
        peak.t += shift * dt;
        peak.value = y0 - 0.25 * (ym - yp) * shift;
    }
    return peak;
}

}  // namespace qctl
