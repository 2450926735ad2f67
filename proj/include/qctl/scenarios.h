#pragma once

#include <map>
#include <string>
#include <vector>

#include "qctl/fields.h"
#include "qctl/schedule.h"
#include "qctl/types.h"

namespace qctl {

struct TransferSpec {
    double lambda = 0.0;
    ErrorModel model;
    int n_steps = 4000;
    double duration = 1.0;
};

struct CyclicSpec {
    double lambda = 0.0;
    ErrorModel model;
    int n_steps_per_period = 4800;
    int loops = 2;
};

struct SimulationResult {
    std::vector<double> times;
    std::vector<StateVector> states;
    std::vector<std::array<double, 3>> populations;  // P0, P1, Pe per sample
    std::map<double, double> fidelity_at;            // checkpoint time -> value
};

// Default step count per unit period; fast-phase schedules need more steps.
int default_steps(double lambda);

// One forward transfer from |0>. Records F = |<1|psi(T)>|^2 at the end and
// the excited-state population at the half-way checkpoint.
SimulationResult single_transfer(const TransferSpec& spec);

struct SweepRow {
    double lambda = 0.0;
    double epsilon = 0.0;
    double fidelity = 0.0;
    bool ok = false;
    std::string message;
};

// One transfer per (lambda, epsilon) point; rows ordered by (lambda,
// epsilon). Points run on a small thread pool capped by QCTL_THREADS.
// A failed point keeps its row slot with ok = false and the reason.
std::vector<SweepRow> epsilon_sweep(const std::vector<double>& lambdas,
                                    const std::vector<double>& epsilons,
                                    ErrorModel::Kind kind, int n_steps = 0);

// Repeated transfer loops with the state carried continuously across stage
// boundaries; level populations recorded at the per-loop checkpoints.
SimulationResult cyclic_transfer(const CyclicSpec& spec);

// Squared projections onto (|0>, |1>, |e>) for every stored state.
std::vector<std::array<double, 3>> populations(const SimulationResult& result);

struct Peak {
    double t = 0.0;
    double value = 0.0;
};

// Largest sample of one level's population inside [t_lo, t_hi], refined by a
// parabola through the three nearest samples.
Peak find_peak(const SimulationResult& result, int level, double t_lo, double t_hi);

}  // namespace qctl
