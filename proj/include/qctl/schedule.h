#pragma once

#include <cstddef>
#include <vector>

#include "qctl/types.h"

namespace qctl {

// Quadratic ramp in stage-local time u: value = c0 + c1*u + c2*u^2.
struct Ramp {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double value(double u) const { return c0 + u * (c1 + u * c2); }
    double slope(double u) const { return c1 + 2.0 * c2 * u; }
    double curvature(double) const { return 2.0 * c2; }
};

// One smooth control segment. theta/phi are functions of u = t - t_begin.
// lambda is the signed ratio f-dot / phi-dot of the segment's global-phase
// schedule; f1_const is the constant phase carried by path 1.
struct Stage {
    double t_begin = 0.0;
    double t_end = 1.0;
    Ramp theta;
    Ramp phi;
    double lambda = 0.0;
    double f1_const = 0.0;
    int transfer_path = 2;
};

// Piecewise control schedule; stages tile the run interval.
class PathSchedule {
  public:
    explicit PathSchedule(std::vector<Stage> stages);

    struct Angles {
        double theta, dtheta, ddtheta;
        double phi, dphi, ddphi;
        double lambda;
        double f1_const;
    };

    const Stage& stage_at(double t) const;
    std::size_t stage_index_at(double t) const;
    Angles angles_at(double t) const;

    // Phase accumulated by integrating lambda * phi-dot from the schedule
    // start, continuous across stage boundaries.
    double accumulated_f(double t) const;

    double t_start() const { return stages_.front().t_begin; }
    double t_end() const { return stages_.back().t_end; }
    double max_abs_lambda() const;
    const std::vector<Stage>& stages() const { return stages_; }

  private:
    std::vector<Stage> stages_;
};

// Single population transfer |0> -> |e> -> |1> over [0, duration]:
// phi ramps 0 -> pi, theta = pi/2 + phi/2, global-phase ratio lambda.
PathSchedule single_transfer_schedule(double lambda, double f1_const, double duration = 1.0);

// Repeated loop |0> -> |e> -> |1> -> |0>. Each loop spends one period on the
// forward transfer and half a period retracing: the second stage mirrors the
// theta ramp (pi/2 -> 0) and runs the global phase backwards (ratio -lambda).
PathSchedule cyclic_schedule(double lambda, int loops, double f1_const);

}  // namespace qctl
