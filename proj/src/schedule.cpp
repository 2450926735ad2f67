#include "qctl/schedule.h"

#include <cmath>
#include <numbers>

namespace qctl {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTilingTol = 1e-12;
}  // namespace

PathSchedule::PathSchedule(std::vector<Stage> stages) : stages_(std::move(stages)) {
    if (stages_.empty()) {
        throw contract_error("schedule needs at least one stage");
    }
    for (std::size_t i = 0; i < stages_.size(); ++i) {
        const Stage& s = stages_[i];
        if (!(s.t_end > s.t_begin)) {
            throw contract_error("stage interval is empty or reversed");
        }
        if (i > 0 && std::abs(s.t_begin - stages_[i - 1].t_end) > kTilingTol) {
            throw contract_error("stages do not tile the run interval");
        }
        if (s.transfer_path < 1 || s.transfer_path > 3) {
            throw contract_error("transfer_path must be 1, 2 or 3");
        }
    }
}

std::size_t PathSchedule::stage_index_at(double t) const {
    if (t < t_start() - kTilingTol || t > t_end() + kTilingTol) {
        throw domain_error("time outside the schedule interval");
    }
    for (std::size_t i = 0; i + 1 < stages_.size(); ++i) {
        if (t < stages_[i].t_end) {
            return i;
        }
    }
    return stages_.size() - 1;
}

const Stage& PathSchedule::stage_at(double t) const {
    return stages_[stage_index_at(t)];
}

PathSchedule::Angles PathSchedule::angles_at(double t) const {
    const Stage& s = stage_at(t);
    const double u = t - s.t_begin;
    return Angles{s.theta.value(u),  s.theta.slope(u), s.theta.curvature(u),
                  s.phi.value(u),    s.phi.slope(u),   s.phi.curvature(u),
                  s.lambda,          s.f1_const};
}

double PathSchedule::accumulated_f(double t) const {
    const std::size_t idx = stage_index_at(t);
    double f = 0.0;
    for (std::size_t i = 0; i < idx; ++i) {
        const Stage& s = stages_[i];
        f += s.lambda * (s.phi.value(s.t_end - s.t_begin) - s.phi.value(0.0));
    }
    const Stage& s = stages_[idx];
    f += s.lambda * (s.phi.value(t - s.t_begin) - s.phi.value(0.0));
    return f;
}

double PathSchedule::max_abs_lambda() const {
    double m = 0.0;
    for (const Stage& s : stages_) {
        m = std::max(m, std::abs(s.lambda));
    }
    return m;
}

PathSchedule single_transfer_schedule(double lambda, double f1_const, double duration) {
    if (!(duration > 0.0)) {
        throw contract_error("transfer duration must be positive");
    }
    Stage s;
    s.t_begin = 0.0;
    s.t_end = duration;
    s.phi = Ramp{0.0, kPi / duration, 0.0};
    s.theta = Ramp{kPi / 2.0, kPi / (2.0 * duration), 0.0};
    s.lambda = lambda;
    s.f1_const = f1_const;
    s.transfer_path = 2;
    return PathSchedule({s});
}

PathSchedule cyclic_schedule(double lambda, int loops, double f1_const) {
    if (loops < 1) {
        throw contract_error("cyclic schedule needs at least one loop");
    }
    std::vector<Stage> stages;
    stages.reserve(2 * static_cast<std::size_t>(loops));
    for (int k = 0; k < loops; ++k) {
        const double t0 = 1.5 * k;
        Stage fwd;
        fwd.t_begin = t0;
        fwd.t_end = t0 + 1.0;
        fwd.phi = Ramp{0.0, kPi, 0.0};
        fwd.theta = Ramp{kPi / 2.0, kPi / 2.0, 0.0};
        fwd.lambda = lambda;
        fwd.f1_const = f1_const;
        fwd.transfer_path = 2;
        stages.push_back(fwd);

        Stage back;
        back.t_begin = t0 + 1.0;
        back.t_end = t0 + 1.5;
        back.phi = Ramp{kPi, kPi, 0.0};
        back.theta = Ramp{kPi / 2.0, -kPi, 0.0};
        back.lambda = -lambda;
        back.f1_const = f1_const;
        back.transfer_path = 1;
        stages.push_back(back);
    }
    return PathSchedule(std::move(stages));
}

}  // namespace qctl
