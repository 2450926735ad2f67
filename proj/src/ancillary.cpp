#include "qctl/ancillary.h"

#include <cmath>
#include <numbers>

namespace qctl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFdStep = 1e-6;  // period T = 1

struct StagePoint {
    double theta, dtheta, ddtheta;
    double phi, dphi, ddphi;
    double lambda;
};

StagePoint eval_stage(const Stage& s, double t) {
    const double u = t - s.t_begin;
    return StagePoint{s.theta.value(u), s.theta.slope(u), s.theta.curvature(u),
                      s.phi.value(u),   s.phi.slope(u),   s.phi.curvature(u),
                      s.lambda};
}

PhaseFunctions phases_for(const StagePoint& p) {
    const double sin2phi = std::sin(2.0 * p.phi);
    const double cos2phi = std::cos(2.0 * p.phi);
    const double fdot = p.lambda * p.dphi;
    const double fddot = p.lambda * p.ddphi;
    const double den = fdot * fdot * sin2phi * sin2phi + p.dphi * p.dphi;
    if (den < 1e-30) {
        throw singular_schedule_error("phase functions are singular here (phi frozen)");
    }
    PhaseFunctions out;
    out.alpha0 = kPi / 2.0;
    out.dalpha0 = 0.0;
    out.alpha = std::atan2(1.0, -p.lambda * sin2phi);
    out.dalpha = -(p.ddphi * fdot * sin2phi - fddot * p.dphi * sin2phi -
                   2.0 * fdot * p.dphi * p.dphi * cos2phi) /
                 den;
    // same derivative from d/dt arccot(-lambda sin 2phi)
    const double lam2 = p.lambda * p.lambda;
    const double closed = 2.0 * p.lambda * p.dphi * cos2phi / (1.0 + lam2 * sin2phi * sin2phi);
    if (std::abs(out.dalpha - closed) > 1e-9) {
        throw contract_error("dalpha determinations disagree");
    }
    return out;
}

AncillaryBasis basis_for(const StagePoint& p, double t) {
    const PhaseFunctions ph = phases_for(p);
    const complexd half_a0 = std::polar(1.0, ph.alpha0 / 2.0);
    const complexd half_a = std::polar(1.0, ph.alpha / 2.0);
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    const double sp = std::sin(p.phi), cp = std::cos(p.phi);

    Eigen::VectorXcd bright(3);
    bright << st * half_a0, ct / half_a0, 0.0;

    AncillaryBasis basis;
    basis.mu1 = Eigen::VectorXcd(3);
    basis.mu1 << ct * half_a0, -st / half_a0, 0.0;
    basis.mu2 = cp * half_a * bright;
    basis.mu2(2) = -sp / half_a;
    basis.mu3 = sp * half_a * bright;
    basis.mu3(2) = cp / half_a;
    basis.alpha0 = ph.alpha0;
    basis.alpha = ph.alpha;
    basis.at_time = t;
    return basis;
}

}  // namespace

const Eigen::VectorXcd& AncillaryBasis::mu(int k) const {
    switch (k) {
        case 1: return mu1;
        case 2: return mu2;
        case 3: return mu3;
        default: throw dimension_error("path index must be 1, 2 or 3");
    }
}

Eigen::MatrixXcd AncillaryBasis::gram() const {
    Eigen::MatrixXcd g(3, 3);
    const Eigen::VectorXcd* mus[3] = {&mu1, &mu2, &mu3};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            g(i, j) = mus[i]->dot(*mus[j]);
        }
    }
    return g;
}

PhaseFunctions phase_functions(const PathSchedule& schedule, double t) {
    return phases_for(eval_stage(schedule.stage_at(t), t));
}

AncillaryBasis ancillary_states(const PathSchedule& schedule, double t) {
    return basis_for(eval_stage(schedule.stage_at(t), t), t);
}

GlobalPhases global_phases(const PathSchedule& schedule, double t) {
    GlobalPhases g;
    g.f1 = schedule.stage_at(t).f1_const;
    g.f2 = schedule.accumulated_f(t);
    g.f3 = -g.f2;
    return g;
}

Operator exact_propagator(const PathSchedule& schedule, double t) {
    const std::size_t last = schedule.stage_index_at(t);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(3, 3);
    for (std::size_t i = 0; i <= last; ++i) {
        const Stage& s = schedule.stages()[i];
        const double hi = (i == last) ? t : s.t_end;
        const AncillaryBasis lo_basis = basis_for(eval_stage(s, s.t_begin), s.t_begin);
        const AncillaryBasis hi_basis = basis_for(eval_stage(s, hi), hi);
        const double df = s.lambda * (s.phi.value(hi - s.t_begin) - s.phi.value(0.0));
        const double dfk[3] = {0.0, df, -df};
        Eigen::MatrixXcd factor = Eigen::MatrixXcd::Zero(3, 3);
        for (int k = 1; k <= 3; ++k) {
            factor += std::polar(1.0, dfk[k - 1]) * hi_basis.mu(k) * lo_basis.mu(k).adjoint();
        }
        u = factor * u;
    }
    return Operator::unitary(std::move(u));
}

double von_neumann_residual(const PathSchedule& schedule, const HamiltonianFn& hamiltonian,
                            double t) {
    const Stage& s = schedule.stage_at(t);
    if (t - kFdStep < s.t_begin || t + kFdStep > s.t_end) {
        throw domain_error("residual needs an interior time of a stage");
    }
    const AncillaryBasis minus = basis_for(eval_stage(s, t - kFdStep), t - kFdStep);
    const AncillaryBasis center = basis_for(eval_stage(s, t), t);
    const AncillaryBasis plus = basis_for(eval_stage(s, t + kFdStep), t + kFdStep);
    const Eigen::MatrixXcd h = hamiltonian(t);
    double worst = 0.0;
    for (int k = 1; k <= 3; ++k) {
        const Eigen::MatrixXcd proj_minus = minus.mu(k) * minus.mu(k).adjoint();
        const Eigen::MatrixXcd proj_plus = plus.mu(k) * plus.mu(k).adjoint();
        const Eigen::MatrixXcd proj = center.mu(k) * center.mu(k).adjoint();
        const Eigen::MatrixXcd deriv = (proj_plus - proj_minus) / (2.0 * kFdStep);
        const Eigen::MatrixXcd residual = deriv + complexd(0.0, 1.0) * (h * proj - proj * h);
        worst = std::max(worst, residual.cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace qctl
