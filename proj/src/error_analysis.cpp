#include "qctl/error_analysis.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qctl/ancillary.h"
#include "qctl/quadrature.h"
#include "qctl/scenarios.h"

namespace qctl {

namespace {

constexpr double kPi = std::numbers::pi;

int panels_per_unit(const PathSchedule& schedule) {
    return static_cast<int>(std::max(400.0, 200.0 * schedule.max_abs_lambda()));
}

// Integrate a matrix-valued function over [t0, t], splitting at stage
// boundaries so Simpson never straddles a kink in the controls.
Eigen::MatrixXcd integrate_segmented(const PathSchedule& schedule,
                                     const std::function<Eigen::MatrixXcd(double)>& f, double t,
                                     int per_unit) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(3, 3);
    for (const Stage& s : schedule.stages()) {
        if (s.t_begin >= t) {
            break;
        }
        const double hi = std::min(s.t_end, t);
        const int panels = std::max(2, static_cast<int>(std::ceil(per_unit * (hi - s.t_begin))));
        acc += quadrature_matrix(f, s.t_begin, hi, panels);
    }
    return acc;
}

Eigen::MatrixXcd raw_error_matrix(const PathSchedule& schedule, const ErrorModel& model,
                                  double t) {
    const AncillaryBasis basis = ancillary_states(schedule, t);
    const Eigen::MatrixXcd h1 =
        error_hamiltonian(synthesize_fields_lambda(schedule, t), model);
    Eigen::MatrixXcd out(3, 3);
    for (int k = 1; k <= 3; ++k) {
        for (int n = 1; n <= 3; ++n) {
            out(k - 1, n - 1) = basis.mu(k).dot(h1 * basis.mu(n));
        }
    }
    return out;
}

double phase_rate(const Stage& s, double t, int path) {
    const double dphi = s.phi.slope(t - s.t_begin);
    switch (path) {
        case 1: return 0.0;
        case 2: return s.lambda * dphi;
        case 3: return -s.lambda * dphi;
        default: throw dimension_error("path index must be 1, 2 or 3");
    }
}

}  // namespace

Eigen::MatrixXcd dtilde_err(const PathSchedule& schedule, const ErrorModel& model, double t) {
    if (model.kind == ErrorModel::Kind::none) {
        return Eigen::MatrixXcd::Zero(3, 3);
    }
    const Eigen::MatrixXcd raw = raw_error_matrix(schedule, model, t);
    const GlobalPhases g = global_phases(schedule, t);
    const double fk[3] = {g.f1, g.f2, g.f3};
    Eigen::MatrixXcd out(3, 3);
    for (int k = 0; k < 3; ++k) {
        for (int n = 0; n < 3; ++n) {
            out(k, n) = raw(k, n) * std::polar(1.0, -(fk[k] - fk[n]));
        }
    }
    return out;
}

ErrorRotation error_rotation(const PathSchedule& schedule, const ErrorModel& model, double t) {
    ErrorRotation rotation;
    rotation.at_time = t;
    rotation.model = model;
    if (t <= schedule.t_start()) {
        rotation.m = Eigen::MatrixXcd::Zero(3, 3);
        return rotation;
    }
    rotation.m = integrate_segmented(
        schedule, [&](double x) { return dtilde_err(schedule, model, x); }, t,
        panels_per_unit(schedule));
    return rotation;
}

CommutativeKernels m_kernels_commutative(const PathSchedule& schedule, double t) {
    const PathSchedule::Angles a = schedule.angles_at(t);
    const PhaseFunctions ph = phase_functions(schedule, t);
    const GlobalPhases g = global_phases(schedule, t);

    const double fdot = a.lambda * a.dphi;
    const double delta = ph.dalpha + 2.0 * fdot * std::cos(2.0 * a.phi);
    const double sin2th = std::sin(2.0 * a.theta);
    const double sin2phi = std::sin(2.0 * a.phi);

    const complexd shared =
        (complexd(0.0, a.dtheta) - (delta / 8.0) * std::sin(4.0 * a.theta)) *
        std::polar(1.0, ph.alpha / 2.0);

    CommutativeKernels kernels;
    kernels.k12 = shared * std::cos(a.phi) * std::polar(1.0, g.f2 - g.f1);
    kernels.k13 = shared * std::sin(a.phi) * std::polar(1.0, g.f3 - g.f1);
    kernels.k23 = (fdot * sin2phi * std::cos(2.0 * a.phi) -
                   (delta / 8.0) * sin2th * sin2th * sin2phi + complexd(0.0, a.dphi)) *
                  std::polar(1.0, g.f3 - g.f2);
    return kernels;
}

FidelityEstimate magnus_fidelity(const PathSchedule& schedule, const ErrorModel& model,
                                 int path_index, double t) {
    if (path_index < 1 || path_index > 3) {
        throw dimension_error("path index must be 1, 2 or 3");
    }
    if (std::abs(model.epsilon) > 0.5) {
        throw contract_error("epsilon too large for the second-order expansion");
    }
    const Eigen::MatrixXcd m = error_rotation(schedule, model, t).m;
    double leak = 0.0;
    for (int n = 0; n < 3; ++n) {
        if (n != path_index - 1) {
            leak += std::norm(m(path_index - 1, n));
        }
    }
    FidelityEstimate est;
    est.value = std::max(0.0, 1.0 - model.epsilon * model.epsilon * leak);
    est.order = 2;
    est.path_index = path_index;
    return est;
}

Eigen::MatrixXcd magnus_propagator(const PathSchedule& schedule, const ErrorModel& model,
                                   double t) {
    if (std::abs(model.epsilon) > 0.5) {
        throw contract_error("epsilon too large for the second-order expansion");
    }
    const complexd img(0.0, 1.0);
    Eigen::MatrixXcd m_total = Eigen::MatrixXcd::Zero(3, 3);
    Eigen::MatrixXcd commutator_total = Eigen::MatrixXcd::Zero(3, 3);
    const int per_unit = panels_per_unit(schedule);

    // Running M on a half-panel lattice feeds the ordered double integral
    // as a single pass: C2 = ∫ [D(s), M(s)] ds.
    for (const Stage& s : schedule.stages()) {
        if (s.t_begin >= t) {
            break;
        }
        const double hi = std::min(s.t_end, t);
        const int panels = std::max(2, static_cast<int>(std::ceil(per_unit * (hi - s.t_begin))));
        const double h = (hi - s.t_begin) / panels;
        const int fine = 4 * panels;  // quarter-panel sampling
        std::vector<Eigen::MatrixXcd> d_vals(fine + 1);
        for (int j = 0; j <= fine; ++j) {
            d_vals[j] = dtilde_err(schedule, model, s.t_begin + j * (h / 4.0));
        }
        std::vector<Eigen::MatrixXcd> m_at(2 * panels + 1);
        m_at[0] = m_total;
        for (int j = 0; j < 2 * panels; ++j) {
            m_at[j + 1] = m_at[j] + (h / 12.0) * (d_vals[2 * j] + 4.0 * d_vals[2 * j + 1] +
                                                  d_vals[2 * j + 2]);
        }
        auto bracket = [&](int half_node) {
            const Eigen::MatrixXcd& d = d_vals[2 * half_node];
            const Eigen::MatrixXcd& mm = m_at[half_node];
            return Eigen::MatrixXcd(d * mm - mm * d);
        };
        for (int p = 0; p < panels; ++p) {
            commutator_total +=
                (h / 6.0) * (bracket(2 * p) + 4.0 * bracket(2 * p + 1) + bracket(2 * p + 2));
        }
        m_total = m_at[2 * panels];
    }

    const double eps = model.epsilon;
    return Eigen::MatrixXcd::Identity(3, 3) - img * eps * m_total -
           (eps * eps / 2.0) * (m_total * m_total + commutator_total);
}

double correction_margin(const PathSchedule& schedule, const ErrorModel& model, int path_k,
                         int path_n, const TimeGrid& grid) {
    if (path_k == path_n) {
        throw contract_error("correction margin needs two distinct paths");
    }
    constexpr double kStep = 1e-6;
    constexpr double kFloor = 1e-12;
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid.n_steps; ++i) {
        const double t = grid.sample(i);
        const Stage& s = schedule.stage_at(t);
        if (t - kStep < s.t_begin || t + kStep > s.t_end) {
            continue;
        }
        const complexd ahead = raw_error_matrix(schedule, model, t + kStep)(path_k - 1, path_n - 1);
        const complexd behind =
            raw_error_matrix(schedule, model, t - kStep)(path_k - 1, path_n - 1);
        const double element_rate = std::abs((ahead - behind) / (2.0 * kStep));
        const double rate_gap = std::abs(phase_rate(s, t, path_k) - phase_rate(s, t, path_n));
        margin = std::min(margin, rate_gap / std::max(element_rate, kFloor));
    }
    if (!std::isfinite(margin)) {
        throw domain_error("no interior grid samples for the margin");
    }
    return margin;
}

namespace {

// |∫ e^{if} (d/dt) g(t) dt| with the derivative by central differences.
double oscillatory_ibp_term(const PathSchedule& schedule,
                            const std::function<complexd(double)>& g, int panels) {
    const double lo = schedule.t_start();
    const double hi = schedule.t_end();
    const double fd = 1e-7 * (hi - lo);
    auto integrand = [&](double t) {
        const double tc = std::clamp(t, lo + 2.0 * fd, hi - 2.0 * fd);
        const complexd dg = (g(tc + fd) - g(tc - fd)) / (2.0 * fd);
        return std::polar(1.0, schedule.accumulated_f(tc)) * dg;
    };
    return std::abs(quadrature(integrand, lo, hi, panels));
}

double alpha_rate_ratio(const PathSchedule& schedule, double t) {
    const PathSchedule::Angles a = schedule.angles_at(t);
    const double fdot = a.lambda * a.dphi;
    return phase_functions(schedule, t).dalpha / (2.0 * fdot);
}

}  // namespace

BoundSeries m12_bound_commutative(const PathSchedule& schedule, int k_max) {
    if (schedule.max_abs_lambda() == 0.0) {
        throw contract_error("bound series needs a nonzero phase ratio");
    }
    const int panels = 8 * panels_per_unit(schedule);
    BoundSeries series;
    for (int k = 0; k <= k_max; ++k) {
        auto g = [&, k](double t) {
            const PathSchedule::Angles a = schedule.angles_at(t);
            const PhaseFunctions ph = phase_functions(schedule, t);
            const double fdot = a.lambda * a.dphi;
            // d/dt [sin4theta cos2phi cosphi] * e^{i alpha/2}
            const complexd core =
                (4.0 * a.dtheta * std::cos(4.0 * a.theta) * std::cos(2.0 * a.phi) *
                     std::cos(a.phi) -
                 a.dphi * std::sin(4.0 * a.theta) * std::cos(2.0 * a.phi) * std::sin(a.phi) -
                 2.0 * a.dphi * std::sin(4.0 * a.theta) * std::sin(2.0 * a.phi) *
                     std::cos(a.phi)) *
                std::polar(1.0, ph.alpha / 2.0);
            return std::pow(alpha_rate_ratio(schedule, t), k) * core / fdot;
        };
        series.terms.push_back(oscillatory_ibp_term(schedule, g, panels));
    }
    series.total = 0.0;
    for (double term : series.terms) {
        series.total += term;
    }
    return series;
}

BoundSeries m12_bound_noncommutative(const PathSchedule& schedule, int k_max) {
    if (schedule.max_abs_lambda() == 0.0) {
        throw contract_error("bound series needs a nonzero phase ratio");
    }
    const int panels = 8 * panels_per_unit(schedule);
    BoundSeries series;
    series.terms.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (int which = 0; which < 2; ++which) {
        auto base = [&, which](double t) {
            const PathSchedule::Angles a = schedule.angles_at(t);
            const PhaseFunctions ph = phase_functions(schedule, t);
            const double st = std::sin(a.theta), ct = std::cos(a.theta);
            if (which == 0) {
                return std::sin(2.0 * a.theta) * ct * ct * std::cos(2.0 * a.phi) *
                       std::cos(a.phi) * std::polar(1.0, ph.alpha / 2.0);
            }
            return st * ct * std::sin(a.phi) * std::polar(1.0, -ph.alpha / 2.0);
        };
        const double fd = 1e-7;
        for (int k = 0; k <= k_max; ++k) {
            auto g = [&, k](double t) {
                const PathSchedule::Angles a = schedule.angles_at(t);
                const PhaseFunctions ph = phase_functions(schedule, t);
                const double fdot = a.lambda * a.dphi;
                const complexd db = (base(t + fd) - base(t - fd)) / (2.0 * fd);
                const complexd core = db - complexd(0.0, ph.dalpha / 2.0) * base(t);
                return std::pow(alpha_rate_ratio(schedule, t), k) * core / fdot;
            };
            series.terms[k] += oscillatory_ibp_term(schedule, g, panels);
        }
    }
    series.total = 0.0;
    for (double term : series.terms) {
        series.total += term;
    }
    return series;
}

double m23_bound_commutative(const PathSchedule& schedule) {
    if (schedule.max_abs_lambda() == 0.0) {
        throw contract_error("bound series needs a nonzero phase ratio");
    }
    const int panels = 8 * panels_per_unit(schedule);
    const double fd = 1e-7;
    auto f2 = [&](double t) {
        const PathSchedule::Angles a = schedule.angles_at(t);
        const double sin2th = std::sin(2.0 * a.theta);
        return complexd(std::sin(2.0 * a.phi) -
                            std::sin(4.0 * a.phi) * sin2th * sin2th / 4.0,
                        std::sin(2.0 * a.phi) / a.lambda);
    };
    auto g = [&](double t) {
        const PathSchedule::Angles a = schedule.angles_at(t);
        const double fdot = a.lambda * a.dphi;
        return (f2(t + fd) - f2(t - fd)) / (2.0 * fd) / fdot;
    };
    return oscillatory_ibp_term(schedule, g, panels);
}

AuditReport audit(double lambda, const ErrorModel& model, int n_steps) {
    const PathSchedule schedule = single_transfer_schedule(lambda, kPi / 2.0, 1.0);
    AuditReport report;
    report.lambda = lambda;
    report.model = model;

    const Eigen::MatrixXcd m = error_rotation(schedule, model, schedule.t_end()).m;
    report.m12 = std::abs(m(0, 1));
    report.m13 = std::abs(m(0, 2));
    report.m23 = std::abs(m(1, 2));

    TimeGrid grid(0.0, 1.0, 200);
    report.margin_12 = correction_margin(schedule, model, 1, 2, grid);
    report.margin_13 = correction_margin(schedule, model, 1, 3, grid);
    report.margin_23 = correction_margin(schedule, model, 2, 3, grid);

    report.fidelity_magnus = magnus_fidelity(schedule, model, 2, schedule.t_end()).value;
    TransferSpec spec;
    spec.lambda = lambda;
    spec.model = model;
    spec.n_steps = n_steps;
    const SimulationResult run = single_transfer(spec);
    report.fidelity_numerical = run.fidelity_at.at(1.0);

    if (lambda > 0.0) {
        report.m12_bound = (model.kind == ErrorModel::Kind::noncommutative)
                               ? m12_bound_noncommutative(schedule)
                               : m12_bound_commutative(schedule);
        report.m23_bound = m23_bound_commutative(schedule);
    }
    return report;
}

}  // namespace qctl
