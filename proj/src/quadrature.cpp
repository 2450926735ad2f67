#include "qctl/quadrature.h"

#include <cmath>

namespace qctl {

namespace {

bool finite(const complexd& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

complexd quadrature(const std::function<complexd(double)>& f, double t0, double t1, int panels) {
    if (panels < 2) {
        throw contract_error("quadrature needs at least 2 panels");
    }
    const double h = (t1 - t0) / panels;
    complexd acc = 0.0;
    complexd left = f(t0);
    if (!finite(left)) {
        throw numeric_error("quadrature hit a non-finite sample");
    }
    for (int p = 0; p < panels; ++p) {
        const complexd mid = f(t0 + (p + 0.5) * h);
        const complexd right = (p + 1 == panels) ? f(t1) : f(t0 + (p + 1) * h);
        if (!finite(mid) || !finite(right)) {
            throw numeric_error("quadrature hit a non-finite sample");
        }
        acc += (h / 6.0) * (left + 4.0 * mid + right);
        left = right;
    }
    return acc;
}

Eigen::MatrixXcd quadrature_matrix(const std::function<Eigen::MatrixXcd(double)>& f, double t0,
                                   double t1, int panels) {
    if (panels < 2) {
        throw contract_error("quadrature needs at least 2 panels");
    }
    const double h = (t1 - t0) / panels;
    Eigen::MatrixXcd left = f(t0);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(left.rows(), left.cols());
    for (int p = 0; p < panels; ++p) {
        const Eigen::MatrixXcd mid = f(t0 + (p + 0.5) * h);
        const Eigen::MatrixXcd right = (p + 1 == panels) ? f(t1) : f(t0 + (p + 1) * h);
        acc += (h / 6.0) * (left + 4.0 * mid + right);
        left = right;
    }
    if (!acc.allFinite()) {
        throw numeric_error("quadrature hit a non-finite sample");
    }
    return acc;
}

}  // namespace qctl
