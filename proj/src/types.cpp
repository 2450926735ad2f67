#include "qctl/types.h"

#include <cmath>

namespace qctl {

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index level) {
    if (level < 0 || level >= dim) {
        throw dimension_error("basis level out of range");
    }
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(dim);
    a(level) = 1.0;
    return StateVector(std::move(a));
}

double StateVector::population(Eigen::Index level) const {
    if (level < 0 || level >= dim()) {
        throw dimension_error("population level out of range");
    }
    return std::norm(amplitudes(level));
}

void StateVector::require_normalized(double tol) const {
    if (std::abs(squared_norm() - 1.0) > tol) {
        throw contract_error("state vector is not normalized");
    }
}

Operator Operator::hermitian(Eigen::MatrixXcd m, double tol) {
    if (m.rows() != m.cols()) {
        throw dimension_error("hermitian operator must be square");
    }
    if (hermiticity_defect(m) >= tol) {
        throw contract_error("hermiticity defect above tolerance");
    }
    return Operator(std::move(m), OperatorKind::hermitian);
}

Operator Operator::unitary(Eigen::MatrixXcd m, double tol) {
    if (m.rows() != m.cols()) {
        throw dimension_error("unitary operator must be square");
    }
    if (unitarity_defect(m) >= tol) {
        throw contract_error("unitarity defect above tolerance");
    }
    return Operator(std::move(m), OperatorKind::unitary);
}

Operator Operator::general(Eigen::MatrixXcd m) {
    return Operator(std::move(m), OperatorKind::general);
}

TimeGrid::TimeGrid(double t0, double t1, int n) : t_start(t0), t_end(t1), n_steps(n) {
    if (n <= 0) {
        throw contract_error("time grid needs a positive step count");
    }
    if (!(t1 > t0)) {
        throw contract_error("time grid needs t_end > t_start");
    }
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return (m.adjoint() * m - id).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw dimension_error("matrix size mismatch in comparison");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qctl
