#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qctl {

using complexd = std::complex<double>;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input has the wrong shape (non-square matrix, mismatched sizes).
struct dimension_error : error {
    using error::error;
};

// A precondition or postcondition of an operation was violated.
struct contract_error : error {
    using error::error;
};

// Non-finite values or other numerical-domain problems.
struct numeric_error : error {
    using error::error;
};

// The control schedule is degenerate at the requested time.
struct singular_schedule_error : error {
    using error::error;
};

// Time argument outside the region where the operation is defined.
struct domain_error : error {
    using error::error;
};

struct usage_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

// Pure state of a K-level system. Basis order for K=3 is (|0>, |1>, |e>).
struct StateVector {
    Eigen::VectorXcd amplitudes;

    StateVector() = default;
    explicit StateVector(Eigen::VectorXcd a) : amplitudes(std::move(a)) {}
    static StateVector basis(Eigen::Index dim, Eigen::Index level);

    Eigen::Index dim() const { return amplitudes.size(); }
    double squared_norm() const { return amplitudes.squaredNorm(); }
    // |<level|psi>|^2
    double population(Eigen::Index level) const;
    // Throws contract_error when | ||psi||^2 - 1 | > tol.
    void require_normalized(double tol = 1e-10) const;
};

enum class OperatorKind { hermitian, unitary, general };

struct Operator {
    Eigen::MatrixXcd entries;
    OperatorKind kind = OperatorKind::general;

    Operator() = default;
    Operator(Eigen::MatrixXcd m, OperatorKind k) : entries(std::move(m)), kind(k) {}

    // Factories validate the advertised structure.
    static Operator hermitian(Eigen::MatrixXcd m, double tol = 1e-12);
    static Operator unitary(Eigen::MatrixXcd m, double tol = 1e-10);
    static Operator general(Eigen::MatrixXcd m);

    Eigen::Index dim() const { return entries.rows(); }
};

// Uniform time grid over [t_start, t_end] with n_steps steps (n_steps+1 samples).
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 1.0;
    int n_steps = 0;

    TimeGrid() = default;
    TimeGrid(double t0, double t1, int n);

    double dt() const { return (t_end - t_start) / n_steps; }
    double sample(int i) const { return t_start + i * dt(); }
    double midpoint(int i) const { return t_start + (i + 0.5) * dt(); }
    int n_samples() const { return n_steps + 1; }
};

double hermiticity_defect(const Eigen::MatrixXcd& m);
double unitarity_defect(const Eigen::MatrixXcd& m);
double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace qctl
