#include "qctl/linalg.h"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qctl {

Eigen::MatrixXcd exp_scaling_squaring(const Eigen::MatrixXcd& a, int order) {
    const Eigen::Index n = a.rows();
    if (n != a.cols()) {
        throw dimension_error("matrix exponential needs a square matrix");
    }
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    Eigen::MatrixXcd scaled = a;
    while (norm > 0.5) {
        scaled *= 0.5;
        norm *= 0.5;
        ++squarings;
    }
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k <= order; ++k) {
        term = term * scaled / static_cast<double>(k);
        result += term;
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result;
}

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a, double anti_herm_tol) {
    const Eigen::Index n = a.rows();
    if (n != a.cols()) {
        throw dimension_error("matrix exponential needs a square matrix");
    }
    // A anti-hermitian <=> iA hermitian
    Eigen::MatrixXcd h = complexd(0.0, 1.0) * a;
    if (hermiticity_defect(h) > anti_herm_tol) {
        throw contract_error("matrix exponential input is not anti-hermitian");
    }
    h = 0.5 * (h + Eigen::MatrixXcd(h.adjoint()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if (es.info() == Eigen::Success) {
        Eigen::MatrixXcd recon =
            es.eigenvectors() * es.eigenvalues().asDiagonal() * es.eigenvectors().adjoint();
        if (max_abs_diff(recon, h) < 1e-12 * scale) {
            Eigen::VectorXcd phases(n);
            for (Eigen::Index k = 0; k < n; ++k) {
                phases(k) = std::polar(1.0, -es.eigenvalues()(k));
            }
            return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
        }
    }
    return exp_scaling_squaring(a, 20);
}

Eigen::MatrixXcd phase_normalized(const Eigen::MatrixXcd& m) {
    Eigen::Index row = 0, col = 0;
    m.cwiseAbs().maxCoeff(&row, &col);
    const complexd top = m(row, col);
    if (std::abs(top) == 0.0) {
        return m;
    }
    return m * (std::conj(top) / std::abs(top));
}

double phase_aligned_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw dimension_error("matrix size mismatch in comparison");
    }
    // shared reference entry, so ties in magnitude cannot split the alignment
    Eigen::Index row = 0, col = 0;
    b.cwiseAbs().maxCoeff(&row, &col);
    const complexd za = a(row, col);
    const complexd zb = b(row, col);
    if (std::abs(za) == 0.0 || std::abs(zb) == 0.0) {
        return max_abs_diff(a, b);
    }
    return max_abs_diff(a * (std::conj(za) / std::abs(za)), b * (std::conj(zb) / std::abs(zb)));
}

}  // namespace qctl
