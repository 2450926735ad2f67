#pragma once

#include "qctl/types.h"

namespace qctl {

// exp(A) for anti-hermitian A, computed by diagonalizing the hermitian
// generator iA. Falls back to scaling-and-squaring if the eigen-solve
// reconstruction is poor. The result is unitary to ~1e-14.
Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& a, double anti_herm_tol = 1e-10);

// Plain scaling-and-squaring Taylor exponential (no structure assumed).
Eigen::MatrixXcd exp_scaling_squaring(const Eigen::MatrixXcd& a, int order = 16);

// Multiplies by the conjugate phase of the largest-magnitude entry, making
// that entry real and positive. Used to compare unitaries defined up to a
// global phase.
Eigen::MatrixXcd phase_normalized(const Eigen::MatrixXcd& m);

double phase_aligned_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace qctl
