#pragma once

#include <functional>

#include "qctl/types.h"

namespace qctl {

// Composite Simpson rule over [t0, t1] with the given number of panels.
complexd quadrature(const std::function<complexd(double)>& f, double t0, double t1, int panels);

// Matrix-valued composite Simpson rule (same scheme, used for operator-valued
// integrands).
Eigen::MatrixXcd quadrature_matrix(const std::function<Eigen::MatrixXcd(double)>& f, double t0,
                                   double t1, int panels);

}  // namespace qctl
