#pragma once

#include <vector>

#include "cpdc/types.hpp"

namespace cpdc {

/// Wigner function of a single-mode density matrix at a phase-space point,
/// in the convention x = (a + a+)/sqrt(2), y = (a - a+)/(i sqrt(2)),
/// normalized so that the integral over dx dy is 1 (vacuum peaks at 1/pi).
/// Evaluated from the Fock-basis kernel via stable two-term recurrences,
/// O(dim^2) per point.
double wigner_point(const MatrixXc& rho1, double x, double y);

/// Same point evaluated in polar coordinates x = r cos(theta), y = r sin(theta).
double wigner_polar(const MatrixXc& rho1, double r, double theta);

/// Grid evaluation, W(i, j) = W(x_i, y_j). Runs on two threads.
MatrixXd wigner_grid(const MatrixXc& rho1, const std::vector<double>& xs,
                     const std::vector<double>& ys);

/// Trapezoid integral of a Wigner grid over its axes.
double wigner_grid_integral(const MatrixXd& w, const std::vector<double>& xs,
                            const std::vector<double>& ys);

}  // namespace cpdc
