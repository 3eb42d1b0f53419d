#pragma once

#include <functional>
#include <vector>

namespace ft {

/// Gauss-Kronrod 7-15 estimate on [a,b]; err receives the error estimate.
double quad_gk15(const std::function<double(double)>& f, double a, double b,
                 double* err);

/// Adaptive quadrature on [a,b] by interval bisection on the GK15 error.
/// Integrable endpoint singularities are handled by the caller splitting at
/// the singular points (see integrate_with_splits).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-11);

/// Adaptive quadrature with the interval split at the given interior points
/// (singular points of the integrand, breakpoints, ...). Points outside
/// (a,b) are ignored. Near a singular split point the adaptive refinement
/// is driven toward the endpoint, which converges for integrable
/// singularities such as 1/sqrt.
double integrate_with_splits(const std::function<double(double)>& f, double a,
                             double b, const std::vector<double>& splits,
                             double abs_tol = 1e-11);

}  // namespace ft
