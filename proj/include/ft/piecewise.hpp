#pragma once

#include <functional>
#include <vector>

#include "ft/types.hpp"

namespace ft {

/// Piecewise constant function of x with the right-continuous convention.
struct PiecewiseConstant {
    std::vector<double> breaks;   // strictly increasing
    std::vector<State> values;    // breaks.size() + 1 entries

    const State& eval(double x) const;
    double tv() const;
    double tv(double a, double b) const;  // jumps with break in (a,b)

    /// Drops breakpoints whose jump is below the tolerance.
    PiecewiseConstant simplified(double jump_tol = 0.0) const;
};

/// Exact L1 distance on [a,b] by breakpoint merging.
double l1_distance(const PiecewiseConstant& u, const PiecewiseConstant& v,
                   double a, double b);

/// L1 distance on [a,b] between a piecewise constant and an arbitrary
/// function, by adaptive quadrature split at the breakpoints and at the
/// caller's extra hint points.
double l1_distance(const PiecewiseConstant& u,
                   const std::function<State(double)>& v, double a, double b,
                   const std::vector<double>& extra_breaks = {},
                   double tol = 1e-10);

/// Piecewise polynomial initial data: a constant background plus finitely
/// many polynomial pieces on disjoint intervals.
struct PolyPiece {
    double a = 0.0, b = 0.0;
    // coeffs[c] are monomial coefficients of component c in (x - a).
    std::vector<std::vector<double>> coeffs;
};

struct PiecewisePoly {
    State background;
    std::vector<PolyPiece> pieces;  // sorted, non-overlapping

    State eval(double x) const;
    State cell_average(double a, double b) const;
    double tv() const;  // total variation, exact for polynomials

    /// All piece endpoints (candidate breakpoints).
    std::vector<double> knots() const;
};

}  // namespace ft
