#pragma once

#include "ft/source.hpp"
#include "ft/system.hpp"

namespace ft {

/// Inverts u -> f(u) by damped Newton inside the invertibility
/// neighborhood guaranteed by non-resonance.
State flux_inverse(const SystemDefinition& sys, const State& y,
                   const State& guess, double tol = 1e-11, int max_iter = 50);

State flux_inverse(const SystemDefinition& sys, const State& y);

/// Approximate stationary-flow map
///   Phi_h(x0, u) = f^{-1}[ f(u) + int_0^h g(x0+s, u) ds ],
/// the defining residual f(Phi_h) - f(u) = int g holding to the Newton
/// tolerance.
State phi_h(const SystemDefinition& sys, const SourceTerm& src, double x0,
            double h, const State& u);

}  // namespace ft
