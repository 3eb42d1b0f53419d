#pragma once

#include <functional>

#include "ft/riemann.hpp"
#include "ft/source.hpp"
#include "json.hpp"

namespace ft {

/// Solution structure of an h-Riemann problem: a fan of negative-speed
/// waves from uL to u_minus, a standing zero-wave with u_plus =
/// jump(u_minus), and a fan of positive-speed waves from u_plus to uR.
struct HRiemannPattern {
    double x0 = 0.0;
    double h = 0.0;
    State uL, u_minus, u_plus, uR;
    WaveFan left_fan, right_fan;
    Eigen::VectorXd sigma;     // full strength vector (all n families)
    double sigma_zero = 0.0;   // zero-wave size int_0^h omega(x0+s) ds
    int newton_iterations = 0;
};

using JumpMap = std::function<State(const State&)>;

/// Composition uL -> fans + jump -> state, the map Newton inverts.
State apply_coupled_pattern(const SystemDefinition& sys, const JumpMap& jump,
                            const State& uL, const Eigen::VectorXd& sigma);

/// Coupled Riemann solver with an arbitrary stationary jump map across
/// x = x0 (Phi_h for the comb scheme, Phi(a,.) for the pipe junction).
HRiemannPattern solve_coupled_riemann(const SystemDefinition& sys,
                                      const JumpMap& jump, const State& uL,
                                      const State& uR, double tol = 1e-9,
                                      int max_iter = 60);

/// The h-Riemann solver at x0 with window length h; the strength vector is
/// the wave-size map E(h, uL, uR; x0).
HRiemannPattern solve_h_riemann(const SystemDefinition& sys,
                                const SourceTerm& src, double x0, double h,
                                const State& uL, const State& uR,
                                double tol = 1e-9);

/// Zero-wave size at comb index j: int_0^h omega(jh+s) ds.
double zero_wave_strength(const SourceTerm& src, long j, double h);

/// Self-similar evaluation at xi = (x - x0)/t; the zero-wave sits at xi=0.
State evaluate_h_pattern(const SystemDefinition& sys,
                         const HRiemannPattern& pat, double xi);

nlohmann::json to_json(const HRiemannPattern& pat);

}  // namespace ft
