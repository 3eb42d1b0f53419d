#pragma once

#include <vector>

#include "ft/system.hpp"

namespace ft {

enum class WaveKind { Shock, Contact, Rarefaction };

/// One elementary wave inside a self-similar fan. For shocks and contacts
/// speed_lo == speed_hi; rarefactions span [speed_lo, speed_hi].
struct Wave {
    int family = 0;
    WaveKind kind = WaveKind::Contact;
    double sigma = 0.0;
    double speed_lo = 0.0;
    double speed_hi = 0.0;
    State uL, uR;
};

struct WaveFan {
    State uL, uR;
    Eigen::VectorXd sigma;        // full strength vector, one per family
    std::vector<Wave> waves;      // waves with non-negligible strength
    int newton_iterations = 0;
};

struct CurvePoint {
    State u;
    WaveKind kind = WaveKind::Contact;
    double speed_lo = 0.0;  // for rarefactions: lambda at the left edge
    double speed_hi = 0.0;
};

/// Rarefaction orientation of the i-th eigenvector: for genuinely nonlinear
/// families the sign is fixed so that lambda_i increases along it.
State rarefaction_direction(const SystemDefinition& sys, int family,
                            const State& u);

/// Point psi_i(sigma)(u0) on the i-th Lax curve. Strength is a signed
/// arclength-like parameter; sigma > 0 is the rarefaction branch for
/// genuinely nonlinear families, sigma < 0 the Hugoniot branch.
CurvePoint lax_curve_full(const SystemDefinition& sys, int family,
                          const State& u0, double sigma);
State lax_curve(const SystemDefinition& sys, int family, const State& u0,
                double sigma);

/// Composition Psi(sigma)(uL) = psi_n(sigma_n) o ... o psi_1(sigma_1)(uL).
State apply_wave_curves(const SystemDefinition& sys, const State& uL,
                        const Eigen::VectorXd& sigma);

/// Entropic homogeneous Riemann solver: damped Newton on the strength
/// vector with Psi(sigma)(uL) = uR.
WaveFan solve_homogeneous_riemann(const SystemDefinition& sys, const State& uL,
                                  const State& uR, double tol = 1e-9,
                                  int max_iter = 50);

/// Builds the fan structure for an already known strength vector.
WaveFan make_fan(const SystemDefinition& sys, const State& uL,
                 const Eigen::VectorXd& sigma);

/// Self-similar evaluation of the fan at xi = x/t.
State evaluate_fan(const SystemDefinition& sys, const WaveFan& fan, double xi);

}  // namespace ft
