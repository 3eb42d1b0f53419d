#pragma once

#include <vector>

#include "ft/h_riemann.hpp"
#include "ft/source.hpp"
#include "ft/system.hpp"

namespace ft::gas {

/// Isentropic gas dynamics with pressure p(rho) = kappa rho^gamma,
/// restricted to a subsonic box (both characteristic speeds nonzero and of
/// opposite sign).
class IsentropicSystem : public SystemDefinition {
public:
    IsentropicSystem(double gamma, double kappa, const State& lo,
                     const State& hi, double sonic_margin = 0.05);

    int dimension() const override { return 2; }
    State flux(const State& u) const override;
    Matrix jacobian(const State& u) const override;
    bool genuinely_nonlinear(int) const override { return true; }
    std::optional<std::vector<EigenTriple>> analytic_eigen(
        const State& u) const override;
    bool extra_admissible(const State& u) const override;
    std::string name() const override { return "isentropic_gas"; }

    double gamma() const { return gamma_; }
    double kappa() const { return kappa_; }
    double sound_speed(double rho) const;
    double sonic_margin() const { return sonic_margin_; }

private:
    double gamma_, kappa_, sonic_margin_;
};

/// Smooth pipe-section profile: ln a interpolates between ln a_left and
/// ln a_right by a cubic smoothstep on [x_lo, x_hi], constant outside.
struct PipeProfile {
    double a_left = 1.0, a_right = 1.0;
    double x_lo = 0.0, x_hi = 0.0;

    PipeProfile(double al, double ar, double xlo, double xhi);

    double a(double x) const;
    double log_a(double x) const;
    double dlog_a(double x) const;  // d/dx ln a, C^1, supported on [x_lo,x_hi]
};

/// Source g(x,u) = -(ln a)'(x) (q, q^2/rho) for the pipe with section a(x);
/// omega(x) = K |(ln a)'(x)| with K a sampled bound for |g| and |D_u g|
/// over the admissible box.
class PipeProfileSource : public SourceTerm {
public:
    PipeProfileSource(PipeProfile profile, const SystemDefinition& sys);
    PipeProfileSource(PipeProfile profile, double K);

    int dimension() const override { return 2; }
    State g(double x, const State& u) const override;
    Matrix dg_du(double x, const State& u) const override;
    double omega(double x) const override;
    double antiderivative(double x) const override;
    std::vector<double> singular_points() const override;
    std::vector<Interval> support() const override;
    State g_integral(double x0, double h, const State& u) const override;
    bool is_zero() const override;

    const PipeProfile& profile() const { return profile_; }
    double domination_constant() const { return K_; }

private:
    PipeProfile profile_;
    double K_;
};

/// Stationary flow across a section change: integrates the stationary ODE
///   du/dalpha = [Df(u)]^{-1} (-q, -q^2/rho),  alpha = ln a,
/// from 0 to dalpha. Throws SonicBreakdown when the trajectory leaves the
/// subsonic region.
State phi_a(const IsentropicSystem& sys, double dalpha, const State& u,
            double tol = 1e-11);

/// Riemann solver at a sharp section jump a_minus -> a_plus at x = 0.
HRiemannPattern solve_a_riemann(const IsentropicSystem& sys, double a_minus,
                                double a_plus, const State& uL,
                                const State& uR, double tol = 1e-9);

/// Junction residual Psi(u1, u2) = u2 - phi_a(ln a_plus - ln a_minus, u1);
/// zero exactly at the stationary jumps the a-Riemann solver inserts.
State junction_psi(const IsentropicSystem& sys, double a_minus, double a_plus,
                   const State& u1, const State& u2);

struct LimitStudyLevel {
    int level = 0;
    double width = 0.0;          // support width of (ln a_l)'
    double distance_to_ref = 0.0;  // L1 distance to the sharp-jump reference
};

struct LimitStudyResult {
    std::vector<LimitStudyLevel> levels;
    double t_end = 0.0;
    Interval window;
};

/// Runs front tracking for a family of mollified profiles a_l whose
/// transition width shrinks as 2^-level and compares each run at t_end
/// against the sharp-jump reference built from solve_a_riemann.
LimitStudyResult limit_study(const IsentropicSystem& sys, double a_left,
                             double a_right, const State& uL, const State& uR,
                             double t_end, int levels, double eps, double h);

/// Same study over an explicit list of transition widths; the comb spacing
/// of each member is scaled in proportion to its width.
LimitStudyResult limit_study(const IsentropicSystem& sys, double a_left,
                             double a_right, const State& uL, const State& uR,
                             double t_end, const std::vector<double>& widths,
                             double eps, double h);

}  // namespace ft::gas
