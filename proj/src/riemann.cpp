#include "ft/riemann.hpp"

#include <cmath>

namespace ft {

namespace {

constexpr double kCurveStep = 0.005;   // target RK4 / continuation step
constexpr double kTinyShock = 1e-6;    // below: integral-curve extension
constexpr double kNegligible = 1e-13;  // strengths treated as absent

double lambda_at(const SystemDefinition& sys, int family, const State& u) {
    return eigen_decompose(sys, u)[family].lambda;
}

/// d lambda_i . r_i by central finite difference along r_i.
double gnl_derivative(const SystemDefinition& sys, int family, const State& u,
                      const State& r) {
    const double fd = 1e-6;
    const double lp = lambda_at(sys, family, u + fd * r);
    const double lm = lambda_at(sys, family, u - fd * r);
    return (lp - lm) / (2.0 * fd);
}

/// RK4 integration of u' = dir(u) from 0 to sigma (sigma may be negative).
State integrate_curve(const SystemDefinition& sys, int family, const State& u0,
                      double sigma, bool oriented) {
    const int steps =
        std::max(4, static_cast<int>(std::ceil(std::fabs(sigma) / kCurveStep)));
    const double dt = sigma / steps;
    auto dir = [&](const State& u) -> State {
        return oriented ? rarefaction_direction(sys, family, u)
                        : eigen_decompose(sys, u)[family].r;
    };
    State u = u0;
    for (int k = 0; k < steps; ++k) {
        const State k1 = dir(u);
        const State k2 = dir(u + 0.5 * dt * k1);
        const State k3 = dir(u + 0.5 * dt * k2);
        const State k4 = dir(u + dt * k3);
        u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return u;
}

/// Hugoniot point at projection parameter sigma < 0: solves
/// f(u) - f(u0) = s (u - u0),  rdir0 . (u - u0) = sigma
/// by Newton on (u, s) starting from the integral-curve predictor.
void hugoniot_point(const SystemDefinition& sys, int family, const State& u0,
                    double sigma, const State& rdir0, State* u_out,
                    double* s_out) {
    const int n = sys.dimension();
    State u = integrate_curve(sys, family, u0, sigma, true);
    double s = 0.5 * (lambda_at(sys, family, u0) + lambda_at(sys, family, u));
    const State f0 = sys.flux(u0);
    for (int it = 0; it < 40; ++it) {
        Eigen::VectorXd res(n + 1);
        res.head(n) = sys.flux(u) - f0 - s * (u - u0);
        res[n] = rdir0.dot(u - u0) - sigma;
        if (res.norm() < 1e-13) break;
        Matrix J = Matrix::Zero(n + 1, n + 1);
        J.topLeftCorner(n, n) = sys.jacobian(u) - s * Matrix::Identity(n, n);
        J.block(0, n, n, 1) = -(u - u0);
        J.block(n, 0, 1, n) = rdir0.transpose();
        const Eigen::VectorXd step = J.fullPivLu().solve(res);
        u -= step.head(n);
        s -= step[n];
        if (!u.allFinite())
            throw Error(ErrorCode::NewtonDivergence,
                        "Hugoniot continuation diverged");
    }
    *u_out = u;
    *s_out = s;
}

}  // namespace

State rarefaction_direction(const SystemDefinition& sys, int family,
                            const State& u) {
    auto trip = eigen_decompose(sys, u);
    State r = trip[family].r;
    if (sys.genuinely_nonlinear(family)) {
        if (gnl_derivative(sys, family, u, r) < 0.0) r = -r;
    }
    return r;
}

CurvePoint lax_curve_full(const SystemDefinition& sys, int family,
                          const State& u0, double sigma) {
    if (!sys.admissible(u0))
        throw Error(ErrorCode::NonAdmissibleState,
                    "lax_curve: base state outside admissible region");
    CurvePoint out;
    const bool gnl = sys.genuinely_nonlinear(family);
    if (sigma == 0.0) {
        out.u = u0;
        out.kind = gnl ? WaveKind::Rarefaction : WaveKind::Contact;
        out.speed_lo = out.speed_hi = lambda_at(sys, family, u0);
        return out;
    }
    if (!gnl) {
        out.u = integrate_curve(sys, family, u0, sigma, false);
        out.kind = WaveKind::Contact;
        out.speed_lo = out.speed_hi = lambda_at(sys, family, u0);
    } else if (sigma > 0.0) {
        out.u = integrate_curve(sys, family, u0, sigma, true);
        out.kind = WaveKind::Rarefaction;
        out.speed_lo = lambda_at(sys, family, u0);
        out.speed_hi = lambda_at(sys, family, out.u);
    } else {
        out.kind = WaveKind::Shock;
        const State rdir = rarefaction_direction(sys, family, u0);
        if (std::fabs(sigma) < kTinyShock) {
            // Below resolvable shock size the Hugoniot locus and the
            // integral curve agree to O(sigma^3).
            out.u = integrate_curve(sys, family, u0, sigma, true);
            const double dl = gnl_derivative(sys, family, u0, rdir);
            out.speed_lo = out.speed_hi =
                lambda_at(sys, family, u0) + 0.5 * sigma * dl;
        } else {
            double s;
            hugoniot_point(sys, family, u0, sigma, rdir, &out.u, &s);
            out.speed_lo = out.speed_hi = s;
        }
    }
    if (!out.u.allFinite() || !sys.admissible(out.u))
        throw Error(ErrorCode::CurveLeftRegion,
                    "lax_curve: curve exits the admissible region");
    return out;
}

State lax_curve(const SystemDefinition& sys, int family, const State& u0,
                double sigma) {
    return lax_curve_full(sys, family, u0, sigma).u;
}

State apply_wave_curves(const SystemDefinition& sys, const State& uL,
                        const Eigen::VectorXd& sigma) {
    State u = uL;
    for (int i = 0; i < sigma.size(); ++i) {
        if (sigma[i] != 0.0) u = lax_curve(sys, i, u, sigma[i]);
    }
    return u;
}

WaveFan make_fan(const SystemDefinition& sys, const State& uL,
                 const Eigen::VectorXd& sigma) {
    WaveFan fan;
    fan.uL = uL;
    fan.sigma = sigma;
    State u = uL;
    for (int i = 0; i < sigma.size(); ++i) {
        if (std::fabs(sigma[i]) < kNegligible) continue;
        CurvePoint cp = lax_curve_full(sys, i, u, sigma[i]);
        Wave w;
        w.family = i;
        w.kind = cp.kind;
        w.sigma = sigma[i];
        w.speed_lo = cp.speed_lo;
        w.speed_hi = cp.speed_hi;
        w.uL = u;
        w.uR = cp.u;
        fan.waves.push_back(std::move(w));
        u = fan.waves.back().uR;
    }
    fan.uR = u;
    return fan;
}

WaveFan solve_homogeneous_riemann(const SystemDefinition& sys, const State& uL,
                                  const State& uR, double tol, int max_iter) {
    const int n = sys.dimension();
    if (!sys.admissible(uL) || !sys.admissible(uR))
        throw Error(ErrorCode::NonAdmissibleState,
                    "riemann: data outside admissible region");
    Eigen::VectorXd sigma = Eigen::VectorXd::Zero(n);
    auto residual = [&](const Eigen::VectorXd& s) -> State {
        return apply_wave_curves(sys, uL, s) - uR;
    };
    State res = residual(sigma);
    double rn = res.norm();
    int it = 0;
    const double fd = 1e-7;
    for (; it < max_iter && rn > tol; ++it) {
        Matrix J(n, n);
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd sp = sigma, sm = sigma;
            sp[j] += fd;
            sm[j] -= fd;
            J.col(j) = (residual(sp) - residual(sm)) / (2.0 * fd);
        }
        const Eigen::VectorXd step = J.fullPivLu().solve(res);
        double damp = 1.0;
        bool ok = false;
        for (int k = 0; k < 30; ++k) {
            Eigen::VectorXd cand = sigma - damp * step;
            try {
                State cres = residual(cand);
                const double cn = cres.norm();
                if (cn < rn || cn < tol) {
                    sigma = cand;
                    res = cres;
                    rn = cn;
                    ok = true;
                    break;
                }
            } catch (const Error&) {
                // candidate left the region; keep damping
            }
            damp *= 0.5;
        }
        if (!ok)
            throw Error(ErrorCode::NewtonDivergence,
                        "riemann: Newton stalled (states too far apart)");
    }
    if (rn > tol)
        throw Error(ErrorCode::NewtonDivergence,
                    "riemann: Newton did not reach tolerance");
    WaveFan fan = make_fan(sys, uL, sigma);
    fan.uR = uR;  // store the requested right state
    fan.newton_iterations = it;
    return fan;
}

State evaluate_fan(const SystemDefinition& sys, const WaveFan& fan, double xi) {
    if (fan.waves.empty()) return fan.uL;
    State left = fan.uL;
    for (const auto& w : fan.waves) {
        if (xi < w.speed_lo) return left;
        if (w.kind == WaveKind::Rarefaction && xi < w.speed_hi) {
            // solve lambda(psi(tau)(w.uL)) = xi for tau in (0, sigma)
            double tau =
                w.sigma * (xi - w.speed_lo) / (w.speed_hi - w.speed_lo);
            double lo = 0.0, hi = w.sigma;
            for (int k = 0; k < 60; ++k) {
                const State u = lax_curve(sys, w.family, w.uL, tau);
                const double lam = eigen_decompose(sys, u)[w.family].lambda;
                if (std::fabs(lam - xi) < 1e-12) return u;
                if (lam < xi)
                    lo = tau;
                else
                    hi = tau;
                tau = 0.5 * (lo + hi);
            }
            return lax_curve(sys, w.family, w.uL, tau);
        }
        if (xi <= w.speed_hi) return w.uR;  // right-continuous at the front
        left = w.uR;
    }
    return left;
}

}  // namespace ft
