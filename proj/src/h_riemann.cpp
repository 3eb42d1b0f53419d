#include "ft/h_riemann.hpp"

#include <cmath>

#include "ft/stationary.hpp"

namespace ft {

State apply_coupled_pattern(const SystemDefinition& sys, const JumpMap& jump,
                            const State& uL, const Eigen::VectorXd& sigma) {
    const int p = sys.split_index();
    State u = uL;
    for (int i = 0; i < p; ++i)
        if (sigma[i] != 0.0) u = lax_curve(sys, i, u, sigma[i]);
    u = jump(u);
    for (int i = p; i < sigma.size(); ++i)
        if (sigma[i] != 0.0) u = lax_curve(sys, i, u, sigma[i]);
    return u;
}

HRiemannPattern solve_coupled_riemann(const SystemDefinition& sys,
                                      const JumpMap& jump, const State& uL,
                                      const State& uR, double tol,
                                      int max_iter) {
    const int n = sys.dimension();
    const int p = sys.split_index();
    if (!sys.admissible(uL) || !sys.admissible(uR))
        throw Error(ErrorCode::NonAdmissibleState,
                    "h-riemann: data outside admissible region");

    // Initial guess: the homogeneous strengths after removing the
    // zero-wave shift at uL (Phi_h is an O(int omega) perturbation).
    Eigen::VectorXd sigma = Eigen::VectorXd::Zero(n);
    try {
        const State shift = jump(uL) - uL;
        const State adj = uR - shift;
        if (sys.admissible(adj))
            sigma = solve_homogeneous_riemann(sys, uL, adj, 1e-7).sigma;
    } catch (const Error&) {
        sigma.setZero();
    }

    auto residual = [&](const Eigen::VectorXd& s) -> State {
        return apply_coupled_pattern(sys, jump, uL, s) - uR;
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
            }
            damp *= 0.5;
        }
        if (!ok)
            throw Error(ErrorCode::NewtonDivergence,
                        "h-riemann: Newton stalled (outside admission ball)");
    }
    if (rn > tol)
        throw Error(ErrorCode::NewtonDivergence,
                    "h-riemann: Newton did not reach tolerance");

    HRiemannPattern pat;
    pat.uL = uL;
    pat.uR = uR;
    pat.sigma = sigma;
    pat.newton_iterations = it;
    Eigen::VectorXd sl = Eigen::VectorXd::Zero(n), sr = Eigen::VectorXd::Zero(n);
    sl.head(p) = sigma.head(p);
    sr.tail(n - p) = sigma.tail(n - p);
    pat.left_fan = make_fan(sys, uL, sl);
    pat.u_minus = pat.left_fan.uR;
    pat.u_plus = jump(pat.u_minus);
    pat.right_fan = make_fan(sys, pat.u_plus, sr);
    for (const auto& w : pat.left_fan.waves)
        if (w.speed_hi >= 0.0)
            throw Error(ErrorCode::Validation,
                        "h-riemann: left fan wave with non-negative speed");
    for (const auto& w : pat.right_fan.waves)
        if (w.speed_lo <= 0.0)
            throw Error(ErrorCode::Validation,
                        "h-riemann: right fan wave with non-positive speed");
    return pat;
}

HRiemannPattern solve_h_riemann(const SystemDefinition& sys,
                                const SourceTerm& src, double x0, double h,
                                const State& uL, const State& uR, double tol) {
    auto jump = [&](const State& u) { return phi_h(sys, src, x0, h, u); };
    HRiemannPattern pat = solve_coupled_riemann(sys, jump, uL, uR, tol);
    pat.x0 = x0;
    pat.h = h;
    pat.sigma_zero = src.omega_integral(x0, h);
    return pat;
}

double zero_wave_strength(const SourceTerm& src, long j, double h) {
    if (h <= 0.0)
        throw Error(ErrorCode::Validation,
                    "zero_wave_strength: h must be positive");
    return src.omega_integral(static_cast<double>(j) * h, h);
}

State evaluate_h_pattern(const SystemDefinition& sys,
                         const HRiemannPattern& pat, double xi) {
    if (xi < 0.0) return evaluate_fan(sys, pat.left_fan, xi);
    return evaluate_fan(sys, pat.right_fan, xi);
}

namespace {

nlohmann::json vec_json(const State& u) {
    nlohmann::json a = nlohmann::json::array();
    for (int i = 0; i < u.size(); ++i) a.push_back(u[i]);
    return a;
}

nlohmann::json fan_json(const WaveFan& fan) {
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : fan.waves) {
        ws.push_back({{"family", w.family},
                      {"kind", w.kind == WaveKind::Shock        ? "shock"
                               : w.kind == WaveKind::Rarefaction ? "rarefaction"
                                                                  : "contact"},
                      {"sigma", w.sigma},
                      {"speed_lo", w.speed_lo},
                      {"speed_hi", w.speed_hi}});
    }
    return ws;
}

}  // namespace

nlohmann::json to_json(const HRiemannPattern& pat) {
    nlohmann::json j;
    j["x0"] = pat.x0;
    j["h"] = pat.h;
    j["u_l"] = vec_json(pat.uL);
    j["u_minus"] = vec_json(pat.u_minus);
    j["u_plus"] = vec_json(pat.u_plus);
    j["u_r"] = vec_json(pat.uR);
    j["sigma"] = vec_json(pat.sigma);
    j["sigma_zero"] = pat.sigma_zero;
    j["left_fan"] = fan_json(pat.left_fan);
    j["right_fan"] = fan_json(pat.right_fan);
    return j;
}

}  // namespace ft
