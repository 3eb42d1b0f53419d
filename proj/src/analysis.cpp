#include "ft/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ft/riemann.hpp"

namespace ft {

namespace {

State side_limit(const PiecewiseConstant& u, double x, int side) {
    const double nudge = 1e-12 * std::max(1.0, std::fabs(x));
    return u.eval(side < 0 ? x - nudge : x + nudge);
}

double full_line_l1(const PiecewiseConstant& a, const PiecewiseConstant& b) {
    double lo = 0.0, hi = 0.0;
    for (double x : a.breaks) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    for (double x : b.breaks) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return l1_distance(a, b, lo - 1.0, hi + 1.0);
}

}  // namespace

Trajectory::Trajectory(SystemPtr sys, SourcePtr src, EngineConfig cfg,
                       PiecewiseConstant u0)
    : sys_(sys), src_(src), cfg_(cfg), u0_(std::move(u0)),
      tracker_(sys, src, cfg) {
    tracker_.set_initial(u0_);
    cache_[0.0] = tracker_.solution();
}

const PiecewiseConstant& Trajectory::at(double t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    if (t < tracker_.time()) {
        // rewind by re-running from the initial data
        tracker_ = FrontTracker(sys_, src_, cfg_);
        tracker_.set_initial(u0_);
    }
    tracker_.advance_to(t);
    return cache_.emplace(t, tracker_.solution()).first->second;
}

State Trajectory::eval(double t, double x) { return at(t).eval(x); }

State u_sharp(const SystemDefinition& sys, const PiecewiseConstant& u,
              double xi, double theta, double x) {
    if (theta <= 0.0)
        throw Error(ErrorCode::Validation, "u_sharp: theta must be positive");
    const State ul = side_limit(u, xi, -1);
    const State ur = side_limit(u, xi, +1);
    if ((ur - ul).norm() == 0.0) return ul;
    auto fan = solve_homogeneous_riemann(sys, ul, ur);
    return evaluate_fan(sys, fan, (x - xi) / theta);
}

LinearLocalProblem::LinearLocalProblem(const SystemDefinition& sys,
                                       const State& u)
    : u_star(u), A(sys.jacobian(u)), eig(eigen_decompose(sys, u)) {}

State u_flat(const SystemDefinition& sys, const SourceTerm& src,
             const PiecewiseConstant& u, double xi, double theta, double x) {
    if (theta < 0.0)
        throw Error(ErrorCode::Validation, "u_flat: theta must be >= 0");
    const State ustar = u.eval(xi);
    LinearLocalProblem prob(sys, ustar);
    State w = State::Zero(sys.dimension());
    for (const auto& e : prob.eig) {
        const double foot = x - e.lambda * theta;
        double coeff = e.l.dot(u.eval(foot));
        if (!src.is_zero())
            coeff += e.l.dot(g_integral_signed(src, foot, x, ustar)) /
                     e.lambda;
        w += coeff * e.r;
    }
    return w;
}

double g_comb_sum(const LinearLocalProblem& prob, const SourceTerm& src,
                  int family, double h, double t, double x) {
    const auto& e = prob.eig[family];
    const double foot = x - e.lambda * t;
    const double lo = std::min(foot, x), hi = std::max(foot, x);
    const double sgn = e.lambda > 0.0 ? 1.0 : -1.0;
    double sum = 0.0;
    const long j0 = static_cast<long>(std::floor(lo / h));
    for (long j = j0; static_cast<double>(j) * h < hi; ++j) {
        const double xj = static_cast<double>(j) * h;
        if (xj <= lo || xj >= hi) continue;
        sum += e.l.dot(src.g_integral(xj, h, prob.u_star));
    }
    return sgn * sum;
}

State w_h(const LinearLocalProblem& prob, const SourceTerm& src,
          const PiecewiseConstant& vbar, double h, double t, double x) {
    State w = State::Zero(prob.u_star.size());
    for (size_t i = 0; i < prob.eig.size(); ++i) {
        const auto& e = prob.eig[i];
        double coeff = e.l.dot(vbar.eval(x - e.lambda * t));
        if (!src.is_zero())
            coeff += g_comb_sum(prob, src, static_cast<int>(i), h, t, x) /
                     e.lambda;
        w += coeff * e.r;
    }
    return w;
}

std::vector<std::pair<double, double>> condition_i_curve(
    Trajectory& traj, double tau, double xi,
    const std::vector<double>& theta_list) {
    std::vector<std::pair<double, double>> out;
    const double lam = traj.lambda_hat();
    const PiecewiseConstant base = traj.at(tau);
    const auto& sys = traj.system();
    const State ul = side_limit(base, xi, -1);
    const State ur = side_limit(base, xi, +1);
    const bool jump = (ur - ul).norm() > 0.0;
    WaveFan fan;
    if (jump) fan = solve_homogeneous_riemann(sys, ul, ur);
    for (double theta : theta_list) {
        const PiecewiseConstant cur = traj.at(tau + theta);
        std::vector<double> hints;
        if (jump) {
            for (const auto& wv : fan.waves) {
                hints.push_back(xi + theta * wv.speed_lo);
                hints.push_back(xi + theta * wv.speed_hi);
            }
        }
        const auto ref = [&](double x) -> State {
            if (!jump) return ul;
            return evaluate_fan(sys, fan, (x - xi) / theta);
        };
        const double err = l1_distance(cur, ref, xi - theta * lam,
                                       xi + theta * lam, hints, 1e-11);
        out.emplace_back(theta, err / theta);
    }
    return out;
}

ConditionIIResult condition_ii_check(Trajectory& traj, double tau, double a,
                                     double b, double xi, double theta) {
    const double lam = traj.lambda_hat();
    if (!(a < xi && xi < b) || theta <= 0.0 || theta >= (b - a) / (2.0 * lam))
        throw Error(ErrorCode::Validation,
                    "condition_ii_check: degenerate window");
    const PiecewiseConstant base = traj.at(tau);
    const PiecewiseConstant cur = traj.at(tau + theta);
    const auto& sys = traj.system();
    const auto& src = traj.source();
    const auto ref = [&](double x) {
        return u_flat(sys, src, base, xi, theta, x);
    };
    std::vector<double> hints = base.breaks;
    for (const auto& e : eigen_decompose(sys, base.eval(xi)))
        for (double xb : base.breaks)
            hints.push_back(xb + e.lambda * theta);
    const double lhs = l1_distance(cur, ref, a + theta * lam, b - theta * lam,
                                   hints, 1e-10) /
                       theta;
    ConditionIIResult res;
    res.lhs = lhs;
    double mass = 0.0;
    if (!src.is_zero()) mass = src.omega_integral(a, b - a);
    const double tv = base.tv(a, b);
    res.bound_factor = (tv + mass) * (tv + mass);
    return res;
}

double semigroup_defect(SystemPtr sys, SourcePtr src, const EngineConfig& cfg,
                        const PiecewiseConstant& u0, double t, double s) {
    FrontTracker direct(sys, src, cfg);
    direct.set_initial(u0);
    direct.advance_to(t + s);

    FrontTracker stage1(sys, src, cfg);
    stage1.set_initial(u0);
    stage1.advance_to(s);
    FrontTracker stage2(sys, src, cfg);
    stage2.set_initial(stage1.solution().simplified(1e-14));
    stage2.advance_to(t);

    return full_line_l1(direct.solution(), stage2.solution());
}

LipschitzFit lipschitz_fit(
    SystemPtr sys, SourcePtr src, const EngineConfig& cfg,
    const std::vector<PiecewiseConstant>& data,
    const std::vector<std::pair<double, double>>& times) {
    LipschitzFit fit;
    std::vector<std::vector<PiecewiseConstant>> runs(data.size());
    for (size_t d = 0; d < data.size(); ++d) {
        FrontTracker tr(sys, src, cfg);
        tr.set_initial(data[d]);
        double cur = 0.0;
        for (const auto& [s, t] : times) {
            for (double tt : {s, t}) {
                if (tt < cur) {
                    tr = FrontTracker(sys, src, cfg);
                    tr.set_initial(data[d]);
                    cur = 0.0;
                }
                tr.advance_to(tt);
                cur = tt;
                runs[d].push_back(tr.solution());
            }
        }
    }
    for (size_t a = 0; a < data.size(); ++a) {
        for (size_t b = 0; b < data.size(); ++b) {
            for (size_t k = 0; k < times.size(); ++k) {
                const double num =
                    full_line_l1(runs[a][2 * k], runs[b][2 * k + 1]);
                const double den = std::fabs(times[k].second - times[k].first) +
                                   full_line_l1(data[a], data[b]);
                if (den < 1e-12) continue;
                if (num / den > fit.L) {
                    fit.L = num / den;
                    fit.worst_num = num;
                    fit.worst_den = den;
                }
            }
        }
    }
    return fit;
}

}  // namespace ft
