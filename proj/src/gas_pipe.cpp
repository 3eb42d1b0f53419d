#include "ft/gas_pipe.hpp"

#include <algorithm>
#include <cmath>

#include "ft/front_tracking.hpp"
#include "ft/piecewise.hpp"

namespace ft::gas {

IsentropicSystem::IsentropicSystem(double gamma, double kappa, const State& lo,
                                   const State& hi, double sonic_margin)
    : gamma_(gamma), kappa_(kappa), sonic_margin_(sonic_margin) {
    if (gamma <= 1.0 || kappa <= 0.0)
        throw Error(ErrorCode::Validation,
                    "isentropic gas needs gamma > 1 and kappa > 0");
    if (lo[0] <= 0.0)
        throw Error(ErrorCode::Validation, "density box must be positive");
    finalize_region(lo, hi);
}

double IsentropicSystem::sound_speed(double rho) const {
    return std::sqrt(gamma_ * kappa_ * std::pow(rho, gamma_ - 1.0));
}

State IsentropicSystem::flux(const State& u) const {
    const double rho = u[0], q = u[1];
    State f(2);
    f << q, q * q / rho + kappa_ * std::pow(rho, gamma_);
    return f;
}

Matrix IsentropicSystem::jacobian(const State& u) const {
    const double rho = u[0], q = u[1];
    const double v = q / rho;
    const double c2 = gamma_ * kappa_ * std::pow(rho, gamma_ - 1.0);
    Matrix J(2, 2);
    J << 0.0, 1.0, c2 - v * v, 2.0 * v;
    return J;
}

std::optional<std::vector<EigenTriple>> IsentropicSystem::analytic_eigen(
    const State& u) const {
    const double rho = u[0], v = u[1] / u[0];
    const double c = sound_speed(rho);
    const double l1 = v - c, l2 = v + c;
    State r1(2), r2(2), le1(2), le2(2);
    r1 << 1.0, l1;
    r2 << 1.0, l2;
    const double d = l2 - l1;  // = 2c > 0
    le1 << l2 / d, -1.0 / d;
    le2 << -l1 / d, 1.0 / d;
    return std::vector<EigenTriple>{{l1, r1, le1}, {l2, r2, le2}};
}

bool IsentropicSystem::extra_admissible(const State& u) const {
    const double rho = u[0];
    if (!(rho > 0.0)) return false;
    const double v = u[1] / rho;
    return sound_speed(rho) - std::fabs(v) >= sonic_margin_;
}

PipeProfile::PipeProfile(double al, double ar, double xlo, double xhi)
    : a_left(al), a_right(ar), x_lo(xlo), x_hi(xhi) {
    if (al <= 0.0 || ar <= 0.0 || xhi <= xlo)
        throw Error(ErrorCode::Validation, "bad pipe profile parameters");
}

double PipeProfile::log_a(double x) const {
    const double la = std::log(a_left), lb = std::log(a_right);
    if (x <= x_lo) return la;
    if (x >= x_hi) return lb;
    const double t = (x - x_lo) / (x_hi - x_lo);
    const double s = t * t * (3.0 - 2.0 * t);
    return la + s * (lb - la);
}

double PipeProfile::a(double x) const { return std::exp(log_a(x)); }

double PipeProfile::dlog_a(double x) const {
    if (x <= x_lo || x >= x_hi) return 0.0;
    const double t = (x - x_lo) / (x_hi - x_lo);
    const double ds = 6.0 * t * (1.0 - t) / (x_hi - x_lo);
    return ds * (std::log(a_right) - std::log(a_left));
}

namespace {

State pipe_g_vector(const State& u) {
    State v(2);
    v << u[1], u[1] * u[1] / u[0];
    return v;
}

double domination_bound(const SystemDefinition& sys) {
    // Sampled bound for both |(q, q^2/rho)| and the matrix norm of its
    // u-derivative over the admissible box.
    double K = 0.0;
    const int m = 33;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            State u(2);
            u[0] = sys.box_lo()[0] +
                   (sys.box_hi()[0] - sys.box_lo()[0]) * i / (m - 1);
            u[1] = sys.box_lo()[1] +
                   (sys.box_hi()[1] - sys.box_lo()[1]) * j / (m - 1);
            if (!sys.admissible(u)) continue;
            const double v = u[1] / u[0];
            K = std::max(K, pipe_g_vector(u).norm());
            Matrix D(2, 2);
            D << 0.0, 1.0, -v * v, 2.0 * v;
            K = std::max(K, D.norm());
        }
    }
    return 1.05 * K;  // margin for off-grid states
}

}  // namespace

PipeProfileSource::PipeProfileSource(PipeProfile profile,
                                     const SystemDefinition& sys)
    : profile_(profile), K_(domination_bound(sys)) {}

PipeProfileSource::PipeProfileSource(PipeProfile profile, double K)
    : profile_(profile), K_(K) {}

State PipeProfileSource::g(double x, const State& u) const {
    return -profile_.dlog_a(x) * pipe_g_vector(u);
}

Matrix PipeProfileSource::dg_du(double x, const State& u) const {
    const double v = u[1] / u[0];
    Matrix D(2, 2);
    D << 0.0, 1.0, -v * v, 2.0 * v;
    return -profile_.dlog_a(x) * D;
}

double PipeProfileSource::omega(double x) const {
    return K_ * std::fabs(profile_.dlog_a(x));
}

double PipeProfileSource::antiderivative(double x) const {
    return K_ * std::fabs(profile_.log_a(x) - std::log(profile_.a_left));
}

std::vector<double> PipeProfileSource::singular_points() const {
    return {profile_.x_lo, profile_.x_hi};
}

std::vector<Interval> PipeProfileSource::support() const {
    if (is_zero()) return {};
    return {{profile_.x_lo, profile_.x_hi}};
}

State PipeProfileSource::g_integral(double x0, double h, const State& u) const {
    const double dla = profile_.log_a(x0 + h) - profile_.log_a(x0);
    return -dla * pipe_g_vector(u);
}

bool PipeProfileSource::is_zero() const {
    return profile_.a_left == profile_.a_right;
}

State phi_a(const IsentropicSystem& sys, double dalpha, const State& u,
            double tol) {
    if (dalpha == 0.0) return u;
    const auto rhs = [&](const State& w) -> State {
        if (!sys.admissible(w))
            throw Error(ErrorCode::SonicBreakdown,
                        "stationary pipe flow left the subsonic region");
        State gt(2);
        gt << -w[1], -w[1] * w[1] / w[0];
        return sys.jacobian(w).partialPivLu().solve(gt);
    };
    const auto run = [&](int nsteps) -> State {
        const double dt = dalpha / nsteps;
        State w = u;
        for (int k = 0; k < nsteps; ++k) {
            const State k1 = rhs(w);
            const State k2 = rhs(w + 0.5 * dt * k1);
            const State k3 = rhs(w + 0.5 * dt * k2);
            const State k4 = rhs(w + dt * k3);
            w = w + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return w;
    };
    int n = 16;
    State prev = run(n);
    for (int round = 0; round < 9; ++round) {
        n *= 2;
        const State cur = run(n);
        if ((cur - prev).norm() <= tol) return cur;
        prev = cur;
    }
    return prev;
}

HRiemannPattern solve_a_riemann(const IsentropicSystem& sys, double a_minus,
                                double a_plus, const State& uL,
                                const State& uR, double tol) {
    const double dalpha = std::log(a_plus) - std::log(a_minus);
    const JumpMap jump = [&sys, dalpha](const State& u) {
        return phi_a(sys, dalpha, u);
    };
    auto pat = solve_coupled_riemann(sys, jump, uL, uR, tol);
    pat.sigma_zero = std::fabs(dalpha);
    return pat;
}

State junction_psi(const IsentropicSystem& sys, double a_minus, double a_plus,
                   const State& u1, const State& u2) {
    const double dalpha = std::log(a_plus) - std::log(a_minus);
    return u2 - phi_a(sys, dalpha, u1);
}

LimitStudyResult limit_study(const IsentropicSystem& sys, double a_left,
                             double a_right, const State& uL, const State& uR,
                             double t_end, const std::vector<double>& widths,
                             double eps, double h) {
    LimitStudyResult res;
    res.t_end = t_end;
    const double span = sys.max_wave_speed() * t_end;
    res.window = {-1.5 - 2.0 * span, 1.5 + 2.0 * span};

    // Sharp-jump reference: the data jump at x = -1 launches a homogeneous
    // fan, the section jump at x = 0 its stationary pattern; for t_end
    // small enough the two groups have not met and the exact solution is
    // their juxtaposition, split at the midpoint x = -0.5.
    auto fan = solve_homogeneous_riemann(sys, uL, uR);
    auto ref_pat = solve_a_riemann(sys, a_left, a_right, uR, uR);
    const auto ref = [&](double x) {
        if (x <= -0.5) return evaluate_fan(sys, fan, (x + 1.0) / t_end);
        return evaluate_h_pattern(sys, ref_pat, x / t_end);
    };

    auto sys_ptr = std::make_shared<IsentropicSystem>(sys);
    for (size_t l = 0; l < widths.size(); ++l) {
        const double half = 0.5 * widths[l];
        PipeProfile prof(a_left, a_right, -half, half);
        auto src = std::make_shared<PipeProfileSource>(prof, sys);

        EngineConfig cfg;
        cfg.eps = eps;
        cfg.h = h * widths[l] / widths.front();
        FrontTracker tracker(sys_ptr, src, cfg);
        PiecewiseConstant u0;
        u0.breaks = {-1.0};
        u0.values = {uL, uR};
        tracker.set_initial(u0);
        tracker.advance_to(t_end);
        const auto sol = tracker.solution();

        LimitStudyLevel lev;
        lev.level = static_cast<int>(l);
        lev.width = widths[l];
        lev.distance_to_ref = l1_distance(
            sol, ref, res.window.a, res.window.b, {0.0}, 1e-8);
        res.levels.push_back(lev);
    }
    return res;
}

LimitStudyResult limit_study(const IsentropicSystem& sys, double a_left,
                             double a_right, const State& uL, const State& uR,
                             double t_end, int levels, double eps, double h) {
    std::vector<double> widths;
    for (int l = 0; l < levels; ++l) widths.push_back(std::pow(2.0, -l));
    return limit_study(sys, a_left, a_right, uL, uR, t_end, widths, eps, h);
}

}  // namespace ft::gas
