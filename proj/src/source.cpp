#include "ft/source.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ft/quadrature.hpp"

namespace ft {

Matrix SourceTerm::dg_du(double x, const State& u) const {
    const int n = dimension();
    Matrix J(n, n);
    const double fd = 1e-7;
    for (int j = 0; j < n; ++j) {
        State up = u, um = u;
        up[j] += fd;
        um[j] -= fd;
        J.col(j) = (g(x, up) - g(x, um)) / (2.0 * fd);
    }
    return J;
}

State SourceTerm::g_integral(double x0, double h, const State& u) const {
    const int n = dimension();
    State out(n);
    const auto splits = singular_points();
    for (int k = 0; k < n; ++k) {
        out[k] = integrate_with_splits(
            [&](double x) { return g(x, u)[k]; }, x0, x0 + h, splits, 1e-11);
    }
    return out;
}

double SourceTerm::omega_integral(double x0, double h) const {
    if (h == 0.0) return 0.0;
    return antiderivative(x0 + h) - antiderivative(x0);
}

double SourceTerm::omega_l1() const {
    double total = 0.0;
    for (const auto& iv : support()) total += omega_integral(iv.a, iv.length());
    return total;
}

double SourceTerm::mtilde_l1() const {
    double total = 0.0;
    const auto splits = singular_points();
    for (const auto& iv : support())
        total += integrate_with_splits([&](double x) { return mtilde(x); },
                                       iv.a, iv.b, splits, 1e-9);
    return total;
}

State g_integral_signed(const SourceTerm& src, double a, double b,
                        const State& u) {
    if (a <= b) return src.g_integral(a, b - a, u);
    return -src.g_integral(b, a - b, u);
}

double epsilon_tilde(const SourceTerm& src, double h) {
    if (h <= 0.0)
        throw Error(ErrorCode::Validation, "epsilon_tilde: h must be positive");
    const auto sup = src.support();
    if (sup.empty()) return 0.0;
    auto window = [&](double x) { return src.omega_integral(x, h); };
    std::vector<double> candidates;
    for (double s : src.singular_points()) {
        candidates.push_back(s - h);
        candidates.push_back(s - 0.5 * h);
        candidates.push_back(s);
    }
    double lo = sup.front().a, hi = sup.back().b;
    for (const auto& iv : sup) {
        candidates.push_back(iv.a - h);
        candidates.push_back(iv.a);
        candidates.push_back(iv.b - h);
        lo = std::min(lo, iv.a);
        hi = std::max(hi, iv.b);
    }
    const int grid = 400;
    for (int i = 0; i <= grid; ++i)
        candidates.push_back(lo - h + (hi - lo + h) * i / grid);
    double best_x = candidates.front(), best = -1.0;
    for (double c : candidates) {
        const double v = window(c);
        if (v > best) {
            best = v;
            best_x = c;
        }
    }
    // golden-section polish around the best candidate
    double a = best_x - (hi - lo + h) / grid, b = best_x + (hi - lo + h) / grid;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = window(x1), f2 = window(x2);
    for (int k = 0; k < 80 && (b - a) > 1e-13; ++k) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = window(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = window(x1);
        }
    }
    return std::max({best, f1, f2, 0.0});
}

ConstantOnIntervalSource::ConstantOnIntervalSource(State d, double a, double b)
    : d_(std::move(d)), a_(a), b_(b), dnorm_(d_.norm()) {
    if (b_ < a_)
        throw Error(ErrorCode::Validation,
                    "constant_on_interval: empty interval");
}

State ConstantOnIntervalSource::g(double x, const State&) const {
    if (x >= a_ && x <= b_) return d_;
    return State::Zero(d_.size());
}

double ConstantOnIntervalSource::omega(double x) const {
    return (x >= a_ && x <= b_) ? dnorm_ : 0.0;
}

double ConstantOnIntervalSource::antiderivative(double x) const {
    return dnorm_ * (std::clamp(x, a_, b_) - a_);
}

State ConstantOnIntervalSource::g_integral(double x0, double h,
                                           const State&) const {
    const double overlap =
        std::max(0.0, std::min(x0 + h, b_) - std::max(x0, a_));
    return overlap * d_;
}

InverseSqrtSource::InverseSqrtSource(State d, double amp, double center,
                                     double radius)
    : d_(std::move(d)), amp_(amp), c_(center), r_(radius) {
    if (amp_ <= 0.0 || r_ <= 0.0)
        throw Error(ErrorCode::Validation,
                    "inverse_sqrt: amplitude and radius must be positive");
    if (d_.norm() > 1.0 + 1e-12)
        throw Error(ErrorCode::Validation,
                    "inverse_sqrt: |direction| must be <= 1 for domination");
}

double InverseSqrtSource::omega(double x) const {
    const double xi = std::fabs(x - c_);
    if (xi > r_) return 0.0;
    if (xi == 0.0) return std::numeric_limits<double>::infinity();
    return amp_ / (2.0 * std::sqrt(xi));
}

State InverseSqrtSource::g(double x, const State&) const {
    const double w = omega(x);
    if (w == 0.0) return State::Zero(d_.size());
    return d_ * w;
}

double InverseSqrtSource::antiderivative(double x) const {
    const double xi = x - c_;
    const double s = (xi >= 0.0) ? 1.0 : -1.0;
    return amp_ * s * std::sqrt(std::min(std::fabs(xi), r_));
}

State InverseSqrtSource::g_integral(double x0, double h, const State&) const {
    return omega_integral(x0, h) * d_;
}

PiecewisePolySource::PiecewisePolySource(
    State d, std::vector<double> breaks,
    std::vector<std::vector<double>> coeffs)
    : d_(std::move(d)),
      breaks_(std::move(breaks)),
      coeffs_(std::move(coeffs)),
      dnorm_(d_.norm()) {
    if (breaks_.size() != coeffs_.size() + 1 || coeffs_.empty())
        throw Error(ErrorCode::Validation,
                    "custom_table: breaks/coeffs size mismatch");
    if (!std::is_sorted(breaks_.begin(), breaks_.end()))
        throw Error(ErrorCode::Validation, "custom_table: breaks not sorted");
    cum_.assign(breaks_.size(), 0.0);
    for (size_t i = 0; i + 1 < breaks_.size(); ++i) {
        cum_[i + 1] =
            cum_[i] + integrate([&](double x) { return omega(x); }, breaks_[i],
                                breaks_[i + 1], 1e-13);
    }
}

double PiecewisePolySource::profile(double x) const {
    if (x < breaks_.front() || x >= breaks_.back()) return 0.0;
    const size_t i =
        std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin() -
        1;
    const double t = x - breaks_[i];
    double v = 0.0;
    for (auto it = coeffs_[i].rbegin(); it != coeffs_[i].rend(); ++it)
        v = v * t + *it;
    return v;
}

State PiecewisePolySource::g(double x, const State&) const {
    return profile(x) * d_;
}

double PiecewisePolySource::omega(double x) const {
    return std::fabs(profile(x)) * dnorm_;
}

double PiecewisePolySource::antiderivative(double x) const {
    if (x <= breaks_.front()) return 0.0;
    if (x >= breaks_.back()) return cum_.back();
    const size_t i =
        std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin() -
        1;
    return cum_[i] + integrate([&](double y) { return omega(y); }, breaks_[i],
                               x, 1e-13);
}

std::optional<DominationViolation> audit_domination(const SourceTerm& src,
                                                    const SystemDefinition& sys,
                                                    unsigned seed, int samples,
                                                    double slack) {
    const auto sup = src.support();
    if (sup.empty()) return std::nullopt;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = sys.dimension();
    for (int k = 0; k < samples; ++k) {
        const auto& iv = sup[k % sup.size()];
        const double x = iv.a + unit(rng) * iv.length();
        State u(n);
        for (int d = 0; d < n; ++d)
            u[d] = sys.box_lo()[d] + unit(rng) * (sys.box_hi()[d] -
                                                  sys.box_lo()[d]);
        if (!sys.admissible(u)) continue;
        const double w = src.omega(x);
        const double gn = src.g(x, u).norm();
        if (gn > w + slack)
            return DominationViolation{x, u, w, gn, "|g| > omega"};
        const double dgn = src.dg_du(x, u).norm();
        if (dgn > w + slack * (1.0 + dgn))
            return DominationViolation{x, u, w, dgn, "|D_u g| > omega"};
        const double m = src.mtilde(x);
        if (std::max(gn, dgn) > m + slack)
            return DominationViolation{x, u, m, std::max(gn, dgn),
                                       "C2 sample > mtilde"};
    }
    return std::nullopt;
}

}  // namespace ft
