#include "ft/piecewise.hpp"

#include <algorithm>
#include <cmath>

#include "ft/quadrature.hpp"

namespace ft {

const State& PiecewiseConstant::eval(double x) const {
    const size_t i =
        std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin();
    return values[i];
}

double PiecewiseConstant::tv() const {
    double t = 0.0;
    for (size_t i = 0; i < breaks.size(); ++i)
        t += (values[i + 1] - values[i]).norm();
    return t;
}

double PiecewiseConstant::tv(double a, double b) const {
    double t = 0.0;
    for (size_t i = 0; i < breaks.size(); ++i)
        if (breaks[i] > a && breaks[i] < b)
            t += (values[i + 1] - values[i]).norm();
    return t;
}

PiecewiseConstant PiecewiseConstant::simplified(double jump_tol) const {
    PiecewiseConstant out;
    out.values.push_back(values.front());
    for (size_t i = 0; i < breaks.size(); ++i) {
        if ((values[i + 1] - out.values.back()).norm() > jump_tol) {
            out.breaks.push_back(breaks[i]);
            out.values.push_back(values[i + 1]);
        }
    }
    return out;
}

double l1_distance(const PiecewiseConstant& u, const PiecewiseConstant& v,
                   double a, double b) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double x : u.breaks)
        if (x > a && x < b) pts.push_back(x);
    for (double x : v.breaks)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double mid = 0.5 * (pts[i] + pts[i + 1]);
        total += (pts[i + 1] - pts[i]) * (u.eval(mid) - v.eval(mid)).norm();
    }
    return total;
}

double l1_distance(const PiecewiseConstant& u,
                   const std::function<State(double)>& v, double a, double b,
                   const std::vector<double>& extra_breaks, double tol) {
    std::vector<double> splits = u.breaks;
    splits.insert(splits.end(), extra_breaks.begin(), extra_breaks.end());
    return integrate_with_splits(
        [&](double x) { return (u.eval(x) - v(x)).norm(); }, a, b, splits,
        tol);
}

State PiecewisePoly::eval(double x) const {
    for (const auto& p : pieces) {
        if (x >= p.a && x < p.b) {
            State u(background.size());
            const double t = x - p.a;
            for (size_t c = 0; c < p.coeffs.size(); ++c) {
                double v = 0.0;
                for (auto it = p.coeffs[c].rbegin(); it != p.coeffs[c].rend();
                     ++it)
                    v = v * t + *it;
                u[c] = v;
            }
            return u;
        }
    }
    return background;
}

State PiecewisePoly::cell_average(double a, double b) const {
    if (b <= a) return eval(a);
    State acc = State::Zero(background.size());
    for (int c = 0; c < background.size(); ++c)
        acc[c] = integrate([&](double x) { return eval(x)[c]; }, a, b, 1e-13);
    return acc / (b - a);
}

double PiecewisePoly::tv() const {
    // polynomial pieces: variation from the derivative plus endpoint jumps
    double t = 0.0;
    for (const auto& p : pieces) {
        t += (eval(p.a) - background).norm();
        t += (eval(p.b - 1e-13 * std::max(1.0, std::fabs(p.b))) - background)
                 .norm();
        for (int c = 0; c < background.size(); ++c) {
            t += integrate(
                [&](double x) {
                    const double fd = 1e-7;
                    return std::fabs((eval(x + fd)[c] - eval(x - fd)[c]) /
                                     (2.0 * fd));
                },
                p.a + 1e-9, p.b - 1e-9, 1e-9);
        }
    }
    return t;
}

std::vector<double> PiecewisePoly::knots() const {
    std::vector<double> k;
    for (const auto& p : pieces) {
        k.push_back(p.a);
        k.push_back(p.b);
    }
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    return k;
}

}  // namespace ft
