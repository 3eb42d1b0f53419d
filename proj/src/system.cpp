#include "ft/system.hpp"

#include <algorithm>
#include <cmath>

namespace ft {

bool SystemDefinition::admissible(const State& u) const {
    if (u.size() != dimension()) return false;
    for (int i = 0; i < u.size(); ++i) {
        if (!std::isfinite(u[i])) return false;
        if (u[i] < box_lo_[i] || u[i] > box_hi_[i]) return false;
    }
    return extra_admissible(u);
}

void SystemDefinition::finalize_region(const State& lo, const State& hi) {
    box_lo_ = lo;
    box_hi_ = hi;
    const int n = dimension();
    // Sample a grid over the box, keeping only states passing the extra
    // admissibility predicate.
    const int per_dim = (n == 1) ? 33 : 9;
    std::vector<State> samples;
    std::vector<int> idx(n, 0);
    for (;;) {
        State u(n);
        for (int d = 0; d < n; ++d) {
            const double t = static_cast<double>(idx[d]) / (per_dim - 1);
            u[d] = lo[d] + t * (hi[d] - lo[d]);
        }
        if (extra_admissible(u)) samples.push_back(u);
        int d = 0;
        while (d < n && ++idx[d] == per_dim) idx[d++] = 0;
        if (d == n) break;
    }
    if (samples.empty())
        throw Error(ErrorCode::Validation,
                    "admissible region is empty: box excluded by predicate");
    double margin = std::numeric_limits<double>::infinity();
    double top = 0.0;
    int p = -1;
    for (const auto& u : samples) {
        auto trip = eigen_decompose(*this, u);
        int neg = 0;
        for (const auto& t : trip) {
            margin = std::min(margin, std::fabs(t.lambda));
            top = std::max(top, std::fabs(t.lambda));
            if (t.lambda < 0.0) ++neg;
        }
        if (p < 0) p = neg;
        if (neg != p)
            throw Error(ErrorCode::Validation,
                        "family split index is not constant over the box "
                        "(resonant region)");
    }
    if (margin <= 0.0)
        throw Error(ErrorCode::Validation,
                    "characteristic speed crosses zero inside the box");
    resonance_margin_ = margin;
    split_index_ = p;
    max_wave_speed_ = top;
}

std::vector<EigenTriple> eigen_decompose(const SystemDefinition& sys,
                                         const State& u,
                                         double separation_tol) {
    if (!sys.admissible(u))
        throw Error(ErrorCode::NonAdmissibleState,
                    "eigen_decompose: state outside admissible region");
    std::vector<EigenTriple> out;
    if (auto a = sys.analytic_eigen(u)) {
        out = std::move(*a);
    } else {
        const Matrix A = sys.jacobian(u);
        const int n = sys.dimension();
        Eigen::EigenSolver<Matrix> es(A);
        for (int i = 0; i < n; ++i) {
            if (std::fabs(es.eigenvalues()[i].imag()) > 1e-9)
                throw Error(ErrorCode::EigenvalueClustering,
                            "complex eigenvalue: loss of hyperbolicity");
        }
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a_, int b_) {
            return es.eigenvalues()[a_].real() < es.eigenvalues()[b_].real();
        });
        Matrix R(n, n);
        out.resize(n);
        for (int i = 0; i < n; ++i) {
            out[i].lambda = es.eigenvalues()[order[i]].real();
            State r(n);
            for (int k = 0; k < n; ++k)
                r[k] = es.eigenvectors().col(order[i])[k].real();
            out[i].r = r;
            R.col(i) = r;
        }
        const Matrix L = R.inverse();
        for (int i = 0; i < n; ++i) out[i].l = L.row(i).transpose();
    }
    // Normalize: |r| = 1, first nonzero component positive, l . r = 1.
    for (auto& t : out) {
        double nrm = t.r.norm();
        double sgn = 1.0;
        for (int k = 0; k < t.r.size(); ++k) {
            if (std::fabs(t.r[k]) > 1e-14) {
                sgn = (t.r[k] > 0.0) ? 1.0 : -1.0;
                break;
            }
        }
        t.r *= sgn / nrm;
        t.l *= nrm / sgn;
    }
    for (size_t i = 0; i + 1 < out.size(); ++i) {
        if (out[i + 1].lambda - out[i].lambda < separation_tol)
            throw Error(ErrorCode::EigenvalueClustering,
                        "eigenvalues cluster below the separation tolerance");
    }
    return out;
}

ScalarLinearSystem::ScalarLinearSystem(double a, double lo, double hi) : a_(a) {
    State l(1), h(1);
    l << lo;
    h << hi;
    finalize_region(l, h);
}

State ScalarLinearSystem::flux(const State& u) const { return a_ * u; }

Matrix ScalarLinearSystem::jacobian(const State&) const {
    Matrix A(1, 1);
    A << a_;
    return A;
}

std::optional<std::vector<EigenTriple>> ScalarLinearSystem::analytic_eigen(
    const State&) const {
    State one(1);
    one << 1.0;
    return std::vector<EigenTriple>{{a_, one, one}};
}

ScalarShiftedBurgersSystem::ScalarShiftedBurgersSystem(double shift, double lo,
                                                       double hi)
    : shift_(shift) {
    State l(1), h(1);
    l << lo;
    h << hi;
    finalize_region(l, h);
}

State ScalarShiftedBurgersSystem::flux(const State& u) const {
    State f(1);
    f << 0.5 * u[0] * u[0] + shift_ * u[0];
    return f;
}

Matrix ScalarShiftedBurgersSystem::jacobian(const State& u) const {
    Matrix A(1, 1);
    A << u[0] + shift_;
    return A;
}

std::optional<std::vector<EigenTriple>>
ScalarShiftedBurgersSystem::analytic_eigen(const State& u) const {
    State one(1);
    one << 1.0;
    return std::vector<EigenTriple>{{u[0] + shift_, one, one}};
}

}  // namespace ft
