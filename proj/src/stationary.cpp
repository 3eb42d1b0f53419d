#include "ft/stationary.hpp"

namespace ft {

State flux_inverse(const SystemDefinition& sys, const State& y,
                   const State& guess, double tol, int max_iter) {
    State u = guess;
    State res = sys.flux(u) - y;
    double rn = res.norm();
    for (int it = 0; it < max_iter && rn > tol; ++it) {
        const Eigen::VectorXd step = sys.jacobian(u).fullPivLu().solve(res);
        double damp = 1.0;
        bool ok = false;
        for (int k = 0; k < 30; ++k) {
            State cand = u - damp * step;
            if (cand.allFinite()) {
                State cres = sys.flux(cand) - y;
                if (cres.norm() < rn) {
                    u = cand;
                    res = cres;
                    rn = cres.norm();
                    ok = true;
                    break;
                }
            }
            damp *= 0.5;
        }
        if (!ok) break;
    }
    if (rn > tol)
        throw Error(ErrorCode::NewtonDivergence,
                    "flux_inverse: y outside the invertibility neighborhood");
    return u;
}

State flux_inverse(const SystemDefinition& sys, const State& y) {
    return flux_inverse(sys, y, 0.5 * (sys.box_lo() + sys.box_hi()));
}

State phi_h(const SystemDefinition& sys, const SourceTerm& src, double x0,
            double h, const State& u) {
    if (src.is_zero()) return u;
    if (!sys.admissible(u))
        throw Error(ErrorCode::NonAdmissibleState,
                    "phi_h: state outside admissible region");
    const State y = sys.flux(u) + src.g_integral(x0, h, u);
    return flux_inverse(sys, y, u);
}

}  // namespace ft
