#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ft/front_tracking.hpp"
#include "ft/piecewise.hpp"
#include "ft/source.hpp"
#include "ft/system.hpp"

namespace ft {

/// A lazily evolved approximate trajectory with snapshot caching; rewinding
/// re-runs the engine from the initial data so evaluation always agrees with
/// a fresh front-tracking evolution.
class Trajectory {
public:
    Trajectory(SystemPtr sys, SourcePtr src, EngineConfig cfg,
               PiecewiseConstant u0);

    const PiecewiseConstant& at(double t);
    State eval(double t, double x);
    double lambda_hat() const { return tracker_.lambda_hat(); }
    const EngineConfig& config() const { return tracker_.config(); }
    const SystemDefinition& system() const { return *sys_; }
    const SourceTerm& source() const { return *src_; }

private:
    SystemPtr sys_;
    SourcePtr src_;
    EngineConfig cfg_;
    PiecewiseConstant u0_;
    FrontTracker tracker_;
    std::map<double, PiecewiseConstant> cache_;
};

/// Self-similar local comparison profile: the homogeneous Riemann fan of
/// the one-sided limits of u at xi, evaluated at time theta and point x.
State u_sharp(const SystemDefinition& sys, const PiecewiseConstant& u,
              double xi, double theta, double x);

/// Constant-coefficient linear local problem frozen at u(xi).
struct LinearLocalProblem {
    State u_star;
    Matrix A;
    std::vector<EigenTriple> eig;

    LinearLocalProblem(const SystemDefinition& sys, const State& u_star);
};

/// Exact solution of the frozen linear problem with source g(x, u_star):
///   w(theta,x) = sum_i { l_i.u(x - lambda_i theta)
///                        + (1/lambda_i) int_{x-lambda_i theta}^x l_i.g } r_i
State u_flat(const SystemDefinition& sys, const SourceTerm& src,
             const PiecewiseConstant& u, double xi, double theta, double x);

/// Comb-discretized counterpart: the source mass of each window is
/// concentrated at the comb points jh crossed by the i-th characteristic.
State w_h(const LinearLocalProblem& prob, const SourceTerm& src,
          const PiecewiseConstant& vbar, double h, double t, double x);

/// The i-th comb sum G_i^h(t,x).
double g_comb_sum(const LinearLocalProblem& prob, const SourceTerm& src,
                  int family, double h, double t, double x);

/// ratio(theta) = (1/theta) int_{xi - theta lam}^{xi + theta lam}
///                |u(tau+theta, x) - U_sharp(theta, x)| dx
std::vector<std::pair<double, double>> condition_i_curve(
    Trajectory& traj, double tau, double xi,
    const std::vector<double>& theta_list);

struct ConditionIIResult {
    double lhs = 0.0;           // (1/theta) L1 distance to U_flat
    double bound_factor = 0.0;  // (TV + source mass)^2
};

ConditionIIResult condition_ii_check(Trajectory& traj, double tau, double a,
                                     double b, double xi, double theta);

/// L1 distance between P_{t+s} u0 and P_t (P_s u0), the two sides computed
/// by independent engine runs (the second re-initialized at time s).
double semigroup_defect(SystemPtr sys, SourcePtr src, const EngineConfig& cfg,
                        const PiecewiseConstant& u0, double t, double s);

struct LipschitzFit {
    double L = 0.0;
    double worst_num = 0.0;
    double worst_den = 0.0;
};

/// Fits L as the max of |P_s u - P_t v| / (|s-t| + |u-v|) over a corpus of
/// data pairs and time pairs.
LipschitzFit lipschitz_fit(SystemPtr sys, SourcePtr src,
                           const EngineConfig& cfg,
                           const std::vector<PiecewiseConstant>& data,
                           const std::vector<std::pair<double, double>>& times);

}  // namespace ft
