// Acceptance gate: ten end-to-end checks of the solver stack, each printed
// as a single pass/fail line. Exit status is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ft/analysis.hpp"
#include "ft/front_tracking.hpp"
#include "ft/gas_pipe.hpp"
#include "ft/h_riemann.hpp"
#include "ft/piecewise.hpp"
#include "ft/riemann.hpp"
#include "ft/source.hpp"
#include "ft/stationary.hpp"
#include "ft/system.hpp"

using namespace ft;

namespace {

State scalar(double v) {
    State u(1);
    u[0] = v;
    return u;
}

State state2(double a, double b) {
    State u(2);
    u[0] = a;
    u[1] = b;
    return u;
}

PiecewiseConstant pc(std::vector<double> breaks, std::vector<State> values) {
    PiecewiseConstant u;
    u.breaks = std::move(breaks);
    u.values = std::move(values);
    return u;
}

double full_line_l1(const PiecewiseConstant& a, const PiecewiseConstant& b) {
    double lo = 0.0, hi = 0.0;
    for (double x : a.breaks) lo = std::min(lo, x), hi = std::max(hi, x);
    for (double x : b.breaks) lo = std::min(lo, x), hi = std::max(hi, x);
    return l1_distance(a, b, lo - 1.0, hi + 1.0);
}

PiecewiseConstant run_to(SystemPtr sys, SourcePtr src, const EngineConfig& cfg,
                         const PiecewiseConstant& u0, double t) {
    FrontTracker tr(sys, src, cfg);
    tr.set_initial(u0);
    tr.advance_to(t);
    return tr.solution();
}

std::shared_ptr<gas::IsentropicSystem> make_gas() {
    return std::make_shared<gas::IsentropicSystem>(2.0, 1.0, state2(0.2, -1.2),
                                                   state2(2.5, 1.2));
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

int g_failures = 0;

void run_criterion(int id, const std::string& name,
                   const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (!out.pass) ++g_failures;
    std::printf("criterion %2d %-34s %s  (%.1fs; %s)\n", id,
                ("[" + name + "]").c_str(), out.pass ? "PASS" : "FAIL", secs,
                out.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

// --- 1. L1 convergence to a closed-form solution with an unbounded source.
Outcome criterion1() {
    auto sys = std::make_shared<ScalarLinearSystem>(2.0, -2.0, 2.0);
    auto src = std::make_shared<InverseSqrtSource>(scalar(1.0), 1.0, 0.0, 1.0);
    const auto u0 = pc({-2.0, -1.0}, {scalar(0.0), scalar(0.2), scalar(0.0)});
    const double t = 0.75;
    const auto exact = [&](double x) -> State {
        return u0.eval(x - 2.0 * t) +
               g_integral_signed(*src, x - 2.0 * t, x, scalar(0.0)) / 2.0;
    };
    const std::vector<double> hints = {-1.0, 0.0, 1.0, 0.5,
                                       1.5,  2.5, -0.5};
    std::vector<double> errs;
    for (auto [eps, h] : {std::pair{0.04, 0.1}, {0.02, 0.05}, {0.01, 0.025}}) {
        EngineConfig cfg;
        cfg.eps = eps;
        cfg.h = h;
        const auto sol = run_to(sys, src, cfg, u0, t);
        errs.push_back(l1_distance(sol, exact, -3.0, 3.0, hints, 1e-9));
    }
    const bool mono = errs[1] < errs[0] && errs[2] < errs[1];
    const bool ratio = errs[2] <= 0.25 * errs[0];
    Outcome out;
    out.pass = mono && ratio;
    out.detail = "L1 errors " + fmt(errs[0]) + " > " + fmt(errs[1]) + " > " +
                 fmt(errs[2]) + ", finest/coarsest = " +
                 [&] {
                     char b[32];
                     std::snprintf(b, sizeof(b), "%.7f", errs[2] / errs[0]);
                     return std::string(b);
                 }() +
                 " (need <= 0.25)";
    return out;
}

// --- 2. Defining residual of the approximate stationary map.
Outcome criterion2() {
    struct Case {
        SystemPtr sys;
        SourcePtr src;
        std::function<State(std::mt19937_64&)> draw;
    };
    auto gsys = make_gas();
    std::vector<Case> cases;
    cases.push_back(
        {std::make_shared<ScalarLinearSystem>(2.0, -2.0, 2.0),
         std::make_shared<InverseSqrtSource>(scalar(1.0), 1.0, 0.0, 1.0),
         [](std::mt19937_64& r) {
             return scalar(std::uniform_real_distribution<>(-1.5, 1.5)(r));
         }});
    cases.push_back(
        {std::make_shared<ScalarShiftedBurgersSystem>(2.0, -1.0, 1.0),
         std::make_shared<ConstantOnIntervalSource>(scalar(0.3), 0.0, 0.6),
         [](std::mt19937_64& r) {
             return scalar(std::uniform_real_distribution<>(-0.8, 0.8)(r));
         }});
    cases.push_back(
        {gsys,
         std::make_shared<gas::PipeProfileSource>(
             gas::PipeProfile(1.0, 1.3, -0.2, 0.2), *gsys),
         [](std::mt19937_64& r) {
             return state2(std::uniform_real_distribution<>(0.7, 2.0)(r),
                           std::uniform_real_distribution<>(-0.5, 0.5)(r));
         }});

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<> xd(-2.0, 2.0), hd(1e-3, 0.2);
    double worst = 0.0;
    int checked = 0;
    for (const auto& c : cases) {
        for (int k = 0; k < 1000; ++k) {
            const double x0 = xd(rng), h = hd(rng);
            const State u = c.draw(rng);
            if (!c.sys->admissible(u)) continue;
            const State w = phi_h(*c.sys, *c.src, x0, h, u);
            const double res = (c.sys->flux(w) - c.sys->flux(u) -
                                c.src->g_integral(x0, h, u))
                                   .norm();
            worst = std::max(worst, res);
            ++checked;
        }
    }
    Outcome out;
    out.pass = worst <= 1e-10 && checked >= 2500;
    out.detail = "worst residual " + fmt(worst) + " over " +
                 std::to_string(checked) + " samples (need <= 1e-10)";
    return out;
}

// --- 3. Coupled Riemann solver: reconstruction and wave-size equivalence.
Outcome criterion3() {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<> unit(0.0, 1.0);
    double worst_res = 0.0, fitted_c = 1.0;
    int total = 0, newton_ok = 0;

    auto run_case = [&](const SystemDefinition& sys, const SourceTerm& src,
                        const State& uL, const State& uR, double x0,
                        double h) {
        ++total;
        HRiemannPattern pat;
        try {
            pat = solve_h_riemann(sys, src, x0, h, uL, uR);
        } catch (const Error&) {
            return;
        }
        ++newton_ok;
        const auto jump = [&](const State& u) {
            return phi_h(sys, src, x0, h, u);
        };
        const State rec = apply_coupled_pattern(sys, jump, uL, pat.sigma);
        worst_res = std::max(worst_res, (rec - uR).norm());

        const auto fan = solve_homogeneous_riemann(sys, uL, uR);
        const double m = src.omega_integral(x0, h);
        const double sh = pat.sigma.cwiseAbs().sum();
        const double shom = fan.sigma.cwiseAbs().sum();
        fitted_c = std::max(fitted_c, (sh + 1e-14) / (shom + m + 1e-14));
        fitted_c = std::max(fitted_c, (shom + 1e-14) / (sh + m + 1e-14));
    };

    auto burgers =
        std::make_shared<ScalarShiftedBurgersSystem>(2.0, -1.0, 1.0);
    InverseSqrtSource bsrc(scalar(1.0), 1.0, 0.2, 0.8);
    for (int k = 0; k < 500; ++k) {
        const double ul = -0.6 + 1.2 * unit(rng);
        const double ur =
            std::clamp(ul - 0.3 + 0.6 * unit(rng), -0.95, 0.95);
        run_case(*burgers, bsrc, scalar(ul), scalar(ur),
                 -1.2 + 2.4 * unit(rng), 1e-3 + 0.1 * unit(rng));
    }
    auto gsys = make_gas();
    gas::PipeProfileSource gsrc(gas::PipeProfile(1.0, 1.3, -0.2, 0.2), *gsys);
    for (int k = 0; k < 500; ++k) {
        const State uL = state2(0.8 + 0.8 * unit(rng), -0.3 + 0.6 * unit(rng));
        State uR = uL + state2(-0.15 + 0.3 * unit(rng),
                               -0.15 + 0.3 * unit(rng));
        if (!gsys->admissible(uR)) uR = uL;
        run_case(*gsys, gsrc, uL, uR, -0.5 + 1.0 * unit(rng),
                 1e-3 + 0.1 * unit(rng));
    }

    Outcome out;
    out.pass = total == 1000 && newton_ok == total && worst_res <= 1e-8 &&
               fitted_c <= 10.0;
    out.detail = "Newton " + std::to_string(newton_ok) + "/" +
                 std::to_string(total) + ", worst residual " + fmt(worst_res) +
                 ", fitted equivalence C = " + fmt(fitted_c);
    return out;
}

// --- 4. Uniform total-variation bound over a 20-run corpus.
Outcome criterion4() {
    struct Run {
        SystemPtr sys;
        SourcePtr src;
        PiecewiseConstant u0;
        double t_end;
    };
    std::vector<Run> corpus;
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<> unit(0.0, 1.0);

    auto burgers =
        std::make_shared<ScalarShiftedBurgersSystem>(2.0, -1.0, 1.0);
    auto bsrc =
        std::make_shared<ConstantOnIntervalSource>(scalar(0.3), 0.0, 0.6);
    auto bzero = std::make_shared<ZeroSource>(1);
    for (int d = 0; d < 5; ++d) {
        std::vector<double> breaks;
        std::vector<State> values{scalar(0.5 * unit(rng) - 0.25)};
        const int jumps = 2 + static_cast<int>(3.0 * unit(rng));
        double x = -1.0;
        for (int j = 0; j < jumps; ++j) {
            x += 0.2 + 0.5 * unit(rng);
            breaks.push_back(x);
            values.push_back(scalar(0.5 * unit(rng) - 0.25));
        }
        const auto u0 = pc(breaks, values);
        corpus.push_back({burgers, bzero, u0, 0.5});
        corpus.push_back({burgers, bsrc, u0, 0.5});
    }
    auto gsys = make_gas();
    auto gsrc = std::make_shared<gas::PipeProfileSource>(
        gas::PipeProfile(1.0, 1.2, -0.2, 0.2), *gsys);
    auto gzero = std::make_shared<ZeroSource>(2);
    for (int d = 0; d < 5; ++d) {
        const State a = state2(0.9 + 0.3 * unit(rng), -0.2 + 0.4 * unit(rng));
        const State b = state2(0.9 + 0.3 * unit(rng), -0.2 + 0.4 * unit(rng));
        const auto u0 = pc({-0.8 + 0.4 * unit(rng)}, {a, b});
        corpus.push_back({gsys, gzero, u0, 0.4});
        corpus.push_back({gsys, gsrc, u0, 0.4});
    }

    EngineConfig cfg;
    cfg.eps = 0.02;
    cfg.h = 0.05;
    double fitted_c = 0.0;
    bool functional_ok = true;
    for (const auto& r : corpus) {
        FrontTracker tr(r.sys, r.src, cfg);
        tr.set_initial(r.u0);
        const auto g0 = tr.glimm();
        const double f0 = g0.V + cfg.kappa_glimm * g0.Q;
        double vsup = g0.V;
        for (int k = 1; k <= 5; ++k) {
            tr.advance_to(r.t_end * k / 5.0);
            const auto g = tr.glimm();
            vsup = std::max(vsup, g.V);
            if (g.V + cfg.kappa_glimm * g.Q > 1.5 * f0 + 1e-9)
                functional_ok = false;
        }
        const double denom = r.u0.tv() + r.src->omega_l1();
        if (denom > 1e-12) fitted_c = std::max(fitted_c, vsup / denom);
    }
    Outcome out;
    out.pass = functional_ok && fitted_c <= 10.0;
    out.detail = std::string("functional within 1.5x on all runs: ") +
                 (functional_ok ? "yes" : "NO") +
                 ", fitted TV constant C = " + fmt(fitted_c);
    return out;
}

// --- 5. Time-Lipschitz constant and semigroup L stable across h.
Outcome criterion5() {
    auto burgers =
        std::make_shared<ScalarShiftedBurgersSystem>(2.0, -1.0, 1.0);
    auto src =
        std::make_shared<ConstantOnIntervalSource>(scalar(0.3), 0.0, 0.6);
    const auto u0 =
        pc({-0.5, 0.3}, {scalar(0.3), scalar(-0.1), scalar(0.2)});
    const std::vector<PiecewiseConstant> data = {
        u0, pc({-0.2}, {scalar(0.3), scalar(0.05)}),
        pc({0.1}, {scalar(-0.2), scalar(0.25)})};
    const std::vector<std::pair<double, double>> times = {{0.1, 0.2},
                                                          {0.3, 0.45}};
    std::vector<double> cps, ls;
    for (double h : {0.1, 0.05, 0.025}) {
        EngineConfig cfg;
        cfg.eps = 0.02;
        cfg.h = h;
        FrontTracker tr(burgers, src, cfg);
        tr.set_initial(u0);
        std::vector<std::pair<double, PiecewiseConstant>> snaps;
        for (double t : {0.1, 0.2, 0.35, 0.5}) {
            tr.advance_to(t);
            snaps.emplace_back(t, tr.solution());
        }
        double cp = 0.0;
        for (size_t i = 0; i + 1 < snaps.size(); ++i)
            cp = std::max(cp,
                          full_line_l1(snaps[i].second, snaps[i + 1].second) /
                              (snaps[i + 1].first - snaps[i].first));
        cps.push_back(cp);
        ls.push_back(lipschitz_fit(burgers, src, cfg, data, times).L);
    }
    const double cp_spread =
        *std::max_element(cps.begin(), cps.end()) /
        *std::min_element(cps.begin(), cps.end());
    const double l_spread = *std::max_element(ls.begin(), ls.end()) /
                            *std::min_element(ls.begin(), ls.end());
    Outcome out;
    out.pass = cp_spread < 2.0 && l_spread < 2.0;
    out.detail = "C' spread " + fmt(cp_spread) + "x, L spread " +
                 fmt(l_spread) + "x across h (need < 2x)";
    return out;
}

// --- 6. Finite speed of propagation / determinacy cone.
Outcome criterion6() {
    auto burgers =
        std::make_shared<ScalarShiftedBurgersSystem>(2.0, -1.0, 1.0);
    auto src =
        std::make_shared<ConstantOnIntervalSource>(scalar(0.3), 0.0, 0.6);
    EngineConfig cfg;
    cfg.eps = 0.02;
    cfg.h = 0.05;
    const double t = 0.06;
    const auto base =
        pc({-0.6, 0.2}, {scalar(0.1), scalar(0.35), scalar(0.05)});

    std::mt19937_64 rng(14);
    std::uniform_real_distribution<> unit(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        // perturb the data outside [-1, 1] only
        PiecewiseConstant pert = base;
        const double vl = 0.4 * unit(rng) - 0.2;
        const double vr = 0.4 * unit(rng) - 0.2;
        pert.breaks.insert(pert.breaks.begin(), {-1.6, -1.05});
        pert.values.insert(pert.values.begin(),
                           {base.values.front(), scalar(vl)});
        pert.breaks.insert(pert.breaks.end(), {1.05, 1.6});
        pert.values.push_back(scalar(vr));
        pert.values.push_back(base.values.back());

        FrontTracker tr1(burgers, src, cfg), tr2(burgers, src, cfg);
        tr1.set_initial(base);
        tr2.set_initial(pert);
        tr1.advance_to(t);
        tr2.advance_to(t);
        const double lam = tr1.lambda_hat();
        const double a = -1.0 + lam * t, b = 1.0 - lam * t;
        if (a >= b) return {false, "empty determinacy cone"};
        worst = std::max(worst,
                         l1_distance(tr1.solution(), tr2.solution(), a, b));
    }
    Outcome out;
    out.pass = worst <= 2.0 * cfg.eps;
    out.detail = "worst in-cone L1 difference " + fmt(worst) + " (need <= " +
                 fmt(2.0 * cfg.eps) + ")";
    return out;
}

// --- 7. Semigroup composition defect shrinks under refinement.
Outcome criterion7() {
    struct Sc {
        SystemPtr sys;
        SourcePtr src;
        PiecewiseConstant u0;
    };
    auto burgers =
        std::make_shared<ScalarShiftedBurgersSystem>(2.0, -1.0, 1.0);
    auto gsys = make_gas();
    std::vector<Sc> corpus = {
        {burgers,
         std::make_shared<ConstantOnIntervalSource>(scalar(0.3), 0.0, 0.6),
         pc({-0.2}, {scalar(0.3), scalar(0.05)})},
        {burgers, std::make_shared<ZeroSource>(1),
         pc({-0.3, 0.1}, {scalar(0.35), scalar(0.1), scalar(0.3)})},
        {burgers,
         std::make_shared<InverseSqrtSource>(scalar(1.0), 0.5, 0.2, 0.8),
         pc({0.0}, {scalar(-0.2), scalar(0.15)})},
        {std::make_shared<ScalarLinearSystem>(2.0, -2.0, 2.0),
         std::make_shared<InverseSqrtSource>(scalar(1.0), 1.0, 0.0, 1.0),
         pc({-1.5}, {scalar(0.0), scalar(0.2)})},
        {gsys,
         std::make_shared<gas::PipeProfileSource>(
             gas::PipeProfile(1.0, 1.2, -0.2, 0.2), *gsys),
         pc({-0.8}, {state2(1.0, 0.15), state2(1.05, 0.05)})},
    };
    bool all = true;
    std::string worst_note;
    double worst_ratio = 0.0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        std::vector<double> d;
        for (auto [eps, h] :
             {std::pair{0.04, 0.1}, {0.02, 0.05}, {0.01, 0.025}}) {
            EngineConfig cfg;
            cfg.eps = eps;
            cfg.h = h;
            d.push_back(semigroup_defect(corpus[i].sys, corpus[i].src, cfg,
                                         corpus[i].u0, 0.3, 0.2));
        }
        const bool mono = d[1] <= d[0] && d[2] <= d[1];
        const bool half = d[2] <= 0.5 * d[0];
        if (!(mono && half)) all = false;
        const double r = d[2] / std::max(d[0], 1e-300);
        if (r > worst_ratio) {
            worst_ratio = r;
            worst_note = "scenario " + std::to_string(i) + ": " + fmt(d[0]) +
                         " -> " + fmt(d[1]) + " -> " + fmt(d[2]);
        }
    }
    Outcome out;
    out.pass = all;
    out.detail = "worst " + worst_note + " (ratio " + fmt(worst_ratio) +
                 ", need <= 0.5, monotone)";
    return out;
}

// --- 8. Local integral conditions along a computed trajectory.
Outcome criterion8() {
    auto burgers =
        std::make_shared<ScalarShiftedBurgersSystem>(2.0, -1.0, 1.0);
    auto src =
        std::make_shared<ConstantOnIntervalSource>(scalar(0.3), 0.0, 0.6);
    EngineConfig cfg;
    cfg.eps = 0.005;
    cfg.h = 0.0125;
    Trajectory traj(burgers, src, cfg,
                    pc({-0.2}, {scalar(0.3), scalar(0.05)}));
    const std::vector<double> thetas = {0.2, 0.1, 0.05, 0.025, 0.0125};

    // five (tau, xi) samples: at the main front and at smooth points
    std::vector<std::pair<double, double>> pts;
    for (double tau : {0.1, 0.25}) {
        const auto& sol = traj.at(tau);
        pts.emplace_back(tau, sol.breaks.front());  // leading front
    }
    pts.emplace_back(0.1, 0.3);
    pts.emplace_back(0.2, -0.5);
    pts.emplace_back(0.3, 0.45);

    bool decreasing = true;
    double worst_first = 0.0, worst_last = 0.0;
    for (auto [tau, xi] : pts) {
        auto curve = condition_i_curve(traj, tau, xi, thetas);
        if (!(curve.back().second < curve.front().second ||
              curve.back().second <= 1e-9)) {
            decreasing = false;
            worst_first = curve.front().second;
            worst_last = curve.back().second;
        }
    }

    // fitted constant of the second condition, stable under corpus halving
    std::vector<double> cs;
    for (double tau : {0.1, 0.2}) {
        for (double sh : {-0.2, 0.0, 0.2, 0.4}) {
            auto res = condition_ii_check(traj, tau, -1.2 + sh, 1.2 + sh,
                                          0.1 + sh, 0.03);
            if (res.bound_factor > 1e-12)
                cs.push_back(res.lhs / res.bound_factor);
        }
    }
    double c_full = 0.0, c_half = 0.0;
    for (size_t i = 0; i < cs.size(); ++i) {
        c_full = std::max(c_full, cs[i]);
        if (i % 2 == 0) c_half = std::max(c_half, cs[i]);
    }
    const bool stable = c_half >= 0.5 * c_full;

    Outcome out;
    out.pass = decreasing && stable;
    out.detail = std::string("ratios decreasing at 5 samples: ") +
                 (decreasing ? "yes"
                             : "NO (" + fmt(worst_first) + " -> " +
                                   fmt(worst_last) + ")") +
                 ", fitted C " + fmt(c_full) + " vs half-corpus " +
                 fmt(c_half);
    return out;
}

// --- 9. Stationary nozzle profile stays stationary under the engine.
Outcome criterion9() {
    auto gsys = make_gas();
    gas::PipeProfile prof(1.0, 1.2, -0.25, 0.25);
    auto src = std::make_shared<gas::PipeProfileSource>(prof, *gsys);
    const State uref = state2(1.0, 0.2);
    const auto profile = [&](double x) {
        return gas::phi_a(*gsys, prof.log_a(x), uref);
    };

    // invariants along the profile
    double worst_inv = 0.0;
    const double aq0 = prof.a(-1.0) * profile(-1.0)[1];
    auto bern = [&](const State& u) {
        const double v = u[1] / u[0];
        return 0.5 * v * v + 2.0 * u[0];  // gamma kappa / (gamma-1) = 2
    };
    const double b0 = bern(profile(-1.0));
    for (double x = -0.3; x <= 0.3001; x += 0.01) {
        const State u = profile(x);
        worst_inv = std::max(worst_inv, std::fabs(prof.a(x) * u[1] - aq0));
        worst_inv = std::max(worst_inv, std::fabs(bern(u) - b0));
    }

    // sampled initial data shared by all refinement levels
    PiecewiseConstant u0;
    u0.values.push_back(profile(-1.0));
    for (double x = -0.26; x <= 0.2601; x += 0.005) {
        u0.breaks.push_back(x);
        u0.values.push_back(profile(x + 0.0025));
    }
    u0.values.back() = profile(1.0);

    std::vector<double> drifts, bounds;
    for (auto [eps, h] : {std::pair{0.04, 0.1}, {0.02, 0.05}, {0.01, 0.025}}) {
        EngineConfig cfg;
        cfg.eps = eps;
        cfg.h = h;
        const auto sol = run_to(gsys, src, cfg, u0, 1.0);
        drifts.push_back(l1_distance(sol, profile, -2.0, 2.0,
                                     {-0.25, 0.25}, 1e-9));
        bounds.push_back(5.0 * (eps + epsilon_tilde(*src, h)));
    }
    bool within = true;
    for (size_t i = 0; i < drifts.size(); ++i)
        if (drifts[i] > bounds[i]) within = false;
    const bool halves = drifts[2] <= 0.5 * drifts[0];
    Outcome out;
    out.pass = worst_inv <= 1e-8 && within && halves;
    out.detail = "invariant drift " + fmt(worst_inv) + ", L1 drift " +
                 fmt(drifts[0]) + " -> " + fmt(drifts[1]) + " -> " +
                 fmt(drifts[2]) + " vs scheme bounds, finest/coarsest " +
                 fmt(drifts[2] / drifts[0]);
    return out;
}

// --- 10. Sharp-section limit of mollified profiles.
Outcome criterion10() {
    auto gsys = make_gas();
    const State u_far = state2(1.15, 0.1);
    const State u_m = state2(1.0, 0.2);
    const State u_p = gas::phi_a(*gsys, std::log(1.2), u_m);
    const double t_end = 0.5;

    auto pat = gas::solve_a_riemann(*gsys, 1.0, 1.2, u_m, u_p);
    const double psi =
        gas::junction_psi(*gsys, 1.0, 1.2, pat.u_minus, pat.u_plus).norm();

    auto fan = solve_homogeneous_riemann(*gsys, u_far, u_m);
    const auto ref = [&](double x) -> State {
        if (x < 0.0) return evaluate_fan(*gsys, fan, (x + 1.0) / t_end);
        return u_p;
    };
    const auto u0 = pc({-1.0, 0.0}, {u_far, u_m, u_p});

    std::vector<double> dist;
    for (double l : {0.4, 0.2, 0.1, 0.05}) {
        auto src = std::make_shared<gas::PipeProfileSource>(
            gas::PipeProfile(1.0, 1.2, -0.5 * l, 0.5 * l), *gsys);
        EngineConfig cfg;
        cfg.eps = 0.02;
        cfg.h = 0.05 * l / 0.4;
        const auto sol = run_to(gsys, src, cfg, u0, t_end);
        dist.push_back(
            l1_distance(sol, ref, -2.3, 1.3, {-1.0, 0.0}, 1e-8));
    }
    bool mono = true;
    for (size_t i = 1; i < dist.size(); ++i)
        if (!(dist[i] < dist[i - 1])) mono = false;
    Outcome out;
    out.pass = mono && psi <= 1e-9;
    out.detail = "distances " + fmt(dist[0]) + " > " + fmt(dist[1]) + " > " +
                 fmt(dist[2]) + " > " + fmt(dist[3]) +
                 ", junction residual " + fmt(psi);
    return out;
}

}  // namespace

int main() {
    run_criterion(1, "closed-form L1 convergence", criterion1);
    run_criterion(2, "stationary-map residual", criterion2);
    run_criterion(3, "coupled Riemann reconstruction", criterion3);
    run_criterion(4, "uniform TV bound", criterion4);
    run_criterion(5, "Lipschitz constants vs h", criterion5);
    run_criterion(6, "finite propagation speed", criterion6);
    run_criterion(7, "semigroup defect refinement", criterion7);
    run_criterion(8, "local integral conditions", criterion8);
    run_criterion(9, "stationary nozzle drift", criterion9);
    run_criterion(10, "sharp-section limit", criterion10);
    std::printf("%d of 10 criteria passed\n", 10 - g_failures);
    return g_failures;
}
