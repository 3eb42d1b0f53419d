#include "ft/front_tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ft/riemann.hpp"
#include "ft/stationary.hpp"

namespace ft {

namespace {
constexpr double kSpeedTie = 1e-14;
constexpr double kDrop = 1e-13;  // fronts below this strength are dropped
}  // namespace

std::string to_string(FrontKind k) {
    switch (k) {
        case FrontKind::Shock: return "shock";
        case FrontKind::Contact: return "contact";
        case FrontKind::Rarefaction: return "rarefaction";
        case FrontKind::NonPhysical: return "non_physical";
        case FrontKind::Zero: return "zero";
    }
    return "?";
}

nlohmann::json to_json(const EventRecord& e) {
    return nlohmann::json{{"t", e.t},           {"x", e.x},
                          {"type", e.type},     {"n_in", e.n_in},
                          {"n_out", e.n_out},   {"np_delta", e.np_delta},
                          {"V_before", e.v_before},
                          {"V_after", e.v_after}, {"Q_before", e.q_before},
                          {"Q_after", e.q_after}};
}

PiecewiseConstant sample_initial(const PiecewisePoly& data, double a, double b,
                                 double eps) {
    const double tv = data.tv();
    const double d =
        std::max(1e-6, std::min((b - a) / 8.0, eps / (tv + 1.0)));
    std::vector<double> cuts;
    cuts.push_back(a);
    for (double k : data.knots())
        if (k > a && k < b) cuts.push_back(k);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    PiecewiseConstant out;
    out.values.push_back(data.eval(a - 1.0));
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        const int m = std::max(1, static_cast<int>(std::ceil((hi - lo) / d)));
        for (int k = 0; k < m; ++k) {
            const double ca = lo + (hi - lo) * k / m;
            const double cb = lo + (hi - lo) * (k + 1) / m;
            out.breaks.push_back(ca);
            out.values.push_back(data.cell_average(ca, cb));
        }
    }
    out.breaks.push_back(b);
    out.values.push_back(data.eval(b + 1.0));
    return out.simplified(1e-14);
}

FrontTracker::FrontTracker(SystemPtr sys, SourcePtr src, EngineConfig cfg)
    : sys_(std::move(sys)), src_(std::move(src)), cfg_(cfg) {
    if (cfg_.eps <= 0.0 || cfg_.h <= 0.0)
        throw Error(ErrorCode::Validation, "eps and h must be positive");
    lambda_hat_ = cfg_.lambda_hat > 0.0 ? cfg_.lambda_hat
                                        : 2.0 * sys_->max_wave_speed();

    // Active comb cells: windows [jh, (j+1)h] carrying source mass, within
    // the comb truncation |j| < 1/(h eps).
    if (!src_->is_zero()) {
        const double jmax = 1.0 / (cfg_.h * cfg_.eps);
        for (const Interval& iv : src_->support()) {
            const long j0 = static_cast<long>(std::floor(iv.a / cfg_.h)) - 1;
            const long j1 = static_cast<long>(std::ceil(iv.b / cfg_.h)) + 1;
            for (long j = j0; j <= j1; ++j) {
                if (std::fabs(static_cast<double>(j)) >= jmax) continue;
                if (zero_wave_strength(*src_, j, cfg_.h) > 0.0)
                    active_cells_.push_back(j);
            }
        }
        std::sort(active_cells_.begin(), active_cells_.end());
        active_cells_.erase(
            std::unique(active_cells_.begin(), active_cells_.end()),
            active_cells_.end());
    }
}

void FrontTracker::emit_fan(std::vector<Front>& out, const WaveFan& fan,
                            double t, double x, double, double) {
    for (const Wave& w : fan.waves) {
        if (std::fabs(w.sigma) <= kDrop) continue;
        if (w.kind == WaveKind::Rarefaction) {
            const int m = std::max(
                1, static_cast<int>(std::ceil(w.sigma / cfg_.eps)));
            State left = w.uL;
            for (int k = 1; k <= m; ++k) {
                const State right =
                    (k == m) ? w.uR
                             : lax_curve(*sys_, w.family, w.uL,
                                         w.sigma * k / m);
                Front f;
                f.id = next_id_++;
                f.family = w.family;
                f.kind = FrontKind::Rarefaction;
                f.sigma = w.sigma / m;
                f.x0 = x;
                f.t0 = t;
                f.speed = eigen_decompose(*sys_, right)[w.family].lambda;
                f.uL = left;
                f.uR = right;
                out.push_back(f);
                left = right;
            }
        } else {
            Front f;
            f.id = next_id_++;
            f.family = w.family;
            f.kind = w.kind == WaveKind::Shock ? FrontKind::Shock
                                               : FrontKind::Contact;
            f.sigma = w.sigma;
            f.x0 = x;
            f.t0 = t;
            f.speed = w.speed_lo;
            f.uL = w.uL;
            f.uR = w.uR;
            out.push_back(f);
        }
    }
}

void FrontTracker::push_np(std::vector<Front>& out, double t, double x,
                           const State& ul, const State& ur) {
    const double s = (ur - ul).norm();
    if (s <= kDrop) return;
    Front f;
    f.id = next_id_++;
    f.family = -1;
    f.kind = FrontKind::NonPhysical;
    f.sigma = s;
    f.x0 = x;
    f.t0 = t;
    f.speed = lambda_hat_;
    f.uL = ul;
    f.uR = ur;
    out.push_back(f);
}

void FrontTracker::set_initial(const PiecewiseConstant& u0) {
    fronts_.clear();
    events_.clear();
    time_ = 0.0;
    background_ = u0.values.front();

    // Interaction points at t = 0: the data jumps plus the active comb
    // points; a data jump sitting on an active comb point is handled once.
    struct Site {
        double x;
        long comb = std::numeric_limits<long>::min();
    };
    std::vector<Site> sites;
    for (double xb : u0.breaks) sites.push_back({xb});
    for (long j : active_cells_) {
        const double xj = static_cast<double>(j) * cfg_.h;
        bool merged = false;
        for (auto& s : sites) {
            if (std::fabs(s.x - xj) <= 1e-12) {
                s.comb = j;
                merged = true;
                break;
            }
        }
        if (!merged) sites.push_back({xj, j});
    }
    std::sort(sites.begin(), sites.end(),
              [](const Site& a, const Site& b) { return a.x < b.x; });

    // Chain states across sites left to right.  Evaluating uL by a small
    // lookback would skip neighbouring breaks closer than the lookback
    // (e.g. a front that just crossed a comb point) and lose the state
    // between them.
    State cur = u0.values.front();
    for (const Site& s : sites) {
        const State uL = cur;
        const size_t idx = static_cast<size_t>(
            std::upper_bound(u0.breaks.begin(), u0.breaks.end(), s.x) -
            u0.breaks.begin());
        const State uR = u0.values[idx];
        cur = uR;
        const bool comb = s.comb != std::numeric_limits<long>::min();
        if (!comb && (uR - uL).norm() <= kDrop) continue;
        std::vector<Front> out;
        if (comb) {
            const double xj = static_cast<double>(s.comb) * cfg_.h;
            auto pat = solve_h_riemann(*sys_, *src_, xj, cfg_.h, uL, uR);
            emit_fan(out, pat.left_fan, 0.0, xj, 0, 0);
            Front z;
            z.id = next_id_++;
            z.kind = FrontKind::Zero;
            z.sigma = pat.sigma_zero;
            z.x0 = xj;
            z.t0 = 0.0;
            z.speed = 0.0;
            z.uL = pat.u_minus;
            z.uR = pat.u_plus;
            z.comb_index = s.comb;
            out.push_back(z);
            emit_fan(out, pat.right_fan, 0.0, xj, 0, 0);
        } else {
            auto fan = solve_homogeneous_riemann(*sys_, uL, uR);
            emit_fan(out, fan, 0.0, s.x, 0, 0);
        }
        fronts_.insert(fronts_.end(), out.begin(), out.end());
    }
    check_budgets();
}

std::optional<FrontTracker::Collision> FrontTracker::next_collision() const {
    std::optional<Collision> best;
    for (size_t i = 0; i + 1 < fronts_.size(); ++i) {
        const Front& a = fronts_[i];
        const Front& b = fronts_[i + 1];
        if (a.speed <= b.speed + kSpeedTie) continue;
        const double gap = b.position(time_) - a.position(time_);
        const double t =
            time_ + std::max(0.0, gap) / (a.speed - b.speed);
        if (!best || t < best->t) best = Collision{t, i};
    }
    return best;
}

void FrontTracker::resolve(double t, size_t first, size_t last) {
    // The interaction point: use the zero front's comb position when one is
    // involved, else the mean crossing position.
    double x = 0.0;
    bool has_zero = false, has_np = false;
    long comb = 0;
    int n_phys = 0;
    for (size_t i = first; i <= last; ++i) {
        const Front& f = fronts_[i];
        x += f.position(t);
        if (f.kind == FrontKind::Zero) {
            has_zero = true;
            comb = f.comb_index;
        } else if (f.kind == FrontKind::NonPhysical) {
            has_np = true;
        } else {
            ++n_phys;
        }
    }
    x /= static_cast<double>(last - first + 1);
    if (has_zero) x = static_cast<double>(comb) * cfg_.h;

    const State uL = fronts_[first].uL;
    const State uR = fronts_[last].uR;

    EventRecord ev;
    ev.t = t;
    ev.x = x;
    ev.n_in = static_cast<int>(last - first + 1);
    if (cfg_.log_events) {
        auto g = glimm();
        ev.v_before = g.V;
        ev.q_before = g.Q;
    }

    std::vector<Front> out;
    if (has_zero && has_np) {
        // A non-physical front crossing the standing zero wave (possibly
        // together with physical waves): re-apply the negative families
        // left of the comb point, refresh the zero wave, re-apply the
        // positive families, and collect the residual on the outgoing
        // non-physical front.
        ev.type = "zero_crossing";
        const double xj = static_cast<double>(comb) * cfg_.h;
        const int p = sys_->split_index();
        Eigen::VectorXd sig = Eigen::VectorXd::Zero(sys_->dimension());
        for (size_t i = first; i <= last; ++i) {
            if (fronts_[i].family >= 0) sig[fronts_[i].family] +=
                fronts_[i].sigma;
        }
        Eigen::VectorXd sneg = sig, spos = sig;
        sneg.tail(sig.size() - p).setZero();
        spos.head(p).setZero();
        auto left_fan = make_fan(*sys_, uL, sneg);
        const State up = phi_h(*sys_, *src_, xj, cfg_.h, left_fan.uR);
        auto right_fan = make_fan(*sys_, up, spos);
        emit_fan(out, left_fan, t, xj, 0, 0);
        Front z;
        z.id = next_id_++;
        z.kind = FrontKind::Zero;
        z.sigma = zero_wave_strength(*src_, comb, cfg_.h);
        z.x0 = xj;
        z.t0 = t;
        z.speed = 0.0;
        z.uL = left_fan.uR;
        z.uR = up;
        z.comb_index = comb;
        out.push_back(z);
        emit_fan(out, right_fan, t, xj, 0, 0);
        push_np(out, t, xj, right_fan.uR, uR);
    } else if (has_zero) {
        // Accurate solver on the comb.  Outgoing reflected waves below the
        // floor eps*h leave on a non-physical front instead, so that
        // reflection cascades terminate with a residual that vanishes
        // under refinement.
        ev.type = "h_riemann";
        const double xj = static_cast<double>(comb) * cfg_.h;
        auto pat = solve_h_riemann(*sys_, *src_, xj, cfg_.h, uL, uR);
        const double floor = cfg_.np_floor_scale * cfg_.eps * cfg_.h;
        Eigen::VectorXd sneg = Eigen::VectorXd::Zero(sys_->dimension());
        Eigen::VectorXd spos = Eigen::VectorXd::Zero(sys_->dimension());
        bool any_small = false;
        for (const auto& w : pat.left_fan.waves) {
            if (std::fabs(w.sigma) >= floor) sneg[w.family] += w.sigma;
            else any_small = true;
        }
        for (const auto& w : pat.right_fan.waves) {
            if (std::fabs(w.sigma) >= floor) spos[w.family] += w.sigma;
            else any_small = true;
        }
        Front z;
        z.id = next_id_++;
        z.kind = FrontKind::Zero;
        z.x0 = xj;
        z.t0 = t;
        z.speed = 0.0;
        z.comb_index = comb;
        if (!any_small) {
            emit_fan(out, pat.left_fan, t, xj, 0, 0);
            z.sigma = pat.sigma_zero;
            z.uL = pat.u_minus;
            z.uR = pat.u_plus;
            out.push_back(z);
            emit_fan(out, pat.right_fan, t, xj, 0, 0);
        } else {
            auto left_fan = make_fan(*sys_, uL, sneg);
            const State up = phi_h(*sys_, *src_, xj, cfg_.h, left_fan.uR);
            auto right_fan = make_fan(*sys_, up, spos);
            emit_fan(out, left_fan, t, xj, 0, 0);
            z.sigma = zero_wave_strength(*src_, comb, cfg_.h);
            z.uL = left_fan.uR;
            z.uR = up;
            out.push_back(z);
            emit_fan(out, right_fan, t, xj, 0, 0);
            push_np(out, t, xj, right_fan.uR, uR);
        }
    } else if (has_np) {
        // Non-physical front overtaking physical fronts: the physical waves
        // pass through with unchanged strengths, the residual is collected
        // behind them in the non-physical front.
        ev.type = "np_crossing";
        struct Item {
            int family;
            double sigma;
        };
        std::vector<Item> items;
        for (size_t i = first; i <= last; ++i) {
            if (fronts_[i].kind == FrontKind::NonPhysical) continue;
            items.push_back({fronts_[i].family, fronts_[i].sigma});
        }
        std::stable_sort(items.begin(), items.end(),
                         [](const Item& a, const Item& b) {
                             return a.family < b.family;
                         });
        Eigen::VectorXd sig = Eigen::VectorXd::Zero(sys_->dimension());
        for (const auto& it : items) sig[it.family] += it.sigma;
        auto fan = make_fan(*sys_, uL, sig);
        emit_fan(out, fan, t, x, 0, 0);
        push_np(out, t, x, fan.uR, uR);
    } else {
        // Physical-physical interaction away from the comb.
        double prod = 1.0;
        for (size_t i = first; i <= last; ++i)
            prod *= std::fabs(fronts_[i].sigma);
        const double thresh =
            cfg_.np_threshold_scale * cfg_.eps * cfg_.eps;
        if (prod >= thresh || n_phys > 2) {
            ev.type = "homogeneous";
            auto fan = solve_homogeneous_riemann(*sys_, uL, uR);
            emit_fan(out, fan, t, x, 0, 0);
        } else {
            // Simplified solver: incoming strengths are re-applied in
            // family order, the interaction residual leaves on a
            // non-physical front.
            ev.type = "simplified";
            Eigen::VectorXd sig = Eigen::VectorXd::Zero(sys_->dimension());
            for (size_t i = first; i <= last; ++i)
                sig[fronts_[i].family] += fronts_[i].sigma;
            auto fan = make_fan(*sys_, uL, sig);
            emit_fan(out, fan, t, x, 0, 0);
            push_np(out, t, x, fan.uR, uR);
        }
    }

    for (size_t i = first; i <= last; ++i)
        if (fronts_[i].kind == FrontKind::NonPhysical)
            ev.np_delta -= std::fabs(fronts_[i].sigma);
    for (const Front& f : out)
        if (f.kind == FrontKind::NonPhysical)
            ev.np_delta += std::fabs(f.sigma);

    std::stable_sort(out.begin(), out.end(), [](const Front& a, const Front& b) {
        return a.speed < b.speed;
    });
    fronts_.erase(fronts_.begin() + first, fronts_.begin() + last + 1);
    fronts_.insert(fronts_.begin() + first, out.begin(), out.end());

    ev.n_out = static_cast<int>(out.size());
    if (cfg_.log_events) {
        auto g = glimm();
        ev.v_after = g.V;
        ev.q_after = g.Q;
    }
    events_.push_back(ev);
    check_budgets();
}

void FrontTracker::check_budgets() const {
    if (static_cast<int>(fronts_.size()) > cfg_.max_fronts)
        throw Error(ErrorCode::RuntimeAbort, "front count budget exceeded");
    if (static_cast<int>(events_.size()) > cfg_.max_events)
        throw Error(ErrorCode::RuntimeAbort, "event budget exceeded");
    double v = 0.0, np = 0.0;
    for (const Front& f : fronts_) {
        v += std::fabs(f.sigma);
        if (f.kind == FrontKind::NonPhysical) np += std::fabs(f.sigma);
    }
    if (v > cfg_.tv_blowup)
        throw Error(ErrorCode::RuntimeAbort,
                    "total wave strength exceeded the blow-up guard");
    if (np > cfg_.np_budget)
        throw Error(ErrorCode::RuntimeAbort,
                    "non-physical strength exceeded its budget");
}

void FrontTracker::advance_to(double t) {
    if (t < time_)
        throw Error(ErrorCode::Validation, "advance_to: time must not decrease");
    for (;;) {
        auto c = next_collision();
        if (!c || c->t > t) break;
        // Cluster simultaneous adjacent collisions at the same point.
        size_t first = c->left, last = c->left + 1;
        const auto meets = [&](size_t i, size_t j) {
            const Front& a = fronts_[i];
            const Front& b = fronts_[j];
            if (a.speed <= b.speed + kSpeedTie) return false;
            const double gap = b.position(time_) - a.position(time_);
            const double tc =
                time_ + std::max(0.0, gap) / (a.speed - b.speed);
            return tc <= c->t + cfg_.merge_tol;
        };
        while (first > 0 && meets(first - 1, first)) --first;
        while (last + 1 < fronts_.size() && meets(last, last + 1)) ++last;
        const double tev = std::max(time_, c->t);
        resolve(tev, first, last);
        time_ = tev;
    }
    time_ = t;
}

PiecewiseConstant FrontTracker::solution() const {
    PiecewiseConstant pc;
    if (fronts_.empty()) {
        pc.values.push_back(background_);
        return pc;
    }
    pc.values.push_back(fronts_.front().uL);
    for (const Front& f : fronts_) {
        const double xf = f.position(time_);
        if (!pc.breaks.empty() && xf <= pc.breaks.back() + 1e-300) {
            pc.values.back() = f.uR;
            continue;
        }
        pc.breaks.push_back(xf);
        pc.values.push_back(f.uR);
    }
    return pc;
}

State FrontTracker::evaluate(double x) const {
    if (fronts_.empty()) {
        if (background_.size() == 0)
            throw Error(ErrorCode::Validation,
                        "evaluate: no initial data set");
        return background_;
    }
    State u = fronts_.front().uL;
    for (const Front& f : fronts_) {
        if (f.position(time_) <= x) u = f.uR;
        else break;
    }
    return u;
}

GlimmReport FrontTracker::glimm() const {
    GlimmReport g;
    g.n_fronts = static_cast<int>(fronts_.size());
    const int n = sys_->dimension();
    const int p = sys_->split_index();
    // Effective family index used for the approaching-pair rule: zero
    // waves sit between the negative and positive families, non-physical
    // fronts above all of them.
    const auto eff = [&](const Front& f) -> double {
        if (f.kind == FrontKind::Zero) return p - 0.5;
        if (f.kind == FrontKind::NonPhysical) return n + 1.0;
        return f.family;
    };
    for (size_t a = 0; a < fronts_.size(); ++a) {
        const Front& fa = fronts_[a];
        g.V += std::fabs(fa.sigma);
        if (fa.kind == FrontKind::NonPhysical) g.np_total += fa.sigma;
        for (size_t b = a + 1; b < fronts_.size(); ++b) {
            const Front& fb = fronts_[b];
            if (fa.kind == FrontKind::Zero && fb.kind == FrontKind::Zero)
                continue;
            const double ea = eff(fa), eb = eff(fb);
            bool approaching = ea > eb;
            if (!approaching && ea == eb && fa.family >= 0 &&
                sys_->genuinely_nonlinear(fa.family))
                approaching = fa.sigma < 0.0 || fb.sigma < 0.0;
            if (approaching)
                g.Q += std::fabs(fa.sigma) * std::fabs(fb.sigma);
        }
    }
    g.total = g.V + cfg_.kappa_glimm * g.Q;
    return g;
}

}  // namespace ft
