#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ft/h_riemann.hpp"
#include "ft/piecewise.hpp"
#include "ft/source.hpp"
#include "ft/system.hpp"
#include "json.hpp"

namespace ft {

enum class FrontKind { Shock, Contact, Rarefaction, NonPhysical, Zero };

std::string to_string(FrontKind k);

/// A discontinuity line x(t) = x0 + speed (t - t0). Zero fronts are the
/// standing waves of the comb scheme (speed 0 at x = j h); non-physical
/// fronts carry interaction residuals at the fixed speed lambda_hat.
struct Front {
    int id = 0;
    int family = -1;  // -1 for non-physical and zero fronts
    FrontKind kind = FrontKind::Shock;
    double sigma = 0.0;  // signed strength; |uR - uL| for non-physical
    double x0 = 0.0;
    double t0 = 0.0;
    double speed = 0.0;
    State uL, uR;
    long comb_index = 0;  // zero fronts: the j of x = j h

    double position(double t) const { return x0 + speed * (t - t0); }
};

struct EngineConfig {
    double eps = 0.02;   // strength cap for rarefaction pieces and the
                         // interaction threshold
    double h = 0.05;     // comb spacing
    double kappa_glimm = 1.0;
    double lambda_hat = 0.0;  // <= 0 means 2 * max wave speed
    double merge_tol = 1e-12;
    double np_threshold_scale = 1.0;  // simplified solver below
                                      // np_threshold_scale * eps^2
    double np_floor_scale = 1.0;      // outgoing waves below
                                      // np_floor_scale * eps * h at comb
                                      // points leave as non-physical fronts
    double tv_blowup = 1e3;           // abort when V exceeds this
    double np_budget = 1e2;           // abort when total NP strength exceeds
    int max_fronts = 200000;
    int max_events = 2000000;
    bool log_events = false;
};

struct GlimmReport {
    double V = 0.0;          // total strength, zero and NP waves included
    double Q = 0.0;          // interaction potential over approaching pairs
    double total = 0.0;      // V + kappa Q
    double np_total = 0.0;   // sum of non-physical strengths
    int n_fronts = 0;
};

struct EventRecord {
    double t = 0.0;
    double x = 0.0;
    std::string type;  // "homogeneous", "h_riemann", "simplified",
                       // "np_crossing"
    int n_in = 0;
    int n_out = 0;
    double np_delta = 0.0;  // non-physical strength emitted minus absorbed
    double v_before = 0.0;
    double v_after = 0.0;
    double q_before = 0.0;
    double q_after = 0.0;
};

nlohmann::json to_json(const EventRecord& e);

/// Samples piecewise-polynomial initial data into a piecewise-constant
/// approximation with L1 error at most eps on [a,b]: jumps and polynomial
/// pieces are kept, each piece is cell-averaged on a grid fine enough for
/// the variation bound per cell.
PiecewiseConstant sample_initial(const PiecewisePoly& data, double a, double b,
                                 double eps);

/// The wave-front-tracking engine for one (eps, h) run.
class FrontTracker {
public:
    FrontTracker(SystemPtr sys, SourcePtr src, EngineConfig cfg);

    /// Builds the initial front set from piecewise constant data whose
    /// breakpoints need not lie on the comb: h-Riemann patterns at the
    /// active comb points, homogeneous fans at the other jumps.
    void set_initial(const PiecewiseConstant& u0);

    /// Processes all interactions up to time t and advances the clock.
    void advance_to(double t);

    double time() const { return time_; }
    const EngineConfig& config() const { return cfg_; }
    double lambda_hat() const { return lambda_hat_; }

    /// Current solution profile (right-continuous at front positions).
    PiecewiseConstant solution() const;
    State evaluate(double x) const;

    const std::vector<Front>& fronts() const { return fronts_; }
    GlimmReport glimm() const;
    const std::vector<EventRecord>& events() const { return events_; }
    int interaction_count() const { return static_cast<int>(events_.size()); }

private:
    struct Collision {
        double t;
        size_t left;  // index of the left front of the adjacent pair
    };

    std::optional<Collision> next_collision() const;
    void resolve(double t, size_t first, size_t last);
    void emit_fan(std::vector<Front>& out, const WaveFan& fan, double t,
                  double x, double speed_lo_cap, double speed_hi_cap);
    void push_np(std::vector<Front>& out, double t, double x, const State& ul,
                 const State& ur);
    void check_budgets() const;

    SystemPtr sys_;
    SourcePtr src_;
    EngineConfig cfg_;
    double lambda_hat_ = 0.0;
    double time_ = 0.0;
    int next_id_ = 1;
    State background_;  // leftmost state, used when no fronts remain
    std::vector<Front> fronts_;  // sorted by position (ties: insertion order)
    std::vector<EventRecord> events_;
    std::vector<long> active_cells_;  // comb indices with nonzero window mass
};

}  // namespace ft
