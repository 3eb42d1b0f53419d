#include "ft/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>

#include "ft/analysis.hpp"

namespace ft::scenario {

namespace {

/// Accumulates validation findings while descending into the document.
struct Check {
    std::vector<Issue>* issues;

    void fail(const std::string& field, const std::string& msg) const {
        issues->push_back({field, msg});
    }

    bool has(const nlohmann::json& j, const std::string& field,
             const std::string& key) const {
        if (j.contains(key)) return true;
        fail(field.empty() ? key : field + "." + key, "missing required key");
        return false;
    }

    std::optional<double> number(const nlohmann::json& j,
                                 const std::string& field,
                                 const std::string& key) const {
        if (!has(j, field, key)) return std::nullopt;
        const auto& v = j.at(key);
        if (!v.is_number()) {
            fail(field + "." + key, "expected a number");
            return std::nullopt;
        }
        return v.get<double>();
    }

    std::optional<double> number_or(const nlohmann::json& j,
                                    const std::string& field,
                                    const std::string& key,
                                    double fallback) const {
        if (!j.contains(key)) return fallback;
        if (!j.at(key).is_number()) {
            fail(field + "." + key, "expected a number");
            return std::nullopt;
        }
        return j.at(key).get<double>();
    }

    std::optional<State> vec(const nlohmann::json& j, const std::string& field,
                             const std::string& key) const {
        if (!has(j, field, key)) return std::nullopt;
        const auto& v = j.at(key);
        if (!v.is_array() || v.empty()) {
            fail(field + "." + key, "expected a non-empty array of numbers");
            return std::nullopt;
        }
        State out(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) {
                fail(field + "." + key, "expected a non-empty array of numbers");
                return std::nullopt;
            }
            out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
        }
        return out;
    }
};

/// Wraps a source with a rescaled dominating profile. The scenario schema
/// exposes this as "omega_scale" so a file can (wrongly) declare a tighter
/// bound than the source satisfies; the sampling audit then has a real
/// failure path to report.
class OmegaScaledSource : public SourceTerm {
public:
    OmegaScaledSource(SourcePtr base, double scale)
        : base_(std::move(base)), scale_(scale) {}
    int dimension() const override { return base_->dimension(); }
    State g(double x, const State& u) const override { return base_->g(x, u); }
    Matrix dg_du(double x, const State& u) const override {
        return base_->dg_du(x, u);
    }
    double omega(double x) const override { return scale_ * base_->omega(x); }
    double antiderivative(double x) const override {
        return scale_ * base_->antiderivative(x);
    }
    double mtilde(double x) const override {
        return scale_ * base_->mtilde(x);
    }
    std::vector<double> singular_points() const override {
        return base_->singular_points();
    }
    std::vector<Interval> support() const override {
        return base_->support();
    }
    State g_integral(double x0, double h, const State& u) const override {
        return base_->g_integral(x0, h, u);
    }
    bool is_zero() const override { return base_->is_zero(); }

private:
    SourcePtr base_;
    double scale_;
};

std::string fmt_state(const State& u) {
    std::ostringstream os;
    os << "(";
    for (Eigen::Index i = 0; i < u.size(); ++i)
        os << (i ? ", " : "") << u[i];
    os << ")";
    return os.str();
}

SystemPtr build_system(const nlohmann::json& root, Check& c,
                       std::shared_ptr<const gas::IsentropicSystem>* gas_out) {
    if (!c.has(root, "", "system")) return nullptr;
    const auto& j = root.at("system");
    if (!j.is_object() || !j.contains("name") || !j.at("name").is_string()) {
        c.fail("system.name", "missing system name");
        return nullptr;
    }
    const std::string name = j.at("name").get<std::string>();
    try {
        if (name == "scalar_linear" || name == "scalar_shifted_burgers") {
            auto box = c.vec(j, "system", "box");
            if (!box || box->size() != 2) {
                c.fail("system.box", "expected [lo, hi]");
                return nullptr;
            }
            if (name == "scalar_linear") {
                auto a = c.number(j, "system", "a");
                if (!a) return nullptr;
                return std::make_shared<ScalarLinearSystem>(*a, (*box)[0],
                                                            (*box)[1]);
            }
            auto shift = c.number(j, "system", "shift");
            if (!shift) return nullptr;
            return std::make_shared<ScalarShiftedBurgersSystem>(
                *shift, (*box)[0], (*box)[1]);
        }
        if (name == "isentropic_gas") {
            auto gamma = c.number(j, "system", "gamma");
            auto kappa = c.number(j, "system", "kappa");
            auto lo = c.vec(j, "system", "box_lo");
            auto hi = c.vec(j, "system", "box_hi");
            auto margin = c.number_or(j, "system", "sonic_margin", 0.05);
            if (!gamma || !kappa || !lo || !hi || !margin) return nullptr;
            if (lo->size() != 2 || hi->size() != 2) {
                c.fail("system.box_lo", "expected 2-component box bounds");
                return nullptr;
            }
            auto gs = std::make_shared<gas::IsentropicSystem>(*gamma, *kappa,
                                                              *lo, *hi,
                                                              *margin);
            *gas_out = gs;
            return gs;
        }
    } catch (const Error& e) {
        c.fail("system", e.what());
        return nullptr;
    }
    c.fail("system.name", "unknown system '" + name + "'");
    return nullptr;
}

SourcePtr build_source_base(const nlohmann::json& root, Check& c,
                            const SystemPtr& sys,
                            const std::shared_ptr<const gas::IsentropicSystem>&
                                gs) {
    if (!c.has(root, "", "source")) return nullptr;
    const auto& j = root.at("source");
    if (!j.is_object() || !j.contains("name") || !j.at("name").is_string()) {
        c.fail("source.name", "missing source name");
        return nullptr;
    }
    const std::string name = j.at("name").get<std::string>();
    const int dim = sys ? sys->dimension() : -1;
    try {
        if (name == "zero")
            return std::make_shared<ZeroSource>(dim > 0 ? dim : 1);
        if (name == "constant_on_interval") {
            auto d = c.vec(j, "source", "d");
            auto a = c.number(j, "source", "a");
            auto b = c.number(j, "source", "b");
            if (!d || !a || !b) return nullptr;
            return std::make_shared<ConstantOnIntervalSource>(*d, *a, *b);
        }
        if (name == "inverse_sqrt") {
            auto d = c.vec(j, "source", "d");
            auto amp = c.number(j, "source", "amp");
            auto center = c.number(j, "source", "center");
            auto radius = c.number(j, "source", "radius");
            if (!d || !amp || !center || !radius) return nullptr;
            return std::make_shared<InverseSqrtSource>(*d, *amp, *center,
                                                       *radius);
        }
        if (name == "piecewise_poly") {
            auto d = c.vec(j, "source", "d");
            auto breaks = c.vec(j, "source", "breaks");
            if (!d || !breaks) return nullptr;
            if (!j.contains("coeffs") || !j.at("coeffs").is_array()) {
                c.fail("source.coeffs", "missing coefficient table");
                return nullptr;
            }
            std::vector<std::vector<double>> coeffs;
            for (const auto& row : j.at("coeffs"))
                coeffs.push_back(row.get<std::vector<double>>());
            std::vector<double> br(breaks->data(),
                                   breaks->data() + breaks->size());
            return std::make_shared<PiecewisePolySource>(*d, br, coeffs);
        }
        if (name == "pipe_profile") {
            if (!gs) {
                c.fail("source.name",
                       "pipe_profile requires the isentropic_gas system");
                return nullptr;
            }
            auto al = c.number(j, "source", "a_left");
            auto ar = c.number(j, "source", "a_right");
            auto xlo = c.number(j, "source", "x_lo");
            auto xhi = c.number(j, "source", "x_hi");
            if (!al || !ar || !xlo || !xhi) return nullptr;
            return std::make_shared<gas::PipeProfileSource>(
                gas::PipeProfile(*al, *ar, *xlo, *xhi), *gs);
        }
    } catch (const Error& e) {
        c.fail("source", e.what());
        return nullptr;
    }
    c.fail("source.name", "unknown source '" + name + "'");
    return nullptr;
}

SourcePtr build_source(const nlohmann::json& root, Check& c,
                       const SystemPtr& sys,
                       const std::shared_ptr<const gas::IsentropicSystem>& gs) {
    SourcePtr base = build_source_base(root, c, sys, gs);
    if (!base || !root.contains("source")) return base;
    const auto& j = root.at("source");
    if (!j.contains("omega_scale")) return base;
    if (!j.at("omega_scale").is_number() ||
        j.at("omega_scale").get<double>() <= 0.0) {
        c.fail("source.omega_scale", "expected a positive number");
        return base;
    }
    const double s = j.at("omega_scale").get<double>();
    if (s == 1.0) return base;
    return std::make_shared<OmegaScaledSource>(base, s);
}

std::optional<PiecewiseConstant> build_initial(const nlohmann::json& root,
                                               Check& c, const SystemPtr& sys,
                                               double eps, double grid_a,
                                               double grid_b) {
    if (!c.has(root, "", "initial")) return std::nullopt;
    const auto& j = root.at("initial");
    const int dim = sys ? sys->dimension() : -1;
    PiecewiseConstant out;

    if (j.contains("breaks") || j.contains("values")) {
        if (!j.contains("breaks") || !j.contains("values") ||
            !j.at("breaks").is_array() || !j.at("values").is_array()) {
            c.fail("initial", "piecewise-constant data needs breaks + values");
            return std::nullopt;
        }
        for (const auto& b : j.at("breaks"))
            out.breaks.push_back(b.get<double>());
        for (const auto& v : j.at("values")) {
            auto vals = v.get<std::vector<double>>();
            out.values.push_back(
                Eigen::Map<const State>(vals.data(), vals.size()));
        }
        if (out.values.size() != out.breaks.size() + 1) {
            c.fail("initial.values", "need exactly breaks + 1 states");
            return std::nullopt;
        }
        for (size_t i = 0; i + 1 < out.breaks.size(); ++i)
            if (out.breaks[i] >= out.breaks[i + 1]) {
                c.fail("initial.breaks", "breaks must be strictly increasing");
                return std::nullopt;
            }
    } else if (j.contains("background")) {
        auto bg = c.vec(j, "initial", "background");
        if (!bg) return std::nullopt;
        PiecewisePoly poly;
        poly.background = *bg;
        if (j.contains("pieces")) {
            for (const auto& p : j.at("pieces")) {
                PolyPiece piece;
                piece.a = p.at("a").get<double>();
                piece.b = p.at("b").get<double>();
                for (const auto& row : p.at("coeffs"))
                    piece.coeffs.push_back(row.get<std::vector<double>>());
                poly.pieces.push_back(piece);
            }
        }
        double lo = grid_a, hi = grid_b;
        for (double k : poly.knots()) {
            lo = std::min(lo, k);
            hi = std::max(hi, k);
        }
        out = sample_initial(poly, lo, hi, eps > 0.0 ? eps : 0.01);
    } else {
        c.fail("initial", "expected breaks/values or background/pieces data");
        return std::nullopt;
    }

    for (size_t i = 0; i < out.values.size(); ++i) {
        if (dim > 0 && out.values[i].size() != dim) {
            c.fail("initial.values", "state dimension does not match system");
            return std::nullopt;
        }
        if (sys && !sys->admissible(out.values[i])) {
            c.fail("initial.values",
                   "state " + fmt_state(out.values[i]) +
                       " outside the admissible region");
            return std::nullopt;
        }
    }
    return out;
}

/// Parses everything except the source audit; fills `out` as far as the
/// document allows.
void build(const nlohmann::json& j, std::vector<Issue>& issues, Loaded& out) {
    Check c{&issues};
    if (!j.is_object()) {
        c.fail("", "scenario must be a JSON object");
        return;
    }
    if (j.contains("version") &&
        (!j.at("version").is_number_integer() ||
         j.at("version").get<int>() != 1))
        c.fail("version", "unsupported schema version (expected 1)");
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_integer())
            c.fail("seed", "expected an integer");
        else
            out.seed = j.at("seed").get<unsigned long long>();
    }

    out.system = build_system(j, c, &out.gas_system);
    out.source = build_source(j, c, out.system, out.gas_system);
    if (out.system && out.source &&
        out.source->dimension() != out.system->dimension())
        c.fail("source", "source dimension does not match the system");

    if (c.has(j, "", "run")) {
        const auto& r = j.at("run");
        auto eps = c.number(r, "run", "eps");
        auto h = c.number(r, "run", "h");
        auto t_end = c.number(r, "run", "t_end");
        if (eps) {
            if (*eps <= 0.0) c.fail("run.eps", "must be positive");
            out.engine.eps = *eps;
        }
        if (h) {
            if (*h <= 0.0) c.fail("run.h", "must be positive");
            out.engine.h = *h;
        }
        if (t_end) {
            if (*t_end <= 0.0) c.fail("run.t_end", "must be positive");
            out.t_end = *t_end;
        }
        if (auto v = c.number_or(r, "run", "lambda_hat", 0.0))
            out.engine.lambda_hat = *v;
        if (auto v = c.number_or(r, "run", "max_events",
                                 out.engine.max_events))
            out.engine.max_events = static_cast<int>(*v);
        if (auto v = c.number_or(r, "run", "max_fronts",
                                 out.engine.max_fronts))
            out.engine.max_fronts = static_cast<int>(*v);
        if (r.contains("log_events"))
            out.engine.log_events = r.at("log_events").get<bool>();
        if (r.contains("snapshot_times")) {
            for (const auto& t : r.at("snapshot_times"))
                out.snapshot_times.push_back(t.get<double>());
            for (size_t i = 0; i < out.snapshot_times.size(); ++i) {
                const double t = out.snapshot_times[i];
                if (t < 0.0 || t > out.t_end ||
                    (i > 0 && t <= out.snapshot_times[i - 1])) {
                    c.fail("run.snapshot_times",
                           "must be increasing within [0, t_end]");
                    break;
                }
            }
        }
        if (out.snapshot_times.empty() && out.t_end > 0.0)
            out.snapshot_times = {out.t_end};
        if (r.contains("grid")) {
            const auto& g = r.at("grid");
            auto a = c.number(g, "run.grid", "a");
            auto b = c.number(g, "run.grid", "b");
            auto n = c.number(g, "run.grid", "n");
            if (a && b && n) {
                if (*a >= *b) c.fail("run.grid", "need a < b");
                if (*n < 1) c.fail("run.grid.n", "need at least one cell");
                out.grid_a = *a;
                out.grid_b = *b;
                out.grid_n = static_cast<int>(*n);
            }
        }
    }

    out.initial = build_initial(j, c, out.system, out.engine.eps, out.grid_a,
                                out.grid_b)
                      .value_or(PiecewiseConstant{});

    if (j.contains("study")) {
        const auto& s = j.at("study");
        const std::string kind =
            s.contains("kind") && s.at("kind").is_string()
                ? s.at("kind").get<std::string>()
                : "";
        if (kind == "refinement") {
            Loaded::Refinement ref;
            if (s.contains("levels") && s.at("levels").is_array()) {
                for (const auto& lv : s.at("levels")) {
                    if (!lv.is_array() || lv.size() != 2) {
                        c.fail("study.levels", "each level is [eps, h]");
                        break;
                    }
                    ref.levels.emplace_back(lv[0].get<double>(),
                                            lv[1].get<double>());
                }
            } else {
                c.fail("study.levels", "missing (eps, h) list");
            }
            for (const auto& [e, hh] : ref.levels)
                if (e <= 0.0 || hh <= 0.0)
                    c.fail("study.levels", "eps and h must be positive");
            if (s.contains("reference"))
                ref.reference = s.at("reference").get<std::string>();
            if (ref.reference != "self" && ref.reference != "linear_exact")
                c.fail("study.reference",
                       "unknown reference '" + ref.reference + "'");
            if (ref.reference == "linear_exact" && out.system &&
                out.system->name() != "scalar_linear")
                c.fail("study.reference",
                       "linear_exact needs the scalar_linear system");
            if (auto t = c.number(s, "study", "t_eval")) ref.t_eval = *t;
            auto win = c.vec(s, "study", "window");
            if (win && win->size() == 2 && (*win)[0] < (*win)[1]) {
                ref.win_a = (*win)[0];
                ref.win_b = (*win)[1];
            } else if (win) {
                c.fail("study.window", "expected [a, b] with a < b");
            }
            out.refinement = std::move(ref);
        } else if (kind == "section_limit") {
            Loaded::SectionLimit lim;
            if (!out.gas_system)
                c.fail("study.kind",
                       "section_limit needs the isentropic_gas system");
            auto al = c.number(s, "study", "a_left");
            auto ar = c.number(s, "study", "a_right");
            auto ul = c.vec(s, "study", "u_left");
            auto ur = c.vec(s, "study", "u_right");
            auto t = c.number(s, "study", "t_eval");
            auto lv = c.number_or(s, "study", "levels", 3.0);
            if (al) lim.a_left = *al;
            if (ar) lim.a_right = *ar;
            if (ul) lim.u_left = *ul;
            if (ur) lim.u_right = *ur;
            if (t) lim.t_eval = *t;
            if (lv) lim.levels = static_cast<int>(*lv);
            if (lim.levels < 1) c.fail("study.levels", "need at least 1");
            out.section_limit = std::move(lim);
        } else {
            c.fail("study.kind",
                   "expected 'refinement' or 'section_limit'");
        }
    }

    if (issues.empty() && out.t_end <= 0.0)
        c.fail("run.t_end", "missing or non-positive");
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json issues_json(const std::vector<Issue>& issues) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& i : issues)
        arr.push_back({{"field", i.field}, {"message", i.message}});
    return arr;
}

void log_line(int level, int want, const std::string& msg) {
    if (level >= want) std::fprintf(stderr, "[fronttrack] %s\n", msg.c_str());
}

bool write_text(const std::string& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    os << body;
    return static_cast<bool>(os);
}

/// Closed-form solution for a scalar linear flux with a u-independent
/// source: transport plus the integrated source along the characteristic.
State linear_exact(const SystemDefinition& sys, const SourceTerm& src,
                   const PiecewiseConstant& u0, double t, double x) {
    const double a = sys.jacobian(u0.values.front())(0, 0);
    State u = u0.eval(x - a * t);
    if (!src.is_zero())
        u += g_integral_signed(src, x - a * t, x, u) / a;
    return u;
}

struct RefinementRow {
    double eps, h, error;
};

std::vector<RefinementRow> run_refinement(const Loaded& sc, int threads,
                                          int log_level) {
    const auto& ref = *sc.refinement;
    auto member = [&](size_t i) -> PiecewiseConstant {
        EngineConfig cfg = sc.engine;
        cfg.eps = ref.levels[i].first;
        cfg.h = ref.levels[i].second;
        FrontTracker tr(sc.system, sc.source, cfg);
        tr.set_initial(sc.initial);
        tr.advance_to(ref.t_eval);
        return tr.solution();
    };

    std::vector<PiecewiseConstant> sols(ref.levels.size());
    if (threads > 1) {
        std::vector<std::future<PiecewiseConstant>> fut;
        for (size_t i = 0; i < ref.levels.size(); ++i)
            fut.push_back(std::async(std::launch::async, member, i));
        for (size_t i = 0; i < ref.levels.size(); ++i) sols[i] = fut[i].get();
    } else {
        for (size_t i = 0; i < ref.levels.size(); ++i) sols[i] = member(i);
    }

    std::vector<RefinementRow> rows;
    for (size_t i = 0; i < ref.levels.size(); ++i) {
        double err;
        if (ref.reference == "linear_exact") {
            err = l1_distance(
                sols[i],
                [&](double x) {
                    return linear_exact(*sc.system, *sc.source, sc.initial,
                                        ref.t_eval, x);
                },
                ref.win_a, ref.win_b, sc.initial.breaks, 1e-10);
        } else {
            err = l1_distance(sols[i], sols.back(), ref.win_a, ref.win_b);
        }
        rows.push_back({ref.levels[i].first, ref.levels[i].second, err});
        log_line(log_level, 1,
                 "refinement level " + std::to_string(i) +
                     ": error = " + fmt17(err));
    }
    return rows;
}

}  // namespace

std::vector<Issue> validate_scenario(const nlohmann::json& j,
                                     bool audit_source) {
    std::vector<Issue> issues;
    Loaded sc;
    build(j, issues, sc);
    if (issues.empty() && audit_source && sc.system && sc.source &&
        !sc.source->is_zero()) {
        auto bad = audit_domination(*sc.source, *sc.system,
                                    static_cast<unsigned>(sc.seed) + 1u);
        if (bad)
            issues.push_back(
                {"source",
                 "domination audit failed: " + bad->which + " = " +
                     fmt17(bad->value) + " exceeds bound " + fmt17(bad->bound) +
                     " at x = " + fmt17(bad->x) + ", u = " +
                     fmt_state(bad->u)});
    }
    return issues;
}

Loaded load_scenario(const nlohmann::json& j) {
    std::vector<Issue> issues;
    Loaded sc;
    build(j, issues, sc);
    if (!issues.empty())
        throw Error(ErrorCode::Validation,
                    issues.front().field + ": " + issues.front().message);
    return sc;
}

int validate_scenario_file(const std::string& path, nlohmann::json& report) {
    std::ifstream is(path);
    if (!is) {
        report = {{"status", "parse_error"},
                  {"error", "cannot open '" + path + "'"}};
        return kParseError;
    }
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        report = {{"status", "parse_error"}, {"error", e.what()}};
        return kParseError;
    }
    const auto issues = validate_scenario(j, true);
    report = {{"status", issues.empty() ? "ok" : "validation_error"},
              {"issues", issues_json(issues)}};
    return issues.empty() ? kOk : kValidationError;
}

int run_scenario_file(const std::string& path, const RunOptions& opt) {
    const std::string diag_path = opt.out_dir + "/diagnostics.json";

    nlohmann::json j;
    {
        std::ifstream is(path);
        if (!is) {
            std::fprintf(stderr, "cannot open scenario file '%s'\n",
                         path.c_str());
            return kParseError;
        }
        try {
            is >> j;
        } catch (const nlohmann::json::exception& e) {
            std::fprintf(stderr, "scenario parse error: %s\n", e.what());
            return kParseError;
        }
    }
    if (opt.seed) j["seed"] = *opt.seed;

    const auto issues = validate_scenario(j, true);
    if (!issues.empty()) {
        write_text(diag_path,
                   nlohmann::json{{"status", "validation_error"},
                                  {"issues", issues_json(issues)}}
                       .dump(2) +
                       "\n");
        for (const auto& i : issues)
            std::fprintf(stderr, "validation: %s: %s\n", i.field.c_str(),
                         i.message.c_str());
        return kValidationError;
    }

    Loaded sc = load_scenario(j);
    log_line(opt.log_level, 1, "running scenario '" + path + "'");

    try {
        FrontTracker tracker(sc.system, sc.source, sc.engine);
        tracker.set_initial(sc.initial);
        const GlimmReport g0 = tracker.glimm();

        std::ostringstream snap;
        snap << "t,x";
        for (int k = 0; k < sc.system->dimension(); ++k) snap << ",u" << k;
        snap << "\n";
        for (double t : sc.snapshot_times) {
            tracker.advance_to(t);
            for (int i = 0; i <= sc.grid_n; ++i) {
                const double x =
                    sc.grid_a + (sc.grid_b - sc.grid_a) * i / sc.grid_n;
                const State u = tracker.evaluate(x);
                snap << fmt17(t) << "," << fmt17(x);
                for (Eigen::Index k = 0; k < u.size(); ++k)
                    snap << "," << fmt17(u[k]);
                snap << "\n";
            }
            log_line(opt.log_level, 2,
                     "snapshot at t = " + fmt17(t) + ", " +
                         std::to_string(tracker.fronts().size()) + " fronts");
        }

        std::ostringstream fronts;
        for (const auto& ev : tracker.events())
            fronts << to_json(ev).dump() << "\n";

        const GlimmReport g1 = tracker.glimm();
        const double f0 = g0.V + sc.engine.kappa_glimm * g0.Q;
        const double f1 = g1.V + sc.engine.kappa_glimm * g1.Q;
        nlohmann::json checks = {
            {"non_physical_within_budget",
             {{"value", g1.np_total},
              {"bound", sc.engine.eps},
              {"pass", g1.np_total <= sc.engine.eps}}},
            {"strength_functional_bounded",
             {{"initial", f0},
              {"final", f1},
              {"bound", 1.5 * f0},
              {"pass", f1 <= 1.5 * f0 + 1e-12}}},
        };
        nlohmann::json diag = {
            {"status", "ok"},
            {"seed", sc.seed},
            {"engine",
             {{"eps", sc.engine.eps},
              {"h", sc.engine.h},
              {"lambda_hat", tracker.lambda_hat()}}},
            {"glimm",
             {{"V", g1.V},
              {"Q", g1.Q},
              {"total", g1.total},
              {"np_total", g1.np_total}}},
            {"fronts", tracker.fronts().size()},
            {"events", tracker.events().size()},
            {"checks", checks},
        };

        bool ok = write_text(opt.out_dir + "/snapshots.csv", snap.str());
        ok = write_text(opt.out_dir + "/fronts.jsonl", fronts.str()) && ok;

        if (sc.refinement) {
            auto rows = run_refinement(sc, opt.threads, opt.log_level);
            std::ostringstream os;
            os << "eps,h,l1_error\n";
            for (const auto& r : rows)
                os << fmt17(r.eps) << "," << fmt17(r.h) << ","
                   << fmt17(r.error) << "\n";
            ok = write_text(opt.out_dir + "/study_refinement.csv", os.str()) &&
                 ok;
        }
        if (sc.section_limit) {
            const auto& lim = *sc.section_limit;
            auto res = gas::limit_study(*sc.gas_system, lim.a_left,
                                        lim.a_right, lim.u_left, lim.u_right,
                                        lim.t_eval, lim.levels, sc.engine.eps,
                                        sc.engine.h);
            std::ostringstream os;
            os << "level,width,distance_to_ref\n";
            for (const auto& l : res.levels)
                os << l.level << "," << fmt17(l.width) << ","
                   << fmt17(l.distance_to_ref) << "\n";
            ok = write_text(opt.out_dir + "/study_limit.csv", os.str()) && ok;
        }

        ok = write_text(diag_path, diag.dump(2) + "\n") && ok;
        if (!ok) {
            std::fprintf(stderr, "cannot write outputs into '%s'\n",
                         opt.out_dir.c_str());
            return kRuntimeAbort;
        }
        return kOk;
    } catch (const Error& e) {
        const char* inv = "runtime_abort";
        if (e.code() == ErrorCode::SonicBreakdown) inv = "subsonic_region";
        if (e.code() == ErrorCode::RuntimeAbort) inv = "engine_budget";
        write_text(diag_path, nlohmann::json{{"status", "abort"},
                                             {"invariant", inv},
                                             {"error", e.what()}}
                                  .dump(2) +
                                  "\n");
        std::fprintf(stderr, "runtime abort: %s\n", e.what());
        return kRuntimeAbort;
    }
}

}  // namespace ft::scenario
