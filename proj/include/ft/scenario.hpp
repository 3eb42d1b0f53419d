#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ft/front_tracking.hpp"
#include "ft/gas_pipe.hpp"
#include "ft/piecewise.hpp"
#include "ft/source.hpp"
#include "ft/system.hpp"
#include "json.hpp"

namespace ft::scenario {

/// One validation finding, naming the offending field.
struct Issue {
    std::string field;
    std::string message;
};

/// A scenario file resolved into live objects, ready to run.
struct Loaded {
    SystemPtr system;
    SourcePtr source;
    /// Kept when the system is the isentropic gas, for section studies.
    std::shared_ptr<const gas::IsentropicSystem> gas_system;

    PiecewiseConstant initial;
    EngineConfig engine;
    double t_end = 0.0;
    std::vector<double> snapshot_times;
    double grid_a = -1.0, grid_b = 1.0;
    int grid_n = 200;
    unsigned long long seed = 0;

    /// (eps, h) sweep with an L1-error table against a reference solution:
    /// "linear_exact" (closed form, scalar linear flux with a u-independent
    /// source) or "self" (the finest member of the sweep).
    struct Refinement {
        std::vector<std::pair<double, double>> levels;  // (eps, h)
        std::string reference = "self";
        double t_eval = 0.0;
        double win_a = 0.0, win_b = 0.0;
    };
    std::optional<Refinement> refinement;

    /// Mollified-section convergence study (isentropic gas only).
    struct SectionLimit {
        double a_left = 1.0, a_right = 1.0;
        State u_left, u_right;
        double t_eval = 0.0;
        int levels = 3;
    };
    std::optional<SectionLimit> section_limit;
};

/// Structural and semantic validation; returns every issue found. A
/// returned empty list guarantees load_scenario succeeds. When
/// audit_source is true the source domination bounds are also sampled
/// over the admissible box (seeded, reported with the witnessing point).
std::vector<Issue> validate_scenario(const nlohmann::json& j,
                                     bool audit_source = true);

/// Builds the live objects; throws Error(Validation) on the first issue.
Loaded load_scenario(const nlohmann::json& j);

struct RunOptions {
    std::string out_dir = ".";
    int threads = 1;
    std::optional<unsigned long long> seed;  // overrides the scenario seed
    int log_level = 0;                       // from FRONTTRACK_LOG by default
};

/// Exit-status taxonomy shared by the library entry points and the CLI.
enum ExitCode : int {
    kOk = 0,
    kParseError = 2,
    kValidationError = 3,
    kRuntimeAbort = 4,
};

/// Parses, validates and runs a scenario file, writing snapshots.csv,
/// fronts.jsonl, diagnostics.json and any study tables into out_dir.
/// Returns an ExitCode; fatal aborts still leave a diagnostics.json
/// naming the violated invariant.
int run_scenario_file(const std::string& path, const RunOptions& opt);

/// Parses and validates only; writes a JSON report to `report` and returns
/// an ExitCode. No simulation is executed.
int validate_scenario_file(const std::string& path, nlohmann::json& report);

}  // namespace ft::scenario
