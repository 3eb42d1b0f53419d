#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "ft/scenario.hpp"

namespace {

int env_log_level() {
    const char* v = std::getenv("FRONTTRACK_LOG");
    if (!v) return 0;
    return std::atoi(v);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wave-front-tracking scenario runner for 1D hyperbolic "
                 "balance laws"};
    app.require_subcommand(1);

    std::string scenario_path;
    ft::scenario::RunOptions opt;
    opt.log_level = env_log_level();
    unsigned long long seed = 0;

    auto* run = app.add_subcommand("run", "Run a scenario file");
    run->add_option("file", scenario_path, "Scenario JSON file")->required();
    run->add_option("-o,--output", opt.out_dir, "Output directory")
        ->default_val(".");
    run->add_option("--threads", opt.threads,
                    "Parallel study members (default 1)");
    auto* seed_opt =
        run->add_option("--seed", seed, "Override the scenario seed");

    auto* validate = app.add_subcommand("validate",
                                        "Validate a scenario file "
                                        "without running it");
    validate->add_option("file", scenario_path, "Scenario JSON file")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (*seed_opt) opt.seed = seed;
        return ft::scenario::run_scenario_file(scenario_path, opt);
    }
    nlohmann::json report;
    const int rc = ft::scenario::validate_scenario_file(scenario_path, report);
    std::printf("%s\n", report.dump(2).c_str());
    return rc;
}
