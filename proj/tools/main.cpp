#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ahosm/runner.hpp"
#include "ahosm/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "ahosm - adaptive higher-order sliding-mode control: simulation, "
        "bounds and verification"};
    app.require_subcommand(1);

    std::vector<std::string> run_scenarios;
    std::string run_outdir = ahosm::default_output_dir();
    bool run_batch = false;
    auto* run = app.add_subcommand(
        "run", "Simulate scenario(s); write <name>_trajectory.csv and <name>_summary.json");
    run->add_option("scenario", run_scenarios,
                    "Scenario file path or built-in name (paper-order1, paper-order3, "
                    "order3-certified)")
        ->required();
    run->add_option("-o,--output", run_outdir, "Output directory (default $AHOSM_OUTPUT_DIR or .)");
    run->add_flag("--batch", run_batch, "Run multiple scenarios concurrently");

    std::string bounds_scenario;
    int bounds_n = 10000;
    std::optional<std::uint64_t> bounds_seed;
    auto* bounds = app.add_subcommand(
        "bounds", "Compute the containment/convergence bounds report (JSON to stdout)");
    bounds->add_option("scenario", bounds_scenario, "Scenario file path or built-in name")
        ->required();
    bounds->add_option("-n,--samples", bounds_n, "Level-set sample count (default 10000)");
    bounds->add_option("--seed", bounds_seed, "Sampling seed (default: scenario seed)");

    std::string verify_scenario_arg;
    int verify_n = 10000;
    std::optional<std::uint64_t> verify_seed;
    auto* verify = app.add_subcommand(
        "verify", "Run the property battery (homogeneity, sign condition, decrease, oracles)");
    verify->add_option("scenario", verify_scenario_arg, "Scenario file path or built-in name")
        ->required();
    verify->add_option("-n,--samples", verify_n, "Sample count per property (default 10000)");
    verify->add_option("--seed", verify_seed, "Sampling seed (default: scenario seed)");

    std::string export_name;
    std::string export_outdir = ahosm::default_output_dir();
    auto* exp = app.add_subcommand("export-scenario", "Write a built-in scenario to <name>.scn");
    exp->add_option("name", export_name, "Built-in scenario name")->required();
    exp->add_option("-o,--output", export_outdir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (run->parsed())
        return ahosm::cmd_run(run_scenarios, run_outdir, run_batch, std::cout, std::cerr);
    if (bounds->parsed())
        return ahosm::cmd_bounds(bounds_scenario, bounds_n, bounds_seed, std::cout, std::cerr);
    if (verify->parsed())
        return ahosm::cmd_verify(verify_scenario_arg, verify_n, verify_seed, std::cout,
                                 std::cerr);
    if (exp->parsed())
        return ahosm::cmd_export_scenario(export_name, export_outdir, std::cout, std::cerr);
    return 1;
}
