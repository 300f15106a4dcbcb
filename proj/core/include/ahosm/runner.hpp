#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "ahosm/analysis.hpp"
#include "ahosm/scenario.hpp"

namespace ahosm {

/// Headline numbers of one closed-loop run, written next to the CSV.
struct RunSummary {
    std::string scenario;
    std::string stabilizer;
    int order = 0;
    std::string method;
    double dt = 0.0;
    double t_final = 0.0;
    int record_stride = 1;
    std::uint64_t seed = 0;
    long samples = 0;
    double threshold = 0.0;  // the adaptive epsilon
    std::optional<double> enter_and_stay;
    double residual_after = 0.0;
    double residual = 0.0;
    double max_phi_hat = 0.0;
    double max_abs_u = 0.0;
    std::optional<double> max_phi_hat_after_stay;
    double band_estimate = 0.0;
};

RunSummary summarize_run(const std::string& name, const Scenario& sc, const Trajectory& traj);
std::string run_summary_json(const RunSummary& s);

/// Assembles the full BoundsReport for a scenario (analytic for the
/// first-order sign controller, sampled for Hong chains). Throws
/// AnalysisError when h_m is the -infinity sentinel; a failed decrease
/// certificate is reported in the result, not thrown.
BoundsReport compute_bounds(const Scenario& sc, int n, std::uint64_t seed);
std::string bounds_report_json(const std::string& scenario, const BoundsReport& r);

VerificationReport verify_scenario(const Scenario& sc, int n, std::uint64_t seed);
void print_verification(std::ostream& os, const VerificationReport& report);

struct RunPaths {
    std::filesystem::path csv;
    std::filesystem::path summary;
};
/// Simulates and writes <name>_trajectory.csv (with the LLV1 column) and
/// <name>_summary.json under outdir.
RunPaths run_scenario_to_files(const std::string& name, const Scenario& sc,
                               const std::filesystem::path& outdir);

/// Command fronts shared by the CLI and tests.
/// Exit codes: 0 ok, 1 usage/parse, 2 numerical failure, 3 verification failure.
int cmd_run(const std::vector<std::string>& scenarios, const std::string& outdir, bool batch,
            std::ostream& out, std::ostream& err);
int cmd_bounds(const std::string& scenario, int n, std::optional<std::uint64_t> seed,
               std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& scenario, int n, std::optional<std::uint64_t> seed,
               std::ostream& out, std::ostream& err);
int cmd_export_scenario(const std::string& name, const std::string& outdir, std::ostream& out,
                        std::ostream& err);

/// $AHOSM_OUTPUT_DIR when set, else the current directory.
std::string default_output_dir();
/// Built-in name as-is; file path reduced to its stem.
std::string scenario_display_name(const std::string& arg);

}  // namespace ahosm
