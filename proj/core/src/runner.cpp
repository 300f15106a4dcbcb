#include "ahosm/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "ahosm/errors.hpp"

namespace ahosm {

namespace {

using ordered_json = nlohmann::ordered_json;

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

}  // namespace

RunSummary summarize_run(const std::string& name, const Scenario& sc, const Trajectory& traj) {
    RunSummary s;
    s.scenario = name;
    s.stabilizer = sc.stabilizer == StabilizerKind::hong ? "hong" : "first_order_sign";
    s.order = traj.order;
    s.method = sc.method == Integrator::euler ? "euler" : "rk4";
    s.dt = sc.dt;
    s.t_final = sc.t_final;
    s.record_stride = sc.record_stride;
    s.seed = sc.seed;
    s.samples = static_cast<long>(traj.times.size());
    s.threshold = sc.adaptive.epsilon;
    s.enter_and_stay = enter_and_stay_time(traj, sc.adaptive.epsilon, 0.0);
    s.residual_after = 0.75 * sc.t_final;
    s.residual = residual_band(traj, s.residual_after);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        s.max_phi_hat = std::max(s.max_phi_hat, traj.adaptive_gains[k]);
        s.max_abs_u = std::max(s.max_abs_u, std::fabs(traj.controls[k]));
    }
    if (s.enter_and_stay) {
        double m = 0.0;
        for (std::size_t k = 0; k < traj.times.size(); ++k)
            if (traj.times[k] >= *s.enter_and_stay) m = std::max(m, traj.adaptive_gains[k]);
        s.max_phi_hat_after_stay = m;
    }
    s.band_estimate = discretization_band(traj);
    return s;
}

std::string run_summary_json(const RunSummary& s) {
    ordered_json j;
    j["scenario"] = s.scenario;
    j["stabilizer"] = s.stabilizer;
    j["order"] = s.order;
    j["method"] = s.method;
    j["dt"] = s.dt;
    j["t_final"] = s.t_final;
    j["record_stride"] = s.record_stride;
    j["seed"] = s.seed;
    j["samples"] = s.samples;
    j["threshold"] = s.threshold;
    j["enter_and_stay_time"] = opt_json(s.enter_and_stay);
    j["residual_after"] = s.residual_after;
    j["residual_band"] = s.residual;
    j["max_phi_hat"] = s.max_phi_hat;
    j["max_abs_u"] = s.max_abs_u;
    j["max_phi_hat_after_stay"] = opt_json(s.max_phi_hat_after_stay);
    j["discretization_band"] = s.band_estimate;
    return j.dump(2) + "\n";
}

BoundsReport compute_bounds(const Scenario& sc, int n, std::uint64_t seed) {
    BoundsReport r;
    r.stabilizer = sc.stabilizer == StabilizerKind::hong ? "hong" : "first_order_sign";
    r.order = sc.stabilizer == StabilizerKind::hong ? sc.chain.r : 1;
    r.epsilon = sc.adaptive.epsilon;
    r.k = sc.adaptive.k;
    r.phi_bar = sc.uncertainty.phi_bar;
    r.gamma_min = sc.uncertainty.gamma_min;
    r.gamma_max = sc.uncertainty.gamma_max;
    r.sample_count = n;
    r.seed = seed;

    r.h_m = compute_h_m(r.gamma_min, sc.adaptive.g);
    r.phi_bar_cap = compute_phi_bar_cap(r.k, r.gamma_min, r.phi_bar, r.h_m);
    const auto vb = compute_v1_bar(r.epsilon, r.phi_bar_cap);
    r.v1_bar = vb.v1_bar;
    r.limsup_v1 = vb.limsup_bound;

    if (sc.stabilizer == StabilizerKind::first_order_sign) {
        // analytic special case: u0 = -sgn(z1), V1 = |z1|
        r.v1_degree = 1.0;
        r.p_r_plus_2 = std::nullopt;
        r.u0_level_max = r.v1_bar > 0.0 ? 1.0 : 0.0;
        r.u_bound = compute_u_asymptotic_bound(r.u0_level_max, sc.adaptive.g, r.k,
                                               r.phi_bar_cap);
        r.certificate_ok = true;
        r.certificate_min = 1.0;  // -V1dot = 1 along z1' = -sgn(z1)
        r.c_est = 1.0;
        r.alpha_val = 0.0;
        r.C1_est = r.k * r.gamma_min * r.phi_bar_cap;  // |dV1/dz_1| = 1
        r.q_exponent = 0.0;
        r.v1_z0 = std::fabs(sc.z0[0]);
        r.T_bound = bound_T_z0(r.v1_z0, r);
        return r;
    }

    const auto& chain = sc.chain;
    r.v1_degree = measure_v1_degree(chain);
    r.p_r_plus_2 = chain.weights[chain.r + 1];
    r.u0_level_max =
        r.v1_bar > 0.0 ? compute_u0_levelset_max(r.v1_bar, chain, n, seed + 3) : 0.0;
    r.u_bound = compute_u_asymptotic_bound(r.u0_level_max, sc.adaptive.g, r.k, r.phi_bar_cap);
    r.v1_z0 = lyapunov_v1(sc.z0, chain);

    const auto cert = decrease_certificate(chain, n, seed);
    r.certificate_ok = cert.ok();
    r.certificate_min = cert.min_neg_vdot;
    if (cert.ok()) {
        r.c_est = cert.min_neg_vdot;
        r.alpha_val = (r.v1_degree + chain.kappa) / r.v1_degree;
        const auto c1 = estimate_c1(chain, r.k, r.gamma_min, r.phi_bar_cap, n, seed + 4);
        r.C1_est = c1.c1;
        r.q_exponent = c1.q;
        r.T_bound = bound_T_z0(r.v1_z0, r);
    }
    return r;
}

std::string bounds_report_json(const std::string& scenario, const BoundsReport& r) {
    ordered_json j;
    j["scenario"] = scenario;
    j["stabilizer"] = r.stabilizer;
    j["order"] = r.order;
    j["epsilon"] = r.epsilon;
    j["k"] = r.k;
    j["phi_bar"] = r.phi_bar;
    j["gamma_min"] = r.gamma_min;
    j["gamma_max"] = r.gamma_max;
    j["h_m"] = r.h_m;
    j["phi_bar_cap"] = r.phi_bar_cap;
    j["v1_bar"] = r.v1_bar;
    j["limsup_v1"] = r.limsup_v1;
    j["v1_degree"] = r.v1_degree;
    j["p_r_plus_2"] = opt_json(r.p_r_plus_2);
    j["u0_level_max"] = r.u0_level_max;
    j["u_bound"] = r.u_bound;
    j["decrease_certificate_ok"] = r.certificate_ok;
    j["decrease_certificate_min"] = r.certificate_min;
    j["c_est"] = opt_json(r.c_est);
    j["alpha"] = opt_json(r.alpha_val);
    j["C1_est"] = opt_json(r.C1_est);
    j["q_exponent"] = opt_json(r.q_exponent);
    j["v1_z0"] = r.v1_z0;
    j["T_bound"] = opt_json(r.T_bound);
    j["sample_count"] = r.sample_count;
    j["seed"] = r.seed;
    j["tolerances"] = ordered_json{{"level_set_rel", 1e-9}, {"fd_step", 1e-6}};
    return j.dump(2) + "\n";
}

VerificationReport verify_scenario(const Scenario& sc, int n, std::uint64_t seed) {
    if (sc.stabilizer == StabilizerKind::hong) return verify_chain(sc.chain, n, seed);
    return verify_first_order(n, seed);
}

void print_verification(std::ostream& os, const VerificationReport& report) {
    for (const auto& p : report.properties) {
        os << (p.pass ? "PASS " : "FAIL ") << p.name << "  worst=" << p.worst;
        if (p.tolerance > 0.0) os << "  tol=" << p.tolerance;
        if (!p.detail.empty()) os << "  (" << p.detail << ")";
        os << "\n";
    }
    os << (report.all_pass() ? "all properties passed\n" : "some properties FAILED\n");
}

RunPaths run_scenario_to_files(const std::string& name, const Scenario& sc,
                               const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    const auto traj = simulate(to_simulation_spec(sc));
    RunPaths paths{outdir / (name + "_trajectory.csv"), outdir / (name + "_summary.json")};
    {
        std::ofstream csv(paths.csv, std::ios::binary);
        if (!csv) throw ConfigError("cannot write " + paths.csv.string());
        write_trajectory_csv(csv, traj, /*with_llv1=*/true);
    }
    {
        std::ofstream js(paths.summary, std::ios::binary);
        if (!js) throw ConfigError("cannot write " + paths.summary.string());
        js << run_summary_json(summarize_run(name, sc, traj));
    }
    return paths;
}

std::string default_output_dir() {
    if (const char* env = std::getenv("AHOSM_OUTPUT_DIR"); env && *env) return env;
    return ".";
}

std::string scenario_display_name(const std::string& arg) {
    if (is_builtin_scenario(arg)) return arg;
    return std::filesystem::path(arg).stem().string();
}

namespace {

int run_one(const std::string& arg, const std::string& outdir, std::ostream& out,
            std::ostream& err) {
    try {
        const Scenario sc = resolve_scenario(arg);
        const std::string name = scenario_display_name(arg);
        const auto paths = run_scenario_to_files(name, sc, outdir);
        out << name << ": wrote " << paths.csv.string() << " and " << paths.summary.string()
            << "\n";
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const SimulationError& e) {
        err << "error: simulation failed: " << e.what() << " (last state at t = " << e.time()
            << ")\n";
        return 2;
    } catch (const AnalysisError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int cmd_run(const std::vector<std::string>& scenarios, const std::string& outdir, bool batch,
            std::ostream& out, std::ostream& err) {
    if (scenarios.empty()) {
        err << "error: no scenario given\n";
        return 1;
    }
    if (!batch || scenarios.size() == 1) {
        int rc = 0;
        for (const auto& s : scenarios) rc = std::max(rc, run_one(s, outdir, out, err));
        return rc;
    }
    // independent scenarios, no shared mutable state; one thread each
    std::vector<int> codes(scenarios.size(), 0);
    std::vector<std::ostringstream> outs(scenarios.size()), errs(scenarios.size());
    {
        std::vector<std::jthread> workers;
        workers.reserve(scenarios.size());
        for (std::size_t i = 0; i < scenarios.size(); ++i)
            workers.emplace_back([&, i] { codes[i] = run_one(scenarios[i], outdir, outs[i], errs[i]); });
    }
    int rc = 0;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        out << outs[i].str();
        err << errs[i].str();
        rc = std::max(rc, codes[i]);
    }
    return rc;
}

int cmd_bounds(const std::string& scenario, int n, std::optional<std::uint64_t> seed,
               std::ostream& out, std::ostream& err) {
    try {
        const Scenario sc = resolve_scenario(scenario);
        const auto report = compute_bounds(sc, n, seed.value_or(sc.seed));
        out << bounds_report_json(scenario_display_name(scenario), report);
        if (!report.certificate_ok) {
            err << "error: decrease certificate failed (sampled min of -V1dot on {V1=1} is "
                << report.certificate_min
                << "); c, C1 and the convergence-time bound are undefined for these gains\n";
            return 2;
        }
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const AnalysisError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_verify(const std::string& scenario, int n, std::optional<std::uint64_t> seed,
               std::ostream& out, std::ostream& err) {
    try {
        const Scenario sc = resolve_scenario(scenario);
        const auto report = verify_scenario(sc, n, seed.value_or(sc.seed));
        print_verification(out, report);
        return report.all_pass() ? 0 : 3;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const AnalysisError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_export_scenario(const std::string& name, const std::string& outdir, std::ostream& out,
                        std::ostream& err) {
    if (!is_builtin_scenario(name)) {
        err << "error: unknown built-in scenario '" << name << "' (available:";
        for (const auto& n : builtin_scenario_names()) err << " " << n;
        err << ")\n";
        return 1;
    }
    try {
        std::filesystem::create_directories(outdir);
        const auto path = std::filesystem::path(outdir) / (name + ".scn");
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ConfigError("cannot write " + path.string());
        f << serialize_scenario(builtin_scenario(name));
        out << "wrote " << path.string() << "\n";
        return 0;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ahosm
