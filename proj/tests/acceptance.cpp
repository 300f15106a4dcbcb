// Acceptance suite: one check per shipped claim, one PASS/FAIL line each.
// Run with no arguments for all criteria, or pass criterion numbers (1..10).
//
// Criterion 9 is expected to fail on the order-3 demo gains: the sampled
// decrease certificate for the nominal closed loop is negative at l = (1,2,5),
// so no convergence-time bound exists for that tuning. The failure output
// carries the full diagnostic; the order3-certified scenario shows the same
// pipeline green under gains that do satisfy the certificate.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ahosm/analysis.hpp"
#include "ahosm/errors.hpp"
#include "ahosm/runner.hpp"
#include "ahosm/scenario.hpp"
#include "oracles.hpp"

using namespace ahosm;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void pass(int criterion, const std::string& what) {
    std::printf("[PASS] criterion %d: %s\n", criterion, what.c_str());
}

void fail(int criterion, const std::string& what) {
    std::printf("[FAIL] criterion %d: %s\n", criterion, what.c_str());
    ++g_failures;
}

void outcome(int criterion, bool ok, const std::string& what) {
    ok ? pass(criterion, what) : fail(criterion, what);
}

double rel_err(double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) / scale;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

struct Order1Run {
    Trajectory traj;
    double wall_seconds = 0.0;
    std::optional<double> stay;
};

const Order1Run& order1_run() {
    static const Order1Run run = [] {
        Order1Run r;
        const auto sc = builtin_scenario("paper-order1");
        const auto t0 = clock_type::now();
        r.traj = simulate(to_simulation_spec(sc));
        r.wall_seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
        r.stay = enter_and_stay_time(r.traj, 0.1, 0.02);
        return r;
    }();
    return run;
}

struct Order3Run {
    Trajectory traj;
    double wall_seconds = 0.0;
    std::optional<double> stay;
};

const Order3Run& order3_run() {
    static const Order3Run run = [] {
        Order3Run r;
        auto sc = builtin_scenario("paper-order3");
        auto spec = to_simulation_spec(sc);
        spec.record_stride = 1;  // full resolution for the property checks
        const auto t0 = clock_type::now();
        r.traj = simulate(spec);
        r.wall_seconds = std::chrono::duration<double>(clock_type::now() - t0).count();
        r.stay = enter_and_stay_time(r.traj, 0.01, 0.005);
        return r;
    }();
    return run;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    const auto sc = builtin_scenario("paper-order1");
    bool params_ok = sc.stabilizer == StabilizerKind::first_order_sign &&
                     sc.adaptive.epsilon == 0.1 && sc.adaptive.k == 1.0 && sc.dt == 1e-4 &&
                     sc.z0 == StateVector{5.0} && sc.t_final == 20.0;
    const auto& run = order1_run();
    const double resid = residual_band(run.traj, 15.0);
    const bool ok = params_ok && run.stay.has_value() && resid <= 0.1 + 0.02 &&
                    run.wall_seconds < 5.0;
    outcome(1, ok,
            fmt("order-1 reproduction: enter_and_stay = %s, residual(after 15 s) = %.6f "
                "(<= 0.12), runtime %.2f s (< 5 s)",
                run.stay ? fmt("%.4f s", *run.stay).c_str() : "absent", resid,
                run.wall_seconds));
}

void criterion_2() {
    const auto report = compute_bounds(builtin_scenario("paper-order1"), 10000, 1);
    const double resid = residual_band(order1_run().traj, 15.0);
    const double limit = std::max(0.0, report.v1_bar) + 0.02;
    const bool ok = rel_err(report.v1_bar, 0.1 * 14.0 / 15.0) <= 1e-9 && resid <= limit;
    outcome(2, ok,
            fmt("containment bound: residual %.6f <= max(0, v1_bar) + 0.02 = %.6f "
                "(v1_bar = %.6f from the bounds pipeline)",
                resid, limit, report.v1_bar));
}

void criterion_3() {
    const auto& run = order1_run();
    if (!run.stay) {
        fail(3, "no enter-and-stay time in the order-1 run");
        return;
    }
    double max_gain_after = 0.0;
    bool never_exceeds_t = true;
    for (std::size_t k = 0; k < run.traj.times.size(); ++k) {
        if (run.traj.times[k] >= *run.stay)
            max_gain_after = std::max(max_gain_after, run.traj.adaptive_gains[k]);
        if (run.traj.adaptive_gains[k] > run.traj.times[k]) never_exceeds_t = false;
    }
    const bool ok = max_gain_after <= 15.0 + 0.5 && never_exceeds_t;
    outcome(3, ok,
            fmt("gain non-overestimation: max phi_hat after stay = %.4f (<= 15.5); "
                "phi_hat <= t at every sample: %s",
                max_gain_after, never_exceeds_t ? "yes" : "NO"));
}

void criterion_4() {
    const auto sc = builtin_scenario("paper-order3");
    const bool params_ok = sc.chain.gains == std::vector<double>{1.0, 2.0, 5.0} &&
                           sc.chain.kappa == -0.25 &&
                           sc.adaptive.g.family == GainFamily::logarithmic &&
                           sc.adaptive.epsilon == 0.01 && sc.adaptive.k == 1.0 &&
                           sc.dt == 1e-4 && sc.z0 == StateVector{1.0, 0.0, 0.0} &&
                           sc.t_final == 50.0;
    const auto& run = order3_run();
    double settle_max[3] = {0, 0, 0};
    for (std::size_t k = 0; k < run.traj.times.size(); ++k)
        if (run.traj.times[k] >= 0.75 * sc.t_final)
            for (int i = 0; i < 3; ++i)
                settle_max[i] = std::max(settle_max[i], std::fabs(run.traj.states[k][i]));
    const double worst_state = std::max({settle_max[0], settle_max[1], settle_max[2]});
    const bool ok = params_ok && run.stay.has_value() && worst_state < 0.5 &&
                    run.wall_seconds < 60.0;
    outcome(4, ok,
            fmt("order-3 reproduction: V1 stays <= 0.015 from t = %s; settled max |z_i| = "
                "(%.3f, %.3f, %.3f) (< 0.5 over t >= 37.5 s), runtime %.2f s (< 60 s)",
                run.stay ? fmt("%.4f s", *run.stay).c_str() : "absent", settle_max[0],
                settle_max[1], settle_max[2], run.wall_seconds));
}

void criterion_5() {
    const auto chain = builtin_scenario("paper-order3").chain;
    const double u0_degree = chain.p + chain.r * chain.kappa;
    const double m = measure_v1_degree(chain);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    double worst_u0 = 0.0, worst_v1 = 0.0;
    for (int k = 0; k < 10000; ++k) {
        StateVector z(3);
        for (auto& x : z) x = nd(rng);
        const double lam = std::exp(std::log(1e-2) + ud(rng) * std::log(1e4));
        const auto zs = apply_dilation(z, lam, chain);
        worst_u0 = std::max(worst_u0, rel_err(hong_u0(zs, chain),
                                              std::pow(lam, u0_degree) * hong_u0(z, chain)));
        worst_v1 = std::max(worst_v1, rel_err(lyapunov_v1(zs, chain),
                                              std::pow(lam, m) * lyapunov_v1(z, chain)));
    }
    const bool ok = worst_u0 <= 1e-9 && worst_v1 <= 1e-9;
    outcome(5, ok,
            fmt("homogeneity over 10^4 pairs: worst rel err u0 = %.3g, V1 = %.3g (<= 1e-9; "
                "degrees %.4g and %.4g)",
                worst_u0, worst_v1, u0_degree, m));
}

void criterion_6() {
    const auto chain = builtin_scenario("paper-order3").chain;
    std::mt19937_64 rng(6);
    std::normal_distribution<double> nd;
    double worst_quad = 0.0, worst_fd = 0.0;
    int fd_skipped = 0;
    for (int k = 0; k < 1000; ++k) {
        StateVector z(3);
        for (auto& x : z) x = nd(rng);
        const double quad = oracles::v1_quadrature(z, chain);
        worst_quad = std::max(worst_quad, rel_err(lyapunov_v1(z, chain), quad));

        const double analytic = lyapunov_v1_partial_r(z, chain);
        // skip the ill-conditioned set: central differences of V1 ~ O(1) at
        // h = 1e-6 carry ~1e-9 absolute noise
        if (std::fabs(analytic) < 1e-4) { ++fd_skipped; continue; }
        const double fd = lyapunov_v1_gradient_fd(z, chain, 1e-6)[2];
        worst_fd = std::max(worst_fd, rel_err(analytic, fd));
    }
    const bool ok = worst_quad <= 1e-8 && worst_fd <= 1e-5 && fd_skipped <= 10;
    outcome(6, ok,
            fmt("oracle equivalence: closed-form vs quadrature worst rel err = %.3g (<= 1e-8); "
                "analytic vs FD partial worst = %.3g (<= 1e-5, %d ill-conditioned samples "
                "skipped)",
                worst_quad, worst_fd, fd_skipped));
}

void criterion_7() {
    const auto chain = builtin_scenario("paper-order3").chain;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    double worst = -1e300;
    for (int k = 0; k < 100000; ++k) {
        StateVector z(3);
        for (auto& x : z) x = nd(rng);
        const double u0 = hong_u0(z, chain);
        const double s = u0 > 0 ? 1.0 : (u0 < 0 ? -1.0 : 0.0);
        worst = std::max(worst, s * lyapunov_v1_partial_r(z, chain));
    }
    outcome(7, worst <= 1e-12,
            fmt("sign condition over 10^5 states: max sgn(u0) dV1/dz_r = %.3g (<= 1e-12)",
                worst));
}

void criterion_8() {
    // gains satisfying the sampled decrease certificate (the criterion pins
    // the chain order and z0, not the gains)
    const auto chain = builtin_scenario("order3-certified").chain;
    CAlphaEstimate ca{};
    try {
        ca = estimate_c_alpha(chain, 10000, 20260810);
    } catch (const AnalysisError& e) {
        fail(8, fmt("decrease certificate unexpectedly failed: %s", e.what()));
        return;
    }
    const StateVector z0{1.0, 0.0, 0.0};
    const double v10 = lyapunov_v1(z0, chain);
    const double t_pred = std::pow(v10, 1.0 - ca.alpha) / (ca.c * (1.0 - ca.alpha));

    SimulationSpec spec;
    spec.stabilizer = StabilizerKind::hong;
    spec.chain = chain;
    spec.adaptive = make_adaptive_config(1.0, 1.0, GainSpec{GainFamily::logarithmic});
    SignalSpec zero, one;
    one.terms.push_back({TermKind::constant, 1.0, 0.0});
    spec.uncertainty = make_uncertainty_model(zero, one, 1.0, 1.0, 1.0);
    spec.z0 = z0;
    spec.dt = 1e-4;
    spec.t_final = t_pred;
    spec.method = Integrator::rk4;
    spec.law = ControlLaw::stabilizer_only;
    const auto traj = simulate(spec);

    double worst_increase = 0.0;
    std::optional<double> first_below;
    for (std::size_t k = 1; k < traj.lyapunov.size(); ++k) {
        worst_increase = std::max(worst_increase, traj.lyapunov[k] - traj.lyapunov[k - 1]);
        if (!first_below && traj.lyapunov[k] < 1e-6) first_below = traj.times[k];
    }
    const bool ok = worst_increase <= 1e-9 && first_below.has_value() &&
                    traj.lyapunov.back() < 1e-6;
    outcome(8, ok,
            fmt("nominal finite-time convergence: c = %.4f, alpha = %.4f, predicted bound "
                "%.2f s; V1 < 1e-6 from t = %.3f s, final V1 = %.3g, worst per-step "
                "increase = %.3g (<= 1e-9)",
                ca.c, ca.alpha, t_pred, first_below.value_or(-1.0), traj.lyapunov.back(),
                worst_increase));
}

void criterion_9() {
    // order-1: analytic constants
    {
        const auto report = compute_bounds(builtin_scenario("paper-order1"), 10000, 1);
        const auto& run = order1_run();
        const bool ok = run.stay.has_value() && report.T_bound.has_value() &&
                        *run.stay <= *report.T_bound;
        outcome(9, ok,
                fmt("convergence-time bound (order 1): measured %.4f s <= bound %.1f s",
                    run.stay.value_or(-1.0), report.T_bound.value_or(-1.0)));
    }
    // order-3 at the demo gains l = (1,2,5): the bound requires the
    // sampled decrease certificate, which fails; re-sampling cannot repair a
    // definitively negative certificate. Reported, not hidden.
    {
        const auto sc = builtin_scenario("paper-order3");
        auto report = compute_bounds(sc, 10000, 1);
        if (!report.certificate_ok) report = compute_bounds(sc, 40000, 1);  // 4x re-sample
        if (report.certificate_ok && report.T_bound.has_value()) {
            const auto& run = order3_run();
            outcome(9, run.stay.has_value() && *run.stay <= *report.T_bound,
                    fmt("convergence-time bound (order 3): measured %.4f s <= bound %.1f s",
                        run.stay.value_or(-1.0), *report.T_bound));
        } else {
            fail(9, fmt("convergence-time bound (order 3): UNDEFINED at gains (1,2,5) - "
                        "sampled min of -V1dot on {V1=1} is %.3f (< 0) at n = 40000, so no "
                        "positive decrease rate c exists for this Lyapunov function and the "
                        "bound cannot be evaluated; measured enter-and-stay = %.4f s. The "
                        "order3-certified scenario (gains 0.5,2,10) runs this pipeline green.",
                        report.certificate_min, order3_run().stay.value_or(-1.0)));
        }
    }
}

void criterion_10() {
    const auto base = fs::temp_directory_path() /
                      ("ahosm_acceptance_" + std::to_string(::getpid()));
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };
    bool ok = true;
    std::string detail;
    for (const char* name : {"paper-order1", "paper-order3"}) {
        const auto sc = builtin_scenario(name);
        const auto a = run_scenario_to_files(name, sc, base / "a");
        const auto b = run_scenario_to_files(name, sc, base / "b");
        const bool csv_eq = slurp(a.csv) == slurp(b.csv);
        const bool json_eq = slurp(a.summary) == slurp(b.summary);
        ok = ok && csv_eq && json_eq;
        detail += fmt("%s csv=%s json=%s; ", name, csv_eq ? "identical" : "DIFFERS",
                      json_eq ? "identical" : "DIFFERS");
    }
    for (const char* name : {"paper-order1", "order3-certified"}) {
        const auto sc = builtin_scenario(name);
        const auto ja = bounds_report_json(name, compute_bounds(sc, 2000, sc.seed));
        const auto jb = bounds_report_json(name, compute_bounds(sc, 2000, sc.seed));
        ok = ok && ja == jb;
        detail += fmt("%s bounds=%s; ", name, ja == jb ? "identical" : "DIFFERS");
    }
    fs::remove_all(base);
    outcome(10, ok, "determinism: repeated runs byte-identical - " + detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    auto enabled = [&](int c) { return wanted.empty() || wanted.count(c); };

    if (enabled(1)) criterion_1();
    if (enabled(2)) criterion_2();
    if (enabled(3)) criterion_3();
    if (enabled(4)) criterion_4();
    if (enabled(5)) criterion_5();
    if (enabled(6)) criterion_6();
    if (enabled(7)) criterion_7();
    if (enabled(8)) criterion_8();
    if (enabled(9)) criterion_9();
    if (enabled(10)) criterion_10();

    if (g_failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d check(s) failed (see lines above; the order-3 "
                    "convergence-time bound failure is a documented property of the demo "
                    "gain tuning)\n",
                    g_failures);
    return g_failures == 0 ? 0 : 1;
}
