#include "ahosm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "ahosm/errors.hpp"

namespace ahosm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_err(double a, double b) {
    const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    return std::fabs(a - b) / scale;
}

StateVector random_direction(std::mt19937_64& rng, std::normal_distribution<double>& nd, int r) {
    StateVector z(r);
    for (auto& x : z) x = nd(rng);
    return z;
}

double log_uniform(std::mt19937_64& rng, std::uniform_real_distribution<double>& ud,
                   double lo, double hi) {
    return std::exp(std::log(lo) + ud(rng) * (std::log(hi) - std::log(lo)));
}

// Adaptive Simpson with Richardson correction.
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) { std::swap(a, b); sign = -1.0; }
    // split at the integrand kink at s = 0
    std::vector<std::pair<double, double>> spans;
    if (a < 0.0 && b > 0.0) {
        spans.push_back({a, 0.0});
        spans.push_back({0.0, b});
    } else {
        spans.push_back({a, b});
    }
    double total = 0.0;
    for (auto [lo, hi] : spans) {
        if (lo == hi) continue;
        const double mid = 0.5 * (lo + hi);
        const double flo = f(lo), fmid = f(mid), fhi = f(hi);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += simpson_rec(f, lo, hi, flo, fmid, fhi, whole, eps, 48);
    }
    return sign * total;
}

// Quadrature route for one Lyapunov term (verification counterpart of the
// closed form).
double lyapunov_term_quadrature(double z, double v, double beta) {
    const double vb = signed_power(v, beta);
    auto f = [beta, vb](double s) { return signed_power(s, beta) - vb; };
    const double scale = std::max({std::fabs(z), std::fabs(v), 1.0});
    const double eps = 1e-13 * std::pow(scale, beta + 1.0);
    return integrate(f, v, z, eps);
}

double lyapunov_v1_quadrature(const StateVector& z, const ChainConfig& cfg) {
    const auto v = hong_v_sequence(z, cfg);
    double total = 0.0;
    for (int j = 1; j <= cfg.r; ++j)
        total += lyapunov_term_quadrature(z[j - 1], v[j - 1], cfg.betas[j - 1]);
    return total;
}

// Relative cancellation margin of the stabilizer recursion at z: the smallest
// |a - b| / max(|a|, |b|) over the differences spow(z_{i+1},b) - spow(v_i,b).
// Relative comparisons lose precision where this is tiny.
double recursion_condition(const StateVector& z, const ChainConfig& cfg) {
    std::vector<double> v(cfg.r + 1, 0.0);
    double cond = 1.0;
    for (int i = 0; i < cfg.r; ++i) {
        const double b = cfg.betas[i];
        const double za = signed_power(z[i], b);
        const double vb = signed_power(v[i], b);
        const double mag = std::max({std::fabs(za), std::fabs(vb), 1e-300});
        cond = std::min(cond, std::fabs(za - vb) / mag);
        v[i + 1] = -cfg.gains[i] * signed_power(za - vb, cfg.alphas[i] / b);
    }
    return cond;
}

StateVector nominal_drift(const StateVector& z, const ChainConfig& cfg) {
    StateVector f(z.size());
    for (std::size_t i = 0; i + 1 < z.size(); ++i) f[i] = z[i + 1];
    f.back() = hong_u0(z, cfg);
    return f;
}

UncertaintyModel nominal_uncertainty() {
    SignalSpec phi;  // identically zero
    SignalSpec gamma;
    gamma.terms.push_back({TermKind::constant, 1.0, 0.0});
    return make_uncertainty_model(phi, gamma, 1.0, 1.0, 1.0);
}

}  // namespace

double compute_h_m(double gamma_m, const GainSpec& g, double x_max, int grid) {
    if (!(gamma_m > 0.0)) throw ConfigError("gamma_m must be positive");
    if (grid < 2) throw ConfigError("grid must have at least 2 points");

    auto f = [&](double x) { return (gamma_m * gain_g(x, g) - 1.0) * x; };

    double upper = x_max;
    if (upper <= 0.0) {
        // derive the interval: past the crossing gamma_m g(x*) = 1 the product
        // increases, so the minimizer lies in [0, x*]
        switch (g.family) {
            case GainFamily::constant:
                if (gamma_m * g.a < 1.0) return -kInf;  // linear, unbounded below
                return 0.0;                             // f >= 0 everywhere
            case GainFamily::affine:
                if (g.b == 0.0) {
                    if (gamma_m * g.a < 1.0) return -kInf;
                    return 0.0;
                }
                upper = (1.0 / gamma_m - g.a) / g.b;
                break;
            case GainFamily::logarithmic:
                upper = std::expm1(1.0 / gamma_m - 1.0);
                break;
        }
        if (!(upper > 0.0)) return 0.0;  // gamma_m g(0) >= 1, so f >= 0
        if (std::isinf(upper)) return -kInf;  // beyond double range
    } else if (!(gamma_m * gain_g(upper, g) - 1.0 > 0.0)) {
        std::ostringstream os;
        os << "x_max = " << upper
           << " too small: gamma_m*g(x_max) - 1 <= 0, the minimum may lie beyond the grid";
        throw ConfigError(os.str());
    }

    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i <= grid; ++i) {
        const double x = upper * i / grid;
        const double y = f(x);
        if (y < best) { best = y; best_i = i; }
    }
    if (best == 0.0) return 0.0;

    // refine by bisection on the numerical derivative inside the bracketing cells
    double lo = upper * std::max(0, best_i - 1) / grid;
    double hi = upper * std::min(grid, best_i + 1) / grid;
    auto fprime = [&](double x) {
        const double h = std::max(1e-9, 1e-9 * x);
        return (f(x + h) - f(x - h)) / (2.0 * h);
    };
    if (fprime(lo) < 0.0 && fprime(hi) > 0.0) {
        for (int it = 0; it < 200 && hi - lo > 1e-15 * upper; ++it) {
            const double mid = 0.5 * (lo + hi);
            (fprime(mid) < 0.0 ? lo : hi) = mid;
        }
        best = std::min(best, f(0.5 * (lo + hi)));
    }
    return std::min(0.0, best);
}

double compute_phi_bar_cap(double k, double gamma_m, double phi_bar, double h_m) {
    if (!(k > 0.0) || !(gamma_m > 0.0)) throw ConfigError("k and gamma_m must be positive");
    if (!(phi_bar > 0.0)) throw ConfigError("phi_bar must be positive");
    if (std::isinf(h_m))
        throw AnalysisError(
            "h_m is unbounded below (gamma_min * g stays at or below 1); "
            "the gain function cannot dominate this input-gain floor");
    if (!(h_m <= 0.0)) throw ConfigError("h_m must be <= 0");
    return (phi_bar - h_m) / (k * gamma_m);
}

V1BarResult compute_v1_bar(double epsilon, double phi_bar_cap) {
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (!(phi_bar_cap > 0.0)) throw ConfigError("phi_bar_cap must be positive");
    const double v1_bar = epsilon * (1.0 - 1.0 / phi_bar_cap);
    return {v1_bar, std::max(0.0, v1_bar)};
}

namespace {

struct DegreeMeasurement {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool consistent() const { return hi - lo <= 1e-9 * std::fabs(mean); }
};

DegreeMeasurement measure_v1_degree_detail(const ChainConfig& chain) {
    std::vector<StateVector> refs;
    for (int s = 0; s < 3; ++s) {
        StateVector z(chain.r);
        for (int i = 0; i < chain.r; ++i)
            z[i] = ((i + s) % 2 == 0 ? 1.0 : -1.0) * (0.4 + 0.3 * i + 0.17 * s);
        refs.push_back(std::move(z));
    }
    const double lambdas[] = {2.0, 0.5, 16.0};
    DegreeMeasurement out{0.0, kInf, -kInf};
    int count = 0;
    for (const auto& z : refs) {
        const double base = lyapunov_v1(z, chain);
        for (double lam : lambdas) {
            const double scaled = lyapunov_v1(apply_dilation(z, lam, chain), chain);
            const double m = std::log(scaled / base) / std::log(lam);
            out.mean += m;
            out.lo = std::min(out.lo, m);
            out.hi = std::max(out.hi, m);
            ++count;
        }
    }
    out.mean /= count;
    return out;
}

}  // namespace

double measure_v1_degree(const ChainConfig& chain) {
    const auto d = measure_v1_degree_detail(chain);
    if (!d.consistent()) {
        std::ostringstream os;
        os << "V1 homogeneity degree measurements disagree: [" << d.lo << ", " << d.hi
           << "] (the beta convention is inconsistent)";
        throw AnalysisError(os.str());
    }
    return d.mean;
}

std::vector<StateVector> sample_level_set(double level, const ChainConfig& chain, int n,
                                          std::uint64_t seed) {
    if (!(level > 0.0)) throw ConfigError("level must be positive");
    if (n < 1) throw ConfigError("sample count must be >= 1");
    const double m = measure_v1_degree(chain);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<StateVector> out;
    out.reserve(n);
    while (static_cast<int>(out.size()) < n) {
        StateVector z = random_direction(rng, nd, chain.r);
        const double v1 = lyapunov_v1(z, chain);
        if (!(v1 > 1e-100)) continue;
        const double lam = std::pow(level / v1, 1.0 / m);
        StateVector proj = apply_dilation(z, lam, chain);
        const double check = lyapunov_v1(proj, chain);
        if (!(std::fabs(check - level) <= 1e-9 * level)) {
            std::ostringstream os;
            os << "level-set projection missed: V1 = " << check << " vs level " << level;
            throw AnalysisError(os.str());
        }
        out.push_back(std::move(proj));
    }
    return out;
}

double compute_u0_levelset_max(double xi, const ChainConfig& chain, int n, std::uint64_t seed) {
    double best = 0.0;
    for (const auto& z : sample_level_set(xi, chain, n, seed))
        best = std::max(best, std::fabs(hong_u0(z, chain)));
    return best;
}

double compute_u_asymptotic_bound(double u0_at_v1_bar, const GainSpec& g, double k,
                                  double phi_bar_cap) {
    if (phi_bar_cap <= 1.0) return 1.0;
    return u0_at_v1_bar * gain_g(u0_at_v1_bar, g) + k * phi_bar_cap;
}

DecreaseCertificate decrease_certificate(const ChainConfig& chain, int n, std::uint64_t seed) {
    DecreaseCertificate cert;
    cert.min_neg_vdot = kInf;
    cert.sample_count = n;
    for (const auto& z : sample_level_set(1.0, chain, n, seed)) {
        const auto grad = lyapunov_v1_gradient_fd(z, chain, 1e-6);
        const auto f = nominal_drift(z, chain);
        double vdot = 0.0;
        for (int i = 0; i < chain.r; ++i) vdot += grad[i] * f[i];
        if (vdot >= 0.0) ++cert.nonneg_count;
        if (-vdot < cert.min_neg_vdot) {
            cert.min_neg_vdot = -vdot;
            cert.worst_state = z;
        }
    }
    return cert;
}

CAlphaEstimate estimate_c_alpha(const ChainConfig& chain, int n, std::uint64_t seed) {
    const auto cert = decrease_certificate(chain, n, seed);
    if (!cert.ok()) {
        std::ostringstream os;
        os << "decrease certificate failed: " << cert.nonneg_count << "/" << cert.sample_count
           << " sampled directional derivatives are >= 0 on {V1 = 1}; worst -V1dot = "
           << cert.min_neg_vdot << " at z = (";
        for (std::size_t i = 0; i < cert.worst_state.size(); ++i)
            os << (i ? ", " : "") << cert.worst_state[i];
        os << "); these gains do not admit a positive decrease rate c for this "
              "Lyapunov function";
        throw AnalysisError(os.str());
    }
    const double m = measure_v1_degree(chain);
    return {cert.min_neg_vdot, (m + chain.kappa) / m, m};
}

C1Estimate estimate_c1(const ChainConfig& chain, double k, double gamma_m,
                       double phi_bar_cap, int n, std::uint64_t seed) {
    if (!(k > 0.0) || !(gamma_m > 0.0) || !(phi_bar_cap > 0.0))
        throw ConfigError("k, gamma_m and phi_bar_cap must be positive");
    const double m = measure_v1_degree(chain);
    const double q = (m - chain.weights[chain.r - 1]) / m;
    if (!(q >= 0.0 && q < 1.0)) {
        std::ostringstream os;
        os << "growth exponent q = " << q
           << " outside [0,1): the no-blow-up comparison does not apply";
        throw AnalysisError(os.str());
    }
    double best = 0.0;
    for (const auto& z : sample_level_set(1.0, chain, n, seed))
        best = std::max(best, k * gamma_m * phi_bar_cap * std::fabs(lyapunov_v1_partial_r(z, chain)));
    return {best, q};
}

double bound_T_z0(double v1_z0, const BoundsReport& report) {
    if (!report.certificate_ok || !report.c_est || !report.alpha_val || !report.C1_est ||
        !report.q_exponent)
        throw AnalysisError(
            "convergence-time bound requires certified constants (c, alpha, C1, q)");
    const double c = *report.c_est, alpha = *report.alpha_val;
    const double c1 = *report.C1_est, q = *report.q_exponent;
    const double phi = report.phi_bar_cap;
    if (v1_z0 < 0.0) throw ConfigError("V1(z0) must be nonnegative");
    const double inner = std::pow(v1_z0, 1.0 - q) + (1.0 - q) * c1 * phi;
    return phi + std::pow(inner, (1.0 - alpha) / (1.0 - q)) / (c * (1.0 - alpha));
}

double bound_T_z0(const StateVector& z0, const BoundsReport& report, const ChainConfig& chain) {
    return bound_T_z0(lyapunov_v1(z0, chain), report);
}

SlopeMonitor monitor_decrease_above(const Trajectory& traj, double level, double t_min) {
    SlopeMonitor mon;
    mon.worst_slope = -kInf;
    for (std::size_t k = 1; k < traj.times.size(); ++k) {
        if (traj.times[k] <= t_min || traj.lyapunov[k] < level) continue;
        ++mon.checked;
        const double slope =
            (traj.lyapunov[k] - traj.lyapunov[k - 1]) / (traj.times[k] - traj.times[k - 1]);
        mon.worst_slope = std::max(mon.worst_slope, slope);
        if (slope >= 0.0) ++mon.violations;
    }
    return mon;
}

double discretization_band(const Trajectory& traj) {
    if (traj.times.size() < 2) return 0.0;
    double max_slope = 0.0;
    for (std::size_t k = 1; k < traj.times.size(); ++k) {
        const double dt = traj.times[k] - traj.times[k - 1];
        max_slope = std::max(max_slope, std::fabs(traj.lyapunov[k] - traj.lyapunov[k - 1]) / dt);
    }
    const double dt0 = traj.times[1] - traj.times[0];
    return 10.0 * dt0 * max_slope;
}

bool VerificationReport::all_pass() const {
    for (const auto& p : properties)
        if (!p.pass) return false;
    return true;
}

VerificationReport verify_chain(const ChainConfig& chain, int n, std::uint64_t seed) {
    if (n < 10) throw ConfigError("verification needs at least 10 samples");
    VerificationReport report;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    const auto degree = measure_v1_degree_detail(chain);
    const double m = degree.mean;
    const double u0_degree = chain.p + chain.r * chain.kappa;

    {  // dilation group law
        PropertyResult pr{"dilation_group_law", true, 0.0, 1e-12, ""};
        for (int k = 0; k < n; ++k) {
            const StateVector z = random_direction(rng, nd, chain.r);
            const double l1 = log_uniform(rng, ud, 1e-2, 1e2);
            const double l2 = log_uniform(rng, ud, 1e-2, 1e2);
            const auto a = apply_dilation(apply_dilation(z, l1, chain), l2, chain);
            const auto b = apply_dilation(z, l1 * l2, chain);
            for (int i = 0; i < chain.r; ++i) pr.worst = std::max(pr.worst, rel_err(a[i], b[i]));
        }
        pr.pass = pr.worst <= pr.tolerance;
        report.properties.push_back(std::move(pr));
    }

    {  // u0 homogeneity of degree p + r*kappa
        PropertyResult pr{"u0_homogeneity", true, 0.0, 1e-9, ""};
        int skipped = 0;
        for (int k = 0; k < n; ++k) {
            const StateVector z = random_direction(rng, nd, chain.r);
            const double lam = log_uniform(rng, ud, 1e-2, 1e2);
            if (recursion_condition(z, chain) < 1e-6) { ++skipped; continue; }
            const double lhs = hong_u0(apply_dilation(z, lam, chain), chain);
            const double rhs = std::pow(lam, u0_degree) * hong_u0(z, chain);
            pr.worst = std::max(pr.worst, rel_err(lhs, rhs));
        }
        std::ostringstream os;
        os << "degree " << u0_degree << "; skipped " << skipped
           << " cancellation-dominated samples";
        pr.detail = os.str();
        pr.pass = pr.worst <= pr.tolerance;
        report.properties.push_back(std::move(pr));
    }

    {  // V1 homogeneity at the measured degree
        PropertyResult pr{"v1_homogeneity", true, 0.0, 1e-9, ""};
        for (int k = 0; k < n; ++k) {
            const StateVector z = random_direction(rng, nd, chain.r);
            const double lam = log_uniform(rng, ud, 1e-2, 1e2);
            const double lhs = lyapunov_v1(apply_dilation(z, lam, chain), chain);
            const double rhs = std::pow(lam, m) * lyapunov_v1(z, chain);
            pr.worst = std::max(pr.worst, rel_err(lhs, rhs));
        }
        std::ostringstream os;
        if (degree.consistent()) {
            os << "measured degree m = " << m;
        } else {
            os << "degree measurements disagree: [" << degree.lo << ", " << degree.hi << "]";
            pr.worst = std::max(pr.worst, degree.hi - degree.lo);
        }
        pr.detail = os.str();
        pr.pass = pr.worst <= pr.tolerance && degree.consistent();
        report.properties.push_back(std::move(pr));
    }

    {  // positive definiteness
        PropertyResult pr{"v1_positive_definite", true, 0.0, 0.0, ""};
        const StateVector origin(chain.r, 0.0);
        bool ok = lyapunov_v1(origin, chain) == 0.0;
        double min_v1 = kInf;
        for (int k = 0; k < n; ++k) {
            const double v1 = lyapunov_v1(random_direction(rng, nd, chain.r), chain);
            min_v1 = std::min(min_v1, v1);
            ok = ok && v1 > 0.0;
        }
        pr.pass = ok;
        pr.worst = min_v1;
        pr.detail = "V1(0) = 0 exactly; worst field reports the smallest sampled V1";
        report.properties.push_back(std::move(pr));
    }

    {  // sign condition sgn(u0) dV1/dz_r <= 0, with continuity check near u0 = 0
        PropertyResult pr{"sign_condition", true, 0.0, 1e-12, ""};
        for (int k = 0; k < n; ++k) {
            const StateVector z = random_direction(rng, nd, chain.r);
            const double u0 = hong_u0(z, chain);
            const double s = u0 > 0.0 ? 1.0 : (u0 < 0.0 ? -1.0 : 0.0);
            pr.worst = std::max(pr.worst, s * lyapunov_v1_partial_r(z, chain));
        }
        // states constructed on the switching surface z_r = v_{r-1}
        bool continuity_ok = true;
        for (int k = 0; k < n / 10 + 1; ++k) {
            StateVector z = random_direction(rng, nd, chain.r);
            const auto v = hong_v_sequence(z, chain);
            z[chain.r - 1] = v[chain.r - 1] * (1.0 + 1e-12);
            if (std::fabs(hong_u0(z, chain)) < 1e-10 && std::fabs(z[chain.r - 1]) > 1e-6)
                continuity_ok = continuity_ok && std::fabs(lyapunov_v1_partial_r(z, chain)) < 1e-6;
        }
        pr.pass = pr.worst <= pr.tolerance && continuity_ok;
        pr.detail = continuity_ok ? "near-switching continuity holds"
                                  : "near-switching continuity violated";
        report.properties.push_back(std::move(pr));
    }

    {  // closed-form V1 vs adaptive quadrature
        PropertyResult pr{"v1_closed_form_vs_quadrature", true, 0.0, 1e-8, ""};
        const int nq = std::min(n, 1000);
        for (int k = 0; k < nq; ++k) {
            const StateVector z = random_direction(rng, nd, chain.r);
            pr.worst = std::max(pr.worst,
                                rel_err(lyapunov_v1(z, chain), lyapunov_v1_quadrature(z, chain)));
        }
        pr.pass = pr.worst <= pr.tolerance;
        report.properties.push_back(std::move(pr));
    }

    {  // analytic dV1/dz_r vs central differences
        PropertyResult pr{"partial_r_analytic_vs_fd", true, 0.0, 1e-5, ""};
        const double h = 1e-6;
        const double beta_last = chain.betas[chain.r - 1];
        int skipped = 0;
        for (int k = 0; k < n; ++k) {
            const StateVector z = random_direction(rng, nd, chain.r);
            if (beta_last < 1.0 && std::fabs(z[chain.r - 1]) < 1e-3) { ++skipped; continue; }
            const double analytic = lyapunov_v1_partial_r(z, chain);
            if (std::fabs(analytic) < 1e-4) { ++skipped; continue; }  // below FD noise floor
            const double fd = lyapunov_v1_gradient_fd(z, chain, h)[chain.r - 1];
            pr.worst = std::max(pr.worst, rel_err(analytic, fd));
        }
        std::ostringstream os;
        os << "skipped " << skipped << " samples near the non-smooth/ill-conditioned set";
        pr.detail = os.str();
        pr.pass = pr.worst <= pr.tolerance;
        report.properties.push_back(std::move(pr));
    }

    {  // sampled decrease certificate on {V1 = 1}
        PropertyResult pr{"decrease_certificate", true, 0.0, 0.0, ""};
        try {
            const auto cert = decrease_certificate(chain, n, seed + 1);
            pr.pass = cert.ok();
            pr.worst = -cert.min_neg_vdot;  // max sampled V1dot
            std::ostringstream os;
            os << cert.nonneg_count << "/" << cert.sample_count
               << " samples with V1dot >= 0; sampled min -V1dot = " << cert.min_neg_vdot;
            pr.detail = os.str();
        } catch (const AnalysisError& e) {
            pr.pass = false;
            pr.detail = e.what();
        }
        report.properties.push_back(std::move(pr));
    }

    {  // nominal finite-time decrease along trajectories
        PropertyResult pr{"nominal_decrease", true, 0.0, 1e-9, ""};
        SimulationSpec spec;
        spec.stabilizer = StabilizerKind::hong;
        spec.chain = chain;
        spec.adaptive = make_adaptive_config(1.0, 1.0, GainSpec{GainFamily::logarithmic});
        spec.uncertainty = nominal_uncertainty();
        spec.dt = 1e-4;
        spec.t_final = 25.0;
        spec.method = Integrator::rk4;
        spec.law = ControlLaw::stabilizer_only;
        try {
            double final_v1_worst = 0.0;
            const auto starts = sample_level_set(1.0, chain, 3, seed + 2);
            for (const auto& z0 : starts) {
                spec.z0 = z0;
                const auto traj = simulate(spec);
                for (std::size_t k = 1; k < traj.lyapunov.size(); ++k)
                    pr.worst = std::max(pr.worst, traj.lyapunov[k] - traj.lyapunov[k - 1]);
                final_v1_worst = std::max(final_v1_worst, traj.lyapunov.back());
            }
            pr.pass = pr.worst <= pr.tolerance && final_v1_worst < 1e-6;
            std::ostringstream os;
            os << "3 starts on {V1 = 1}, rk4 dt = 1e-4 to t = 25; worst per-step increase = "
               << pr.worst << ", worst final V1 = " << final_v1_worst;
            pr.detail = os.str();
        } catch (const AnalysisError& e) {
            pr.pass = false;
            pr.detail = e.what();
        } catch (const SimulationError& e) {
            pr.pass = false;
            pr.detail = std::string("nominal simulation aborted: ") + e.what();
        }
        report.properties.push_back(std::move(pr));
    }

    return report;
}

VerificationReport verify_first_order(int n, std::uint64_t seed) {
    VerificationReport report;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;

    {  // sign condition: sgn(u0) dV1/dz1 = -1 for z1 != 0
        PropertyResult pr{"sign_condition", true, 0.0, 0.0, "analytic: product is -1 off the origin"};
        for (int k = 0; k < n; ++k) {
            double z1 = nd(rng);
            if (z1 == 0.0) continue;
            const double u0 = -(z1 > 0.0 ? 1.0 : -1.0);
            const double d = z1 > 0.0 ? 1.0 : -1.0;  // d|z1|/dz1
            pr.worst = std::max(pr.worst, (u0 > 0.0 ? 1.0 : -1.0) * d);
        }
        pr.pass = pr.worst <= 0.0;
        report.properties.push_back(std::move(pr));
    }

    {  // positive definiteness of |z1|
        PropertyResult pr{"v1_positive_definite", true, 0.0, 0.0, "V1 = |z1|"};
        double min_v1 = kInf;
        bool ok = true;
        for (int k = 0; k < n; ++k) {
            double z1 = nd(rng);
            if (z1 == 0.0) continue;
            min_v1 = std::min(min_v1, std::fabs(z1));
            ok = ok && std::fabs(z1) > 0.0;
        }
        pr.pass = ok;
        pr.worst = min_v1;
        report.properties.push_back(std::move(pr));
    }

    {  // |u0| = 1 off the origin (bounded stabilizer), homogeneity degree 0
        PropertyResult pr{"u0_bounded_unit", true, 0.0, 0.0, "|u0| = 1 for z1 != 0; u0(0) = 0"};
        for (int k = 0; k < n; ++k) {
            double z1 = nd(rng);
            if (z1 == 0.0) continue;
            pr.worst = std::max(pr.worst, std::fabs(std::fabs(-(z1 > 0 ? 1.0 : -1.0)) - 1.0));
        }
        pr.pass = pr.worst == 0.0;
        report.properties.push_back(std::move(pr));
    }

    {  // nominal decrease: z1' = -sgn(z1), V1' = -1 off the origin. The Euler
       // chattering band of the discontinuous sign field is +-dt, so the
       // per-step tolerance is dt and dt is chosen below the 1e-6 target.
        const double dt = 1e-7;
        PropertyResult pr{"nominal_decrease", true, 0.0, dt * (1.0 + 1e-9), ""};
        SimulationSpec spec;
        spec.stabilizer = StabilizerKind::first_order_sign;
        spec.adaptive = make_adaptive_config(1.0, 1.0, GainSpec{GainFamily::constant, 1.0}, true);
        spec.uncertainty = nominal_uncertainty();
        spec.z0 = {0.01};
        spec.dt = dt;
        spec.t_final = 0.02;
        spec.method = Integrator::euler;
        spec.law = ControlLaw::stabilizer_only;
        const auto traj = simulate(spec);
        for (std::size_t k = 1; k < traj.lyapunov.size(); ++k)
            pr.worst = std::max(pr.worst, traj.lyapunov[k] - traj.lyapunov[k - 1]);
        const double residual = residual_band(traj, spec.z0[0] + 2 * dt);
        pr.pass = pr.worst <= pr.tolerance && residual < 1e-6;
        std::ostringstream os;
        os << "per-step tolerance = dt (Euler band of the sign field); residual after t = |z0| is "
           << residual;
        pr.detail = os.str();
        report.properties.push_back(std::move(pr));
    }

    return report;
}

}  // namespace ahosm
