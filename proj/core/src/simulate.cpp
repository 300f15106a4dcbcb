#include "ahosm/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "ahosm/errors.hpp"

namespace ahosm {

namespace {

double sgn_select(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

bool all_finite(const StateVector& z) {
    for (double x : z)
        if (!std::isfinite(x)) return false;
    return true;
}

double max_abs(const StateVector& z) {
    double m = 0.0;
    for (double x : z) m = std::max(m, std::fabs(x));
    return m;
}

void validate(const SimulationSpec& spec) {
    if (!(spec.dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(spec.t_final > spec.dt)) throw ConfigError("t_final must exceed dt");
    if (spec.record_stride < 1) throw ConfigError("record_stride must be >= 1");
    if (spec.z0.empty()) throw ConfigError("initial state must be nonempty");
    if (!all_finite(spec.z0)) throw ConfigError("initial state must be finite");
    if (spec.stabilizer == StabilizerKind::hong) {
        if (static_cast<int>(spec.z0.size()) != spec.chain.r)
            throw ConfigError("initial state dimension must equal chain order r");
    } else if (spec.z0.size() != 1) {
        throw ConfigError("first-order sign controller requires a scalar state");
    }
}

}  // namespace

double stabilizer_u0(const SimulationSpec& spec, const StateVector& z) {
    if (spec.stabilizer == StabilizerKind::hong) return hong_u0(z, spec.chain);
    return -sgn_select(z[0]);
}

double stabilizer_v1(const SimulationSpec& spec, const StateVector& z) {
    if (spec.stabilizer == StabilizerKind::hong) return lyapunov_v1(z, spec.chain);
    return std::fabs(z[0]);
}

Trajectory simulate(const SimulationSpec& spec) {
    validate(spec);
    const int r = static_cast<int>(spec.z0.size());
    const long nsteps = std::llround(spec.t_final / spec.dt);
    if (nsteps < 1) throw ConfigError("horizon shorter than one step");

    Trajectory traj;
    traj.order = r;
    const long approx = nsteps / spec.record_stride + 2;
    traj.times.reserve(approx);
    traj.states.reserve(approx);
    traj.controls.reserve(approx);
    traj.adaptive_gains.reserve(approx);
    traj.lyapunov.reserve(approx);

    StateVector z = spec.z0;
    StateVector stage(r), acc(r);

    for (long k = 0; k <= nsteps; ++k) {
        const double t = k * spec.dt;

        if (!all_finite(z)) {
            std::ostringstream os;
            os << "non-finite state at t = " << t;
            throw SimulationError(os.str(), t, z);
        }
        if (max_abs(z) > spec.blowup_guard) {
            std::ostringstream os;
            os << "state norm exceeded blow-up guard " << spec.blowup_guard << " at t = " << t;
            throw SimulationError(os.str(), t, z);
        }

        const double v1 = stabilizer_v1(spec, z);
        const double ph = phi_hat(t, v1, spec.adaptive);
        const double u0 = stabilizer_u0(spec, z);
        const double u = spec.law == ControlLaw::stabilizer_only
                             ? u0
                             : gain_g(std::fabs(u0), spec.adaptive.g) * u0 +
                                   spec.adaptive.k * sgn_select(u0) * ph;

        if (k % spec.record_stride == 0 || k == nsteps) {
            traj.times.push_back(t);
            traj.states.push_back(z);
            traj.controls.push_back(u);
            traj.adaptive_gains.push_back(ph);
            traj.lyapunov.push_back(v1);
        }
        if (k == nsteps) break;

        // drift f(t, z) with u held: f_i = z_{i+1}, f_r = phi(t) + gamma(t) u
        auto drift = [&](double tau, const StateVector& s, StateVector& out) {
            for (int i = 0; i + 1 < r; ++i) out[i] = s[i + 1];
            out[r - 1] = eval_phi(spec.uncertainty, tau) + eval_gamma(spec.uncertainty, tau) * u;
        };

        if (spec.method == Integrator::euler) {
            drift(t, z, acc);
            for (int i = 0; i < r; ++i) z[i] += spec.dt * acc[i];
        } else {
            const double h = spec.dt;
            StateVector k1(r), k2(r), k3(r), k4(r);
            drift(t, z, k1);
            for (int i = 0; i < r; ++i) stage[i] = z[i] + 0.5 * h * k1[i];
            drift(t + 0.5 * h, stage, k2);
            for (int i = 0; i < r; ++i) stage[i] = z[i] + 0.5 * h * k2[i];
            drift(t + 0.5 * h, stage, k3);
            for (int i = 0; i < r; ++i) stage[i] = z[i] + h * k3[i];
            drift(t + h, stage, k4);
            for (int i = 0; i < r; ++i)
                z[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    return traj;
}

std::optional<double> enter_and_stay_time(const Trajectory& traj, double threshold,
                                          double band) {
    if (!(threshold > 0.0)) throw ConfigError("threshold must be positive");
    if (band < 0.0) throw ConfigError("band must be nonnegative");
    const double level = threshold + band;
    long last_violation = -1;
    for (long k = 0; k < static_cast<long>(traj.lyapunov.size()); ++k)
        if (traj.lyapunov[k] > level) last_violation = k;
    const long first_ok = last_violation + 1;
    if (first_ok >= static_cast<long>(traj.times.size())) return std::nullopt;
    return traj.times[first_ok];
}

double residual_band(const Trajectory& traj, double after) {
    if (traj.times.empty()) throw ConfigError("empty trajectory");
    if (!(after < traj.times.back()))
        throw ConfigError("'after' must precede the final recorded time");
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        if (traj.times[k] >= after) worst = std::max(worst, traj.lyapunov[k]);
    return worst;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, bool with_llv1) {
    os << "t";
    for (int i = 1; i <= traj.order; ++i) os << ",z" << i;
    os << ",u,phi_hat,V1";
    if (with_llv1) os << ",LLV1";
    os << "\n";

    char buf[32];
    auto put = [&](double x, char sep) {
        std::snprintf(buf, sizeof buf, "%.12g", x);
        os << buf << sep;
    };
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        put(traj.times[k], ',');
        for (int i = 0; i < traj.order; ++i) put(traj.states[k][i], ',');
        put(traj.controls[k], ',');
        put(traj.adaptive_gains[k], ',');
        if (with_llv1) {
            put(traj.lyapunov[k], ',');
            put(std::log1p(traj.lyapunov[k]), '\n');
        } else {
            put(traj.lyapunov[k], '\n');
        }
    }
}

}  // namespace ahosm
