#pragma once

#include <iosfwd>
#include <optional>

#include "ahosm/adaptive.hpp"
#include "ahosm/chain.hpp"
#include "ahosm/uncertainty.hpp"

namespace ahosm {

/// Which (u0, V1) pair drives the loop: Hong's homogeneous stabilizer, or the
/// bounded first-order pair u0 = -sgn(z1), V1 = |z1|.
enum class StabilizerKind { hong, first_order_sign };

enum class Integrator { euler, rk4 };

/// adaptive: u = g(|u0|) u0 + k sgn(u0) phi_hat; stabilizer_only: u = u0
/// (nominal runs, no adaptation).
enum class ControlLaw { adaptive, stabilizer_only };

struct SimulationSpec {
    StabilizerKind stabilizer = StabilizerKind::hong;
    ChainConfig chain;  // used when stabilizer == hong
    AdaptiveConfig adaptive;
    UncertaintyModel uncertainty;
    StateVector z0;
    double dt = 1e-4;
    double t_final = 0.0;
    Integrator method = Integrator::euler;
    int record_stride = 1;
    ControlLaw law = ControlLaw::adaptive;
    double blowup_guard = 1e12;  // abort when max|z_i| exceeds this
};

/// Time-stamped closed-loop records. All vectors share one length; times are
/// strictly increasing; lyapunov entries are nonnegative.
struct Trajectory {
    int order = 0;
    std::vector<double> times;
    std::vector<StateVector> states;
    std::vector<double> controls;        // u held over [t_k, t_k + dt)
    std::vector<double> adaptive_gains;  // phi_hat(t_k, V1(z_k))
    std::vector<double> lyapunov;        // V1(z_k)
};

/// u0 and V1 for the configured stabilizer at state z.
double stabilizer_u0(const SimulationSpec& spec, const StateVector& z);
double stabilizer_v1(const SimulationSpec& spec, const StateVector& z);

/// Fixed-step integration of z' = J_r z + (phi(t) + gamma(t) u) e_r from t = 0
/// to t_final, control sampled-and-held at each step's left endpoint. Records
/// every record_stride-th step plus the final state. Throws SimulationError on
/// blow-up or non-finite state, ConfigError on invalid spec.
Trajectory simulate(const SimulationSpec& spec);

/// Smallest recorded time T with V1(z(t)) <= threshold + band for every
/// recorded t >= T; nullopt when no such time exists before t_final.
std::optional<double> enter_and_stay_time(const Trajectory& traj, double threshold,
                                          double band = 0.0);

/// Max of V1 over recorded samples with t >= after. Requires after < final time.
double residual_band(const Trajectory& traj, double after);

/// CSV export: header t,z1..zr,u,phi_hat,V1 (plus LLV1 = log(1+V1) when
/// requested), one row per recorded sample, 12 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, bool with_llv1 = false);

}  // namespace ahosm
