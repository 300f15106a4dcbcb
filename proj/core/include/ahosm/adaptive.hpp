#pragma once

#include <string>

#include "ahosm/chain.hpp"

namespace ahosm {

/// Gain function family for g(|u0|). constant: g = a (valid only with a
/// bounded stabilizer); logarithmic: g(x) = 1 + ln(1+x); affine: g(x) = a + b x.
enum class GainFamily { constant, logarithmic, affine };

struct GainSpec {
    GainFamily family = GainFamily::logarithmic;
    double a = 1.0;
    double b = 0.0;
};

/// Target neighborhood level epsilon (on V1), adaptive multiplier k, and the
/// gain function. Construct through make_adaptive_config.
struct AdaptiveConfig {
    double epsilon = 0.0;
    double k = 0.0;
    GainSpec g;
};

/// Validates epsilon > 0, k > 0 and that g is admissible: increasing, positive,
/// and unbounded unless the stabilizer is declared bounded (first-order sign
/// controller). Throws ConfigError.
AdaptiveConfig make_adaptive_config(double epsilon, double k, GainSpec g,
                                    bool u0_bounded = false);

/// Barrier function F_eps(x) = eps/(eps - x) on [0, eps). Throws ConfigError
/// outside the domain (callers must branch on x >= eps first).
double f_eps(double x, double epsilon);

/// Adaptive gain: min(t, F_eps(x)) for x < eps, t for x >= eps. Continuous in (t, x).
double phi_hat(double t, double x, const AdaptiveConfig& cfg);

/// Evaluates the configured gain function at x >= 0.
double gain_g(double x, const GainSpec& g);

/// Full adaptive control law for Hong's stabilizer:
/// u = g(|u0|) u0 + k sgn(u0) phi_hat(t, V1(z)), with the sgn(0) = 0 selection.
double control_u(const StateVector& z, double t, const ChainConfig& chain,
                 const AdaptiveConfig& adap);

/// First-order special case (bounded u0 = -sgn(z1), V1 = |z1|, g = 1, k = 1):
/// u = -(1 + phi_hat(t, |z1|)) sgn(z1).
double first_order_controller(double z1, double t, const AdaptiveConfig& adap);

std::string to_string(const GainSpec& g);

}  // namespace ahosm
