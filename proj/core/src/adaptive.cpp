#include "ahosm/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ahosm/errors.hpp"

namespace ahosm {

namespace {
double sgn_select(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
}  // namespace

AdaptiveConfig make_adaptive_config(double epsilon, double k, GainSpec g, bool u0_bounded) {
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (!(k > 0.0)) throw ConfigError("adaptive multiplier k must be positive");
    switch (g.family) {
        case GainFamily::constant:
            if (!(g.a > 0.0)) throw ConfigError("constant gain requires c0 > 0");
            if (!u0_bounded)
                throw ConfigError(
                    "constant gain function is bounded; admissible only when the "
                    "stabilizer u0 is bounded (first-order sign controller)");
            break;
        case GainFamily::logarithmic:
            break;
        case GainFamily::affine:
            if (!(g.a > 0.0)) throw ConfigError("affine gain requires a > 0");
            if (g.b < 0.0) throw ConfigError("affine gain requires b >= 0");
            if (g.b == 0.0 && !u0_bounded)
                throw ConfigError(
                    "affine gain with b = 0 is bounded; admissible only when the "
                    "stabilizer u0 is bounded");
            break;
    }
    return AdaptiveConfig{epsilon, k, g};
}

double f_eps(double x, double epsilon) {
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (x < 0.0) throw ConfigError("F_eps argument must be nonnegative");
    if (x >= epsilon)
        throw ConfigError("F_eps argument must be below epsilon; branch on x >= epsilon first");
    return epsilon / (epsilon - x);
}

double phi_hat(double t, double x, const AdaptiveConfig& cfg) {
    if (x >= cfg.epsilon) return t;
    return std::min(t, f_eps(x, cfg.epsilon));
}

double gain_g(double x, const GainSpec& g) {
    switch (g.family) {
        case GainFamily::constant: return g.a;
        case GainFamily::logarithmic: return 1.0 + std::log1p(x);
        case GainFamily::affine: return g.a + g.b * x;
    }
    return 1.0;
}

double control_u(const StateVector& z, double t, const ChainConfig& chain,
                 const AdaptiveConfig& adap) {
    const double u0 = hong_u0(z, chain);
    const double v1 = lyapunov_v1(z, chain);
    return gain_g(std::fabs(u0), adap.g) * u0 +
           adap.k * sgn_select(u0) * phi_hat(t, v1, adap);
}

double first_order_controller(double z1, double t, const AdaptiveConfig& adap) {
    return -(1.0 + phi_hat(t, std::fabs(z1), adap)) * sgn_select(z1);
}

std::string to_string(const GainSpec& g) {
    std::ostringstream os;
    switch (g.family) {
        case GainFamily::constant: os << "const(" << g.a << ")"; break;
        case GainFamily::logarithmic: os << "log"; break;
        case GainFamily::affine: os << "affine(" << g.a << ", " << g.b << ")"; break;
    }
    return os.str();
}

}  // namespace ahosm
