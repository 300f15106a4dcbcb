#pragma once

#include <string>
#include <vector>

namespace ahosm {

/// One additive term of a time signal: c, a*sin(w t), a*sgn(sin(w t)),
/// or a*sgn(cos(w t)). sgn(0) evaluates to 0 (measure-zero times).
enum class TermKind { constant, sine, sgn_sine, sgn_cosine };

struct SignalTerm {
    TermKind kind = TermKind::constant;
    double amplitude = 0.0;
    double omega = 0.0;  // unused for constant
};

struct SignalSpec {
    std::vector<SignalTerm> terms;
};

double eval_signal(const SignalSpec& s, double t);

/// Matched-uncertainty model: drift phi(t) and input gain gamma(t) with
/// declared bounds |phi| <= phi_bar, 0 < gamma_min <= gamma <= gamma_max.
/// The bounds are analysis metadata only; the controller never reads them.
struct UncertaintyModel {
    SignalSpec phi;
    SignalSpec gamma;
    double phi_bar = 0.0;
    double gamma_min = 0.0;
    double gamma_max = 0.0;
};

/// Validates the declared bounds (positivity, ordering). Throws ConfigError.
UncertaintyModel make_uncertainty_model(SignalSpec phi, SignalSpec gamma, double phi_bar,
                                        double gamma_min, double gamma_max);

/// Evaluates phi(t) and asserts |phi(t)| <= phi_bar; a violation means the
/// declared metadata is wrong and throws ConfigError.
double eval_phi(const UncertaintyModel& m, double t);

/// Evaluates gamma(t) and asserts gamma_min <= gamma(t) <= gamma_max.
double eval_gamma(const UncertaintyModel& m, double t);

std::string to_string(const SignalSpec& s);

}  // namespace ahosm
