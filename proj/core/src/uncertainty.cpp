#include "ahosm/uncertainty.hpp"

#include <cmath>
#include <sstream>

#include "ahosm/errors.hpp"

namespace ahosm {

namespace {
double sgn_select(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }
}  // namespace

double eval_signal(const SignalSpec& s, double t) {
    double total = 0.0;
    for (const auto& term : s.terms) {
        switch (term.kind) {
            case TermKind::constant: total += term.amplitude; break;
            case TermKind::sine: total += term.amplitude * std::sin(term.omega * t); break;
            case TermKind::sgn_sine:
                total += term.amplitude * sgn_select(std::sin(term.omega * t));
                break;
            case TermKind::sgn_cosine:
                total += term.amplitude * sgn_select(std::cos(term.omega * t));
                break;
        }
    }
    return total;
}

UncertaintyModel make_uncertainty_model(SignalSpec phi, SignalSpec gamma, double phi_bar,
                                        double gamma_min, double gamma_max) {
    if (!(phi_bar > 0.0)) throw ConfigError("declared bound phi_bar must be positive");
    if (!(gamma_min > 0.0)) throw ConfigError("declared bound gamma_min must be positive");
    if (!(gamma_min <= gamma_max))
        throw ConfigError("declared bounds must satisfy gamma_min <= gamma_max");
    return UncertaintyModel{std::move(phi), std::move(gamma), phi_bar, gamma_min, gamma_max};
}

double eval_phi(const UncertaintyModel& m, double t) {
    const double value = eval_signal(m.phi, t);
    if (!(std::fabs(value) <= m.phi_bar)) {
        std::ostringstream os;
        os << "phi(" << t << ") = " << value << " violates declared bound |phi| <= "
           << m.phi_bar << " (mis-declared uncertainty metadata)";
        throw ConfigError(os.str());
    }
    return value;
}

double eval_gamma(const UncertaintyModel& m, double t) {
    const double value = eval_signal(m.gamma, t);
    if (!(value >= m.gamma_min && value <= m.gamma_max)) {
        std::ostringstream os;
        os << "gamma(" << t << ") = " << value << " violates declared bounds ["
           << m.gamma_min << ", " << m.gamma_max << "] (mis-declared uncertainty metadata)";
        throw ConfigError(os.str());
    }
    return value;
}

std::string to_string(const SignalSpec& s) {
    if (s.terms.empty()) return "const(0)";
    std::ostringstream os;
    bool first = true;
    for (const auto& term : s.terms) {
        if (!first) os << " + ";
        first = false;
        os.precision(17);
        switch (term.kind) {
            case TermKind::constant: os << "const(" << term.amplitude << ")"; break;
            case TermKind::sine: os << "sin(" << term.amplitude << ", " << term.omega << ")"; break;
            case TermKind::sgn_sine:
                os << "sgn_sin(" << term.amplitude << ", " << term.omega << ")";
                break;
            case TermKind::sgn_cosine:
                os << "sgn_cos(" << term.amplitude << ", " << term.omega << ")";
                break;
        }
    }
    return os.str();
}

}  // namespace ahosm
