#include <doctest.h>

#include <cmath>

#include "ahosm/errors.hpp"
#include "ahosm/scenario.hpp"
#include "ahosm/uncertainty.hpp"

using namespace ahosm;

namespace {
UncertaintyModel order1_model() {
    return builtin_scenario("paper-order1").uncertainty;
}
}  // namespace

TEST_CASE("demo scenario signals at reference times") {
    const auto m = order1_model();
    // phi(0) = 5 sgn(cos 0) - 10 sin 0 = 5
    CHECK(eval_phi(m, 0.0) == 5.0);
    // gamma(0) = 3 + 2 sgn(sin 0) = 3 with the sgn(0) = 0 selection
    CHECK(eval_gamma(m, 0.0) == 3.0);
    // gamma(0.1) = 3 + 2 sgn(sin 0.3) = 5
    CHECK(eval_gamma(m, 0.1) == 5.0);
    CHECK(m.phi_bar == 15.0);
    CHECK(m.gamma_min == 1.0);
    CHECK(m.gamma_max == 5.0);
}

TEST_CASE("constant signals") {
    SignalSpec zero;  // empty sum
    CHECK(eval_signal(zero, 3.7) == 0.0);
    SignalSpec one;
    one.terms.push_back({TermKind::constant, 1.0, 0.0});
    const auto m = make_uncertainty_model(zero, one, 1.0, 1.0, 1.0);
    for (double t : {0.0, 0.5, 42.0}) {
        CHECK(eval_phi(m, t) == 0.0);
        CHECK(eval_gamma(m, t) == 1.0);
    }
}

TEST_CASE("sgn terms use the zero selection at exact zeros") {
    SignalSpec s;
    s.terms.push_back({TermKind::sgn_sine, 2.0, 3.0});
    CHECK(eval_signal(s, 0.0) == 0.0);  // sin(0) = 0 exactly
    SignalSpec c;
    c.terms.push_back({TermKind::sgn_cosine, 5.0, 1.0});
    CHECK(eval_signal(c, 0.0) == 5.0);  // cos(0) = 1
}

TEST_CASE("declared bounds hold for the paper-order1 signals over [0, 100]") {
    const auto m = order1_model();
    double phi_max = 0.0, gam_min = 1e300, gam_max = -1e300;
    const long n = 1000000;
    for (long i = 0; i <= n; ++i) {
        const double t = 100.0 * i / n;
        phi_max = std::max(phi_max, std::fabs(eval_phi(m, t)));
        const double g = eval_gamma(m, t);
        gam_min = std::min(gam_min, g);
        gam_max = std::max(gam_max, g);
    }
    CHECK(phi_max <= m.phi_bar);
    CHECK(gam_min >= m.gamma_min);
    CHECK(gam_max <= m.gamma_max);
}

TEST_CASE("mis-declared bounds are detected at evaluation") {
    SignalSpec phi;
    phi.terms.push_back({TermKind::constant, 5.0, 0.0});
    SignalSpec gamma;
    gamma.terms.push_back({TermKind::constant, 3.0, 0.0});
    const auto bad_phi = make_uncertainty_model(phi, gamma, 4.0, 1.0, 5.0);
    CHECK_THROWS_AS(eval_phi(bad_phi, 1.0), ConfigError);
    const auto bad_gamma = make_uncertainty_model(phi, gamma, 15.0, 1.0, 2.0);
    CHECK_THROWS_AS(eval_gamma(bad_gamma, 1.0), ConfigError);
}

TEST_CASE("model validation") {
    SignalSpec s;
    s.terms.push_back({TermKind::constant, 1.0, 0.0});
    CHECK_THROWS_AS(make_uncertainty_model(s, s, 0.0, 1.0, 5.0), ConfigError);
    CHECK_THROWS_AS(make_uncertainty_model(s, s, 1.0, 0.0, 5.0), ConfigError);
    CHECK_THROWS_AS(make_uncertainty_model(s, s, 1.0, 5.0, 1.0), ConfigError);
}
