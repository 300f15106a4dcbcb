#include <doctest.h>

#include <cmath>

#include "ahosm/adaptive.hpp"
#include "ahosm/errors.hpp"
#include "oracles.hpp"

using namespace ahosm;
using oracles::rel_err;

namespace {
AdaptiveConfig first_order_adaptive(double epsilon) {
    return make_adaptive_config(epsilon, 1.0, GainSpec{GainFamily::constant, 1.0}, true);
}
}  // namespace

TEST_CASE("f_eps barrier values and domain") {
    CHECK(f_eps(0.0, 0.1) == 1.0);
    CHECK(f_eps(0.05, 0.1) == doctest::Approx(2.0).epsilon(1e-14));
    // F(v1_bar) equals phi_bar_cap: v1_bar = 0.1 (1 - 1/15)
    const double v1_bar = 0.1 * (1.0 - 1.0 / 15.0);
    CHECK(f_eps(v1_bar, 0.1) == doctest::Approx(15.0).epsilon(1e-12));
    CHECK_THROWS_AS(f_eps(0.1, 0.1), ConfigError);
    CHECK_THROWS_AS(f_eps(0.2, 0.1), ConfigError);
    CHECK_THROWS_AS(f_eps(-0.01, 0.1), ConfigError);
    // strictly increasing
    double prev = 0.0;
    for (double x = 0.0; x < 0.1; x += 0.005) {
        const double fx = f_eps(x, 0.1);
        CHECK(fx >= std::max(prev, 1.0));
        prev = fx;
    }
}

TEST_CASE("phi_hat branches and properties") {
    const auto cfg = first_order_adaptive(0.1);
    CHECK(phi_hat(3.0, 0.2, cfg) == 3.0);   // x >= epsilon branch
    CHECK(phi_hat(10.0, 0.05, cfg) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(phi_hat(0.0, 0.05, cfg) == 0.0);
    CHECK(phi_hat(0.0, 0.5, cfg) == 0.0);

    oracles::StateSampler sample(81);
    for (int k = 0; k < 2000; ++k) {
        const double t = std::fabs(sample(1)[0]) * 20.0;
        const double x = std::fabs(sample(1)[0]) * 0.2;
        const double ph = phi_hat(t, x, cfg);
        CHECK(ph <= t);
        if (x < cfg.epsilon) CHECK(ph <= f_eps(x, cfg.epsilon) * (1 + 1e-15));
        // non-decreasing in x for fixed t
        const double x2 = x + 0.01;
        CHECK(phi_hat(t, x2, cfg) >= ph - 1e-15);
    }
    // continuity across the x = epsilon boundary (F blows up there, so min picks t)
    CHECK(phi_hat(5.0, 0.1 - 1e-13, cfg) == doctest::Approx(phi_hat(5.0, 0.1, cfg)).epsilon(1e-12));
}

TEST_CASE("gain_g families") {
    CHECK(gain_g(0.0, GainSpec{GainFamily::logarithmic}) == 1.0);
    CHECK(gain_g(std::exp(1.0) - 1.0, GainSpec{GainFamily::logarithmic}) ==
          doctest::Approx(2.0).epsilon(1e-14));
    for (double x : {0.0, 1.0, 7.5}) CHECK(gain_g(x, GainSpec{GainFamily::constant, 1.0}) == 1.0);
    CHECK(gain_g(2.0, GainSpec{GainFamily::affine, 1.0, 0.5}) == doctest::Approx(2.0));
}

TEST_CASE("make_adaptive_config validates the gain family against u0 boundedness") {
    CHECK_THROWS_AS(make_adaptive_config(0.0, 1.0, GainSpec{GainFamily::logarithmic}),
                    ConfigError);
    CHECK_THROWS_AS(make_adaptive_config(0.1, 0.0, GainSpec{GainFamily::logarithmic}),
                    ConfigError);
    CHECK_THROWS_AS(make_adaptive_config(0.1, 1.0, GainSpec{GainFamily::constant, 1.0}, false),
                    ConfigError);
    CHECK_THROWS_AS(make_adaptive_config(0.1, 1.0, GainSpec{GainFamily::affine, 1.0, 0.0}, false),
                    ConfigError);
    CHECK_NOTHROW(make_adaptive_config(0.1, 1.0, GainSpec{GainFamily::constant, 1.0}, true));
    CHECK_NOTHROW(make_adaptive_config(0.1, 1.0, GainSpec{GainFamily::affine, 1.0, 0.5}, false));
}

TEST_CASE("first_order_controller examples") {
    const auto cfg = first_order_adaptive(0.1);
    CHECK(first_order_controller(0.2, 7.0, cfg) == doctest::Approx(-8.0).epsilon(1e-14));
    CHECK(first_order_controller(0.05, 100.0, cfg) == doctest::Approx(-3.0).epsilon(1e-14));
    CHECK(first_order_controller(-0.5, 4.0, cfg) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(first_order_controller(0.0, 3.0, cfg) == 0.0);
    // |u| non-decreasing in t for fixed |z1| >= epsilon
    double prev = 0.0;
    for (double t = 0.0; t < 30.0; t += 0.5) {
        const double u = std::fabs(first_order_controller(0.25, t, cfg));
        CHECK(u >= prev);
        prev = u;
    }
}

TEST_CASE("control_u at the origin and odd symmetry") {
    const auto chain = oracles::order3_chain();
    const auto adap = make_adaptive_config(0.01, 1.0, GainSpec{GainFamily::logarithmic});
    CHECK(control_u({0, 0, 0}, 5.0, chain, adap) == 0.0);

    oracles::StateSampler sample(82);
    for (int k = 0; k < 1000; ++k) {
        const auto z = sample(3);
        StateVector nz(3);
        for (int i = 0; i < 3; ++i) nz[i] = -z[i];
        const double t = std::fabs(sample(1)[0]) * 10.0;
        CHECK(control_u(nz, t, chain, adap) == -control_u(z, t, chain, adap));
    }
}

TEST_CASE("first_order_controller equals the generic law with g = 1, k = 1") {
    const auto cfg = first_order_adaptive(0.1);
    oracles::StateSampler sample(83);
    for (int k = 0; k < 2000; ++k) {
        const double z1 = 0.3 * sample(1)[0];
        const double t = std::fabs(sample(1)[0]) * 15.0;
        const double u0 = z1 > 0 ? -1.0 : (z1 < 0 ? 1.0 : 0.0);
        const double sgn_u0 = u0 > 0 ? 1.0 : (u0 < 0 ? -1.0 : 0.0);
        const double generic =
            gain_g(std::fabs(u0), cfg.g) * u0 + cfg.k * sgn_u0 * phi_hat(t, std::fabs(z1), cfg);
        CHECK(first_order_controller(z1, t, cfg) == generic);
    }
}
