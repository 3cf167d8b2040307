#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "layerlab/absorption.hpp"
#include "layerlab/config.hpp"
#include "layerlab/grid.hpp"
#include "layerlab/initial.hpp"

using namespace layerlab;

TEST_CASE("baseline grid satisfies the CFL bound") {
    const SimConfig cfg = baseline_config();
    CHECK(cfg.base_grid.cfl() == doctest::Approx(0.99277).epsilon(1e-3));
    CHECK(cfg.base_grid.cfl() < 1.0);
    CHECK(cfg.base_grid.n_steps == 57);
}

TEST_CASE("grid construction rejects bad parameters") {
    CHECK_THROWS_AS(YeeGrid(0, 10, 0, 10, 100, 100, 0.1, 10), std::invalid_argument);  // CFL >= 1
    CHECK_THROWS_AS(YeeGrid(0, 10, 0, 10, 1, 100, 0.01, 10), std::invalid_argument);
    CHECK_THROWS_AS(YeeGrid(0, 10, 0, 10, 100, 100, -0.1, 10), std::invalid_argument);
}

TEST_CASE("refinement doubles counts and halves spacings exactly") {
    const YeeGrid g(0, 10, 0, 10, 100, 100, 0.0702, 57);
    const YeeGrid g2 = g.refined().refined();
    CHECK(g2.nx == 4 * g.nx);
    CHECK(g2.ny == 4 * g.ny);
    CHECK(g2.n_steps == 4 * g.n_steps);
    CHECK(g2.dt == g.dt / 4.0);
    CHECK(g2.dx == doctest::Approx(g.dx / 4.0).epsilon(1e-15));
    CHECK(g.refined().cfl() == doctest::Approx(g.cfl()).epsilon(1e-14));
}

TEST_CASE("staggered index <-> coordinate round trip is the identity") {
    const YeeGrid g(-2.5, 7.5, 1.0, 4.0, 40, 12, 0.05, 10);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j <= g.ny; ++j) {
            CHECK(g.ex_i(g.ex_x(i)) == i);
            CHECK(g.ex_j(g.ex_y(j)) == j);
        }
    for (int i = 0; i <= g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            CHECK(g.ey_i(g.ey_x(i)) == i);
            CHECK(g.ey_j(g.ey_y(j)) == j);
        }
    for (int i = 0; i < g.nx; ++i) CHECK(g.hz_i(g.hz_x(i)) == i);
    for (int j = 0; j < g.ny; ++j) CHECK(g.hz_j(g.hz_y(j)) == j);
}

TEST_CASE("sigma sampler matches the profile definitions") {
    const auto c2 = AbsorptionProfile::constant(2.0, 6.0, 10.0);
    CHECK(sample_sigma(c2, 7.0) == 2.0);
    CHECK(sample_sigma(c2, 3.0) == 0.0);
    CHECK(sample_sigma(c2, 6.0) == 2.0);  // closed at the interface

    const auto cb = AbsorptionProfile::cubic(1.0 / 8.0, 6.0, 10.0);
    CHECK(sample_sigma(cb, 8.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sample_sigma(cb, 6.0) == 0.0);
    CHECK(sample_sigma(cb, 5.0) == 0.0);

    const auto none = AbsorptionProfile::none();
    CHECK(sample_sigma(none, 1.0) == 0.0);
}

TEST_CASE("sigma is nonnegative and vanishes left of the support") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xdist(0.0, 10.0);
    const auto profiles = {AbsorptionProfile::constant(2.0, 6.0, 10.0),
                           AbsorptionProfile::cubic(1.0 / 8.0, 6.0, 10.0),
                           AbsorptionProfile::none()};
    for (const auto& p : profiles)
        for (int n = 0; n < 10000; ++n) {
            const double x = xdist(rng);
            const double s = sample_sigma(p, x);
            CHECK(s >= 0.0);
            if (x < p.support_start) CHECK(s == 0.0);
        }
}

TEST_CASE("modulated bump values") {
    InitialCondition init;  // xc=(5,5), r=0.8, k=10, v=(1,0)
    CHECK(initial_hz(init, 5.0, 5.0) == doctest::Approx(1.0).epsilon(1e-15));
    // |x-xc| = r/2 with v.(x-xc) = 0: envelope cos^2(pi/4) = 1/2
    CHECK(initial_hz(init, 5.0, 5.4) == doctest::Approx(0.5).epsilon(1e-12));
    // the envelope vanishes continuously at the ball boundary
    CHECK(initial_hz(init, 5.0, 5.8) == doctest::Approx(0.0).epsilon(1e-15));
    // outside the ball
    CHECK(initial_hz(init, 5.0 + 2 * 0.8, 5.0) == 0.0);
    CHECK(initial_hz(init, 5.0, 5.0 + 1.6001 * 0.8) == 0.0);
}

TEST_CASE("gaussian and random initial data vanish far away") {
    InitialCondition g;
    g.kind = InitialCondition::Kind::gaussian;
    g.r = 0.5;
    CHECK(initial_hz(g, 5.0, 5.0) == 1.0);
    CHECK(initial_hz(g, 5.0 + 2 * g.support_radius(), 5.0) == 0.0);
    CHECK(g.support_radius() > 3.0);

    InitialCondition r;
    r.kind = InitialCondition::Kind::random;
    r.r = 1.0;
    r.seed = 99;
    CHECK(initial_hz(r, 7.5, 5.0) == 0.0);
    const double v = initial_hz(r, 5.03, 5.03);
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
    CHECK(v == initial_hz(r, 5.03, 5.03));  // deterministic in (seed, cell)
}

TEST_CASE("random initial data is consistent across refinements") {
    InitialCondition r;
    r.kind = InitialCondition::Kind::random;
    r.r = 1.0;
    r.seed = 5;
    r.base_cell = 0.1;
    // the refined nodes inside one base cell share its value
    const double v0 = initial_hz(r, 5.025, 5.025);
    CHECK(initial_hz(r, 5.075, 5.075) == v0);
    CHECK(initial_hz(r, 5.125, 5.025) != v0);  // next cell, almost surely
}

TEST_CASE("config validation names the offending field") {
    SimConfig cfg = baseline_config();
    cfg.interest = Rect{0.0, 11.0, 0.0, 10.0};
    CHECK_THROWS_WITH_AS(cfg.validate(),
                         doctest::Contains("interest"), std::invalid_argument);
    cfg = baseline_config();
    cfg.layer = AbsorptionProfile::constant(2.0, 5.0, 10.0);  // overlaps interest
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("layer"), std::invalid_argument);
    cfg = baseline_config();
    cfg.nu = -1.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("nu"), std::invalid_argument);
}

TEST_CASE("field state shapes follow the staggering") {
    FieldState s(10, 7, true, true);
    CHECK(s.ex.size() == 10 * 8);
    CHECK(s.ey.size() == 11 * 7);
    CHECK(s.hz.size() == 10 * 7);
    CHECK(s.hzx.size() == s.hz.size());
    CHECK(s.w.size() == s.ex.size());
    s.ex_at(9, 7) = 3.0;
    CHECK(s.ex[7 * 10 + 9] == 3.0);
    CHECK(all_finite(s));
    s.hz_at(0, 0) = std::nan("");
    CHECK(!all_finite(s));
}
