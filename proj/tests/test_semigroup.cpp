#include <doctest.h>

#include <cmath>
#include <limits>

#include "wedge/analysis.hpp"
#include "wedge/initial_data.hpp"
#include "wedge/riemann.hpp"
#include "wedge/semigroup.hpp"

using namespace wedge;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("wall-frame transform round trip") {
    Profile prof;
    prof.x = 0.4;
    prof.breakpoints = {-1.5, -0.8};
    prof.values = {State{1.0, 0.0}, State{1.2, -0.15}, State{1.0, -0.1}};
    Front f;
    f.id = 7;
    f.family = Family::Two;
    f.kind = WaveKind::Shock;
    f.strength = 0.9;
    f.y_at = -0.8;
    f.speed = 0.95;
    f.left = prof.values[1];
    f.right = prof.values[2];
    prof.fronts = {f};

    const double b0 = -0.1;
    const TransformedProfile tp = to_transformed(prof, b0);
    // The wall y = b0*x maps to y_hat = 0 and the trace condition to v_hat = 0.
    CHECK(tp.prof.breakpoints[0] == doctest::Approx(-1.5 + 0.04).epsilon(1e-15));
    CHECK(tp.prof.values[1].v == doctest::Approx(-0.05).epsilon(1e-13));
    CHECK(tp.prof.fronts[0].speed == doctest::Approx(1.05).epsilon(1e-13));

    const Profile back = from_transformed(tp);
    CHECK(back.breakpoints[0] == doctest::Approx(prof.breakpoints[0]).epsilon(1e-15));
    CHECK(back.values[1].v == doctest::Approx(prof.values[1].v).epsilon(1e-15));
    CHECK(back.fronts[0].speed == doctest::Approx(prof.fronts[0].speed).epsilon(1e-15));
    CHECK(l1_distance(back, prof, -3.0, b0 * prof.x) <= 1e-13);
}

TEST_CASE("semigroup over zero width is the identity") {
    const ModelParams p{1.0, 0.0, 0.0, -0.1};
    const Profile U0 = builtin_initial_data(
        "random_bv", {{"tv", 0.3}, {"pieces", 4}, {"y_lo", -2.0}, {"y_hi", -0.7}}, 9);
    const Profile out = semigroup_apply(U0, 0.0, 10, p);
    CHECK(l1_distance(out, U0, -kInf, p.b0 * U0.x) == 0.0);
    CHECK_THROWS_AS(semigroup_apply(U0, -0.1, 10, p), domain_error);
}

TEST_CASE("semigroup translates a compatible boundary shock exactly") {
    const ModelParams p{1.0, 0.0, 0.0, 0.0};
    const auto fan = solve_boundary(State{1.0, 0.3}, p);
    REQUIRE(fan.waves.size() == 1);
    const double sigma = fan.waves[0].xi_lo;

    Profile U0;
    U0.x = 0.0;
    U0.breakpoints = {-0.5};
    U0.values = {State{1.0, 0.3}, fan.constant_states.back()};

    const double h = 0.3;
    const Profile out = semigroup_apply(U0, h, 12, p);
    CHECK(out.x == doctest::Approx(0.3).epsilon(1e-15));

    Profile expected = U0;
    expected.x = 0.3;
    expected.breakpoints = {-0.5 + sigma * h};
    // Speed nudges are ~2^-32, so the translated shock is exact to ~1e-9.
    CHECK(l1_distance(out, expected, -kInf, 0.0) <= 1e-7);
}

TEST_CASE("lipschitz ratio: zero for identical data, order one for close data") {
    const ModelParams p{1.0, 0.0, 0.0, -0.05};
    const Profile A = builtin_initial_data(
        "random_bv", {{"tv", 0.4}, {"pieces", 5}, {"y_lo", -2.0}, {"y_hi", -0.6}}, 21);
    const Profile B = builtin_initial_data(
        "random_bv", {{"tv", 0.4}, {"pieces", 5}, {"y_lo", -2.0}, {"y_hi", -0.6}}, 22);
    CHECK(lipschitz_ratio(A, A, 0.5, 10, p) == 0.0);
    const double r = lipschitz_ratio(A, B, 0.5, 10, p);
    CHECK(r > 0.0);
    CHECK(r < 10.0);
}

TEST_CASE("error functional: defaults, shape, and positivity on full-system data") {
    const ModelParams p{1.0, 2e-3, 2e-3, 0.0};
    const SchemeParams sp = make_scheme_params(8, p, DomainBounds{});
    const Profile U0 = builtin_initial_data(
        "random_bv", {{"tv", 0.5}, {"pieces", 5}, {"y_lo", -2.0}, {"y_hi", -0.5}}, 13);

    const auto r = error_functional(U0, 0.5, 0.0, 6, 2.0, 12, p, sp);
    CHECK(r.h == doctest::Approx(std::exp2(-8 - 4) * 0.5).epsilon(1e-15));
    CHECK(r.panels.size() == 6);
    CHECK(r.value == doctest::Approx(2.0 * r.integral).epsilon(1e-15));
    for (const auto& panel : r.panels) {
        CHECK(panel.integrand >= 0.0);
        CHECK(panel.s > 0.0);
        CHECK(panel.s < 0.5);
    }
    // The full system genuinely differs from the limit reference.
    CHECK(r.integral > 0.0);

    CHECK_THROWS_AS(error_functional(U0, -1.0, 0.0, 6, 2.0, 12, p, sp), domain_error);
}

TEST_CASE("local error probe covers every front plus the boundary") {
    const ModelParams p{1.0, 2e-3, 1e-3, 0.0};
    const SchemeParams sp = make_scheme_params(8, p, DomainBounds{});
    Tracker tr(p, sp, DomainBounds{});
    tr.set_initial(builtin_initial_data(
        "random_bv", {{"tv", 0.5}, {"pieces", 4}, {"y_lo", -2.0}, {"y_hi", -0.5}}, 17));
    tr.advance_to(0.3);
    const Profile prof = tr.profile();
    REQUIRE(!prof.fronts.empty());

    const double h = std::exp2(-10);
    const auto rows = local_error_probe(prof, p, h, 12, sp);
    REQUIRE(rows.size() == prof.fronts.size() + 1);
    CHECK(rows.back().is_boundary);
    const double wall = p.b0 * (prof.x + h);
    for (const auto& row : rows) {
        // Midpoint splits may shrink a window to nothing but never invert it.
        CHECK(row.window_lo <= row.window_hi);
        CHECK(row.window_hi <= wall + 1e-15);
        CHECK(row.raw_error >= 0.0);
        CHECK(row.ratio >= 0.0);
        CHECK(std::isfinite(row.ratio));
    }
    CHECK(rows.back().window_hi == wall);
}
