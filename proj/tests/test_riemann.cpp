#include <doctest.h>

#include <cmath>
#include <random>

#include "wedge/riemann.hpp"

using namespace wedge;

namespace {
constexpr double kTight = 1e-12;

// Checks both Rankine-Hugoniot conditions and the strict entropy
// inequalities for every shock of a solved fan.
void check_fan_admissibility(const RiemannFan& fan, const ModelParams& p) {
    for (std::size_t i = 0; i < fan.waves.size(); ++i) {
        const auto& fw = fan.waves[i];
        const State& l = fan.constant_states[i];
        const State& r = fan.constant_states[i + 1];
        if (fw.wave.kind == WaveKind::Shock) {
            const double sigma = fw.xi_lo;
            CHECK(fw.xi_hi == fw.xi_lo);
            const double j1 = sigma * (r.rho * w_factor(r, p) - l.rho * w_factor(l, p)) -
                              (r.rho * r.v - l.rho * l.v);
            const double j2 = sigma * (r.v - l.v) - (psi(r, p) - psi(l, p));
            CHECK(std::fabs(j1) <= 1e-10);
            CHECK(std::fabs(j2) <= 1e-10);
            const auto ll = eigenvalues(l, p);
            const auto lr = eigenvalues(r, p);
            if (fw.wave.family == Family::One) {
                CHECK(lr[0] < sigma);
                CHECK(sigma < ll[0]);
                CHECK(sigma < lr[1]);
            } else {
                CHECK(lr[1] < sigma);
                CHECK(sigma < ll[1]);
                CHECK(sigma > ll[0]);
            }
        } else {
            CHECK(fw.xi_lo <= fw.xi_hi);
        }
    }
}
}  // namespace

TEST_CASE("symmetric interior data: frozen strength and mirror symmetry") {
    const ModelParams lim{1.0, 0.0, 0.0, 0.0};
    const auto fan = solve_interior(State{1.0, 0.2}, State{1.0, -0.2}, lim);
    CHECK(fan.alpha(Family::One) == doctest::Approx(1.22181070776110239448).epsilon(kTight));
    // The limit system is symmetric, so the middle state carries all the
    // compression and the second wave undoes it exactly.
    CHECK(fan.alpha(Family::Two) ==
          doctest::Approx(1.0 / fan.alpha(Family::One)).epsilon(kTight));
    CHECK(fan.constant_states[1].rho ==
          doctest::Approx(1.22181070776110239448).epsilon(kTight));
    check_fan_admissibility(fan, lim);
}

TEST_CASE("full-system interior strengths at the frozen point") {
    const ModelParams p{1.0, 2e-3, 2e-3, 0.0};
    const auto fan = solve_interior(State{1.0, 0.2}, State{1.0, -0.2}, p);
    CHECK(fan.alpha(Family::One) == doctest::Approx(1.22198616273357110683).epsilon(kTight));
    CHECK(fan.alpha(Family::Two) == doctest::Approx(0.818339872002322653417).epsilon(kTight));
    check_fan_admissibility(fan, p);

    // Recomposition closes on the right state.
    const State& last = fan.constant_states.back();
    CHECK(last.rho == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(last.v == doctest::Approx(-0.2).epsilon(1e-10));
}

TEST_CASE("boundary reflection: frozen strengths and wall trace") {
    {
        const ModelParams lim{1.0, 0.0, 0.0, 0.0};
        const auto fan = solve_boundary(State{1.0, 0.3}, lim);
        CHECK(fan.boundary_attached);
        CHECK(fan.waves.size() == 1);
        CHECK(fan.alpha(Family::One) == doctest::Approx(1.35138454004395458982).epsilon(kTight));
        // Limit boundary condition is v = b0 exactly.
        CHECK(std::fabs(fan.constant_states.back().v) <= 1e-12);
        check_fan_admissibility(fan, lim);
    }
    {
        const ModelParams p{1.0, 2e-3, 1e-3, -0.1};
        const auto fan = solve_boundary(State{1.0, 0.3}, p);
        CHECK(fan.alpha(Family::One) == doctest::Approx(1.49590367191352760836).epsilon(kTight));
        const State ub = fan.constant_states.back();
        CHECK(ub.rho == doctest::Approx(1.49590367191352760836).epsilon(kTight));
        CHECK(ub.v == doctest::Approx(-0.0999592028135918127914).epsilon(kTight));
        // Wall trace v = b0 * W to machine precision.
        CHECK(std::fabs(ub.v - p.b0 * w_factor(ub, p)) <= 1e-12);
        check_fan_admissibility(fan, p);
    }
}

TEST_CASE("limit boundary rarefaction has the exponential closed form") {
    const ModelParams lim{1.0, 0.0, 0.0, 0.0};
    const auto fan = solve_boundary(State{1.0, -0.2}, lim);
    REQUIRE(fan.waves.size() == 1);
    CHECK(fan.waves[0].wave.kind == WaveKind::Rarefaction);
    CHECK(fan.alpha(Family::One) == doctest::Approx(std::exp(-0.2)).epsilon(kTight));
}

TEST_CASE("sample_fan is consistent across wave edges and inside fans") {
    const ModelParams p{1.0, 1e-3, 1e-3, 0.0};
    const State UL{1.3, 0.1}, UR{0.9, -0.05};
    const auto fan = solve_interior(UL, UR, p);

    // Far left and far right reproduce the data.
    State s = sample_fan(fan, -10.0, p);
    CHECK(s.rho == doctest::Approx(UL.rho).epsilon(1e-12));
    s = sample_fan(fan, 10.0, p);
    CHECK(s.rho == doctest::Approx(UR.rho).epsilon(1e-10));

    for (const auto& fw : fan.waves) {
        if (fw.wave.kind != WaveKind::Rarefaction || fw.xi_hi <= fw.xi_lo) continue;
        // Inside a fan the sampled state's characteristic speed equals xi.
        const double xi = 0.5 * (fw.xi_lo + fw.xi_hi);
        const State in = sample_fan(fan, xi, p);
        const auto lam = eigenvalues(in, p);
        const double want = fw.wave.family == Family::One ? lam[0] : lam[1];
        CHECK(want == doctest::Approx(xi).epsilon(1e-9));
    }
}

TEST_CASE("random interior data: recomposition, jump conditions, entropy") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> rho_d(0.6, 1.8), v_d(-0.4, 0.4), mu_d(0.0, 5e-3);
    for (int i = 0; i < 60; ++i) {
        const ModelParams p{1.0 + 0.5 * (i % 3), mu_d(rng), mu_d(rng), 0.0};
        const State UL{rho_d(rng), v_d(rng)}, UR{rho_d(rng), v_d(rng)};
        const auto fan = solve_interior(UL, UR, p);
        const State& last = fan.constant_states.back();
        CHECK(std::fabs(last.rho - UR.rho) + std::fabs(last.v - UR.v) <= 1e-10);
        check_fan_admissibility(fan, p);
    }
}

TEST_CASE("strength comparison reports a finite scaled gap") {
    const ModelParams p{1.0, 2e-3, 2e-3, 0.0};
    const auto rep = compare_strengths(State{1.0, 0.2}, State{1.0, -0.2}, p);
    CHECK(rep.mu_norm == doctest::Approx(4e-3));
    CHECK(!rep.exact_match);
    CHECK(std::fabs(rep.family1.ratio) < 10.0);
    CHECK(std::fabs(rep.family2.ratio) < 10.0);
    CHECK(rep.family1.alpha_limit == doctest::Approx(1.22181070776110239448).epsilon(kTight));
    CHECK(rep.family1.alpha_full == doctest::Approx(1.22198616273357110683).epsilon(kTight));

    const auto lim = compare_strengths(State{1.0, 0.2}, State{1.0, -0.2}, p.limit());
    CHECK(lim.exact_match);
}

TEST_CASE("degenerate data collapses to no waves") {
    const ModelParams p{1.0, 1e-3, 0.0, 0.0};
    const State U{1.1, 0.05};
    const auto fan = solve_interior(U, U, p);
    for (const auto& fw : fan.waves) CHECK(fw.wave.alpha == doctest::Approx(1.0).epsilon(1e-12));
}
