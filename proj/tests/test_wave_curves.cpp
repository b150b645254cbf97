#include <doctest.h>

#include <cmath>

#include "wedge/wave_curves.hpp"

using namespace wedge;

namespace {
// Reference values below were generated by tools/reference_values.py with
// 40-digit arithmetic and are frozen here verbatim.
constexpr double kTight = 1e-12;  // closed forms and Newton-solved roots
constexpr double kOde = 1e-10;    // adaptive-RK rarefaction integrals
}  // namespace

TEST_CASE("powm1_over is continuous through the zero exponent") {
    CHECK(powm1_over(2.7182818284590452354, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(powm1_over(2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    // Small exponent agrees with the series x^e = 1 + e ln x + ...
    const double lnx = std::log(1.7);
    CHECK(powm1_over(1.7, 1e-9) == doctest::Approx(lnx).epsilon(1e-8));
}

TEST_CASE("Bernoulli quantity matches the frozen references") {
    CHECK(bernoulli_B(State{2.0, 0.5}, ModelParams{2.0, 0.1, 0.0, 0.0}) ==
          doctest::Approx(0.608867312681465821065).epsilon(kTight));
    CHECK(bernoulli_B(State{2.7182818284590452354, 0.0}, ModelParams{1.0, 0.0, 0.0, 0.0}) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(bernoulli_B(State{-1.0, 0.0}, ModelParams{}), domain_error);
}

TEST_CASE("derived streamwise velocity and psi") {
    // u = (W - 1)/tau2 evaluated without cancellation.
    CHECK(u_from_state(State{1.0, 0.1}, ModelParams{1.0, 0.0, 0.01, 0.0}) ==
          doctest::Approx(-0.00500012500625039065235).epsilon(kTight));
    // At mu = 0, u = -B/2.
    CHECK(u_from_state(State{2.7182818284590452354, 0.0}, ModelParams{1.0, 0.0, 0.0, 0.0}) ==
          doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(psi(State{2.0, 0.5}, ModelParams{2.0, 0.1, 0.05, 0.0}) ==
          doctest::Approx(0.306786606894986383198).epsilon(kTight));
}

TEST_CASE("u + psi vanishes identically") {
    const ModelParams p{1.3, 0.02, 0.04, 0.0};
    for (double rho : {0.5, 1.0, 1.9, 3.0}) {
        for (double v : {-0.4, 0.0, 0.3}) {
            const State s{rho, v};
            CHECK(std::fabs(u_from_state(s, p) + psi(s, p)) <= 1e-15);
        }
    }
}

TEST_CASE("eigenvalues: exact limit form and full-system reference") {
    const ModelParams lim{1.7, 0.0, 0.0, 0.0};
    const State s{1.4, 0.23};
    const auto lam = eigenvalues(s, lim);
    CHECK(lam[0] == s.v - 1.0 / lim.a_inf);  // bitwise at mu = 0
    CHECK(lam[1] == s.v + 1.0 / lim.a_inf);

    const auto lam_full = eigenvalues(State{1.5, 0.2}, ModelParams{1.0, 0.05, 0.01, 0.0});
    CHECK(lam_full[0] == doctest::Approx(-0.817072353104984492152).epsilon(kTight));
    CHECK(lam_full[1] == doctest::Approx(1.22298002458387182412).epsilon(kTight));
}

TEST_CASE("shock offsets match the frozen references") {
    CHECK(shock_offset(2.0, Family::One, State{1.0, 0.0}, ModelParams{1.0, 0.0, 0.0, 0.0}) ==
          doctest::Approx(-0.679777993445872645178).epsilon(kTight));
    CHECK(shock_offset(2.0, Family::One, State{1.0, 0.0}, ModelParams{1.0, 1e-3, 1e-3, 0.0}) ==
          doctest::Approx(-0.679266941203822157896).epsilon(kTight));
    CHECK(shock_offset(1.7, Family::One, State{1.3, 0.2}, ModelParams{1.5, 0.03, 0.01, 0.0}) ==
          doctest::Approx(-0.35171067774238262993).epsilon(kTight));
    CHECK(shock_offset(0.6, Family::Two, State{1.2, 0.1}, ModelParams{1.0, 0.02, 0.03, 0.0}) ==
          doctest::Approx(-0.49936489081370970773).epsilon(kTight));
}

TEST_CASE("limit-system shock offset closed form, both families") {
    const ModelParams p{1.4, 0.0, 0.0, 0.0};
    const State left{1.1, -0.07};
    for (double alpha : {1.05, 1.5, 2.4}) {
        const double closed = -std::sqrt(2.0 * (alpha - 1.0) * std::log(alpha) / (alpha + 1.0)) /
                              p.a_inf;
        CHECK(shock_offset(alpha, Family::One, left, p) == doctest::Approx(closed).epsilon(kTight));
        // Family Two shocks live at alpha < 1 with the same closed form.
        const double a2 = 1.0 / alpha;
        const double closed2 = -std::sqrt(2.0 * (a2 - 1.0) * std::log(a2) / (a2 + 1.0)) / p.a_inf;
        CHECK(shock_offset(a2, Family::Two, left, p) == doctest::Approx(closed2).epsilon(kTight));
    }
}

TEST_CASE("rarefaction offsets: limit closed form and full-system references") {
    const ModelParams lim{2.0, 0.0, 0.0, 0.0};
    CHECK(rarefaction_offset(0.8, Family::One, State{1.0, 0.0}, lim) ==
          doctest::Approx(-std::log(0.8) / 2.0).epsilon(1e-14));
    CHECK(rarefaction_offset(1.3, Family::Two, State{1.0, 0.0}, lim) ==
          doctest::Approx(std::log(1.3) / 2.0).epsilon(1e-14));

    CHECK(rarefaction_offset(1.2, Family::Two, State{1.0, 0.0}, ModelParams{1.0, 1e-3, 0.0, 0.0}) ==
          doctest::Approx(0.182329867334002417142).epsilon(kTight));
    CHECK(rarefaction_offset(0.8, Family::One, State{1.1, -0.05},
                             ModelParams{2.0, 0.01, 0.02, 0.0}) ==
          doctest::Approx(0.111288610129962096311).epsilon(kOde));
    CHECK(rarefaction_offset(1.45, Family::Two, State{0.9, 0.15},
                             ModelParams{1.3, 0.04, 0.0, 0.0}) ==
          doctest::Approx(0.286278866047354014847).epsilon(kTight));
}

TEST_CASE("rarefaction inverse-parameterization cross-check stays tiny") {
    CHECK(rarefaction_offset_check(0.8, Family::One, State{1.1, -0.05},
                                   ModelParams{2.0, 0.01, 0.02, 0.0}) <= 1e-9);
    CHECK(rarefaction_offset_check(1.45, Family::Two, State{0.9, 0.15},
                                   ModelParams{1.3, 0.04, 0.0, 0.0}) <= 1e-9);
    CHECK(rarefaction_offset_check(1.2, Family::Two, State{1.0, 0.0},
                                   ModelParams{1.0, 0.0, 0.0, 0.0}) <= 1e-11);
}

TEST_CASE("composite wave curve phi dispatches on the alpha side") {
    const ModelParams p{1.0, 0.0, 0.0, 0.0};
    const State left{1.0, 0.0};
    CHECK(phi(2.0, Family::One, left, p) == shock_offset(2.0, Family::One, left, p));
    CHECK(phi(0.7, Family::One, left, p) == rarefaction_offset(0.7, Family::One, left, p));
    CHECK(phi(0.7, Family::Two, left, p) == shock_offset(0.7, Family::Two, left, p));
    CHECK(phi(1.4, Family::Two, left, p) == rarefaction_offset(1.4, Family::Two, left, p));
    CHECK(phi(1.0, Family::One, left, p) == 0.0);
}

TEST_CASE("hugoniot root is consistent with the solved offset") {
    const ModelParams p{1.5, 0.03, 0.01, 0.0};
    const State left{1.3, 0.2};
    const double dv = shock_offset(1.7, Family::One, left, p);
    double deriv = 0.0;
    CHECK(std::fabs(hugoniot(dv, 1.7, left, p, &deriv)) <= 1e-12);
    CHECK(deriv != 0.0);
}

TEST_CASE("shock speeds satisfy both jump conditions and the references") {
    {
        const ModelParams p{1.0, 0.0, 0.0, 0.0};
        const State left{1.0, 0.0};
        const WaveDescriptor w{Family::One, WaveKind::Shock, 1.5};
        const State right = wave_right_state(w.alpha, w.family, left, p);
        CHECK(shock_speed(w, left, right, p) ==
              doctest::Approx(-1.20816985113409934615).epsilon(kTight));
    }
    {
        const ModelParams p{1.5, 0.03, 0.01, 0.0};
        const State left{1.3, 0.2};
        const WaveDescriptor w{Family::One, WaveKind::Shock, 1.7};
        const State right = wave_right_state(w.alpha, w.family, left, p);
        CHECK(shock_speed(w, left, right, p) ==
              doctest::Approx(-0.658764852281803174269).epsilon(kTight));
    }
    {
        const ModelParams p{1.0, 0.02, 0.03, 0.0};
        const State left{1.2, 0.1};
        const WaveDescriptor w{Family::Two, WaveKind::Shock, 0.6};
        const State right = wave_right_state(w.alpha, w.family, left, p);
        CHECK(shock_speed(w, left, right, p) ==
              doctest::Approx(0.871012945889253918862).epsilon(kTight));
    }
}

TEST_CASE("wave_map_Phi composes the two elementary curves") {
    const ModelParams p{1.0, 2e-3, 2e-3, 0.0};
    const State left{1.0, 0.2};
    State mid{};
    const State right = wave_map_Phi(1.2, 0.9, left, p, &mid);
    CHECK(mid.rho == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(right.rho == doctest::Approx(1.2 * 0.9).epsilon(1e-15));
    const State mid2 = wave_right_state(1.2, Family::One, left, p);
    CHECK(mid.v == doctest::Approx(mid2.v).epsilon(1e-14));
}

TEST_CASE("genuine nonlinearity probe equals 1/a at mu = 0") {
    for (double a : {0.5, 1.0, 2.0}) {
        const ModelParams p{a, 0.0, 0.0, 0.0};
        const auto g = genuine_nonlinearity_probe(State{1.2, -0.1}, p);
        CHECK(g[0] == doctest::Approx(1.0 / a).epsilon(1e-6));
        CHECK(g[1] == doctest::Approx(1.0 / a).epsilon(1e-6));
    }
    // Stays bounded away from zero in the full system too.
    const auto g = genuine_nonlinearity_probe(State{1.2, -0.1}, ModelParams{1.0, 5e-3, 5e-3, 0.0});
    CHECK(g[0] > 0.5);
    CHECK(g[1] > 0.5);
}

TEST_CASE("full-minus-limit u gap at the reference point") {
    const State s{1.0, 0.1};
    const double uf = u_from_state(s, ModelParams{1.0, 0.0, 1e-4, 0.0});
    const double ul = u_from_state(s, ModelParams{1.0, 0.0, 0.0, 0.0});
    CHECK(std::fabs(uf - ul) == doctest::Approx(1.25000062500039062527e-9).epsilon(1e-9));
}

TEST_CASE("strength window and orientation violations are rejected") {
    const ModelParams p{1.0, 0.0, 0.0, 0.0};
    const State left{1.0, 0.0};
    CHECK_THROWS_AS(shock_offset(50.0, Family::One, left, p), strength_error);
    CHECK_THROWS_AS(shock_offset(0.8, Family::One, left, p), strength_error);
    CHECK_THROWS_AS(rarefaction_offset(1.2, Family::One, left, p), strength_error);
    CHECK_THROWS_AS(validate(WaveDescriptor{Family::One, WaveKind::Shock, 0.5}), domain_error);
}
