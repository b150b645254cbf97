#include <doctest.h>

#include <cmath>
#include <limits>

#include "wedge/analysis.hpp"
#include "wedge/initial_data.hpp"

using namespace wedge;

namespace {
const double kInf = std::numeric_limits<double>::infinity();

Profile three_step_a() {
    Profile a;
    a.breakpoints = {-2.0, -0.5, 1.0};
    a.values = {State{1.0, 0.0}, State{1.4, 0.2}, State{0.9, -0.1}, State{1.0, 0.0}};
    return a;
}

Profile three_step_b() {
    Profile b;
    b.breakpoints = {-1.2, 0.3};
    b.values = {State{1.0, 0.0}, State{0.8, 0.25}, State{1.0, 0.0}};
    return b;
}
}  // namespace

TEST_CASE("l1_distance on hand-integrable step profiles") {
    const Profile a = three_step_a(), b = three_step_b();
    CHECK(l1_distance(a, b, -3.0, 2.0) == doctest::Approx(1.435).epsilon(1e-13));
    // Matching background tails let the endpoints go to infinity.
    CHECK(l1_distance(a, b, -kInf, kInf) == doctest::Approx(1.435).epsilon(1e-13));
    CHECK(l1_distance(a, a, -kInf, kInf) == 0.0);
    // Sub-interval restriction: only the [-0.5, 0.3] mismatch remains.
    const double sub = l1_distance(a, b, -0.5, 0.3);
    CHECK(sub == doctest::Approx((0.1 + 0.35) * 0.8).epsilon(1e-13));
    // Degenerate interval.
    CHECK(l1_distance(a, b, 1.0, 1.0) == 0.0);
}

TEST_CASE("l1_distance rejects diverging tails and mismatched x") {
    Profile a = three_step_a(), b = three_step_b();
    b.values.back().v = 0.1;  // right tails now differ
    CHECK_THROWS_AS(l1_distance(a, b, -3.0, kInf), domain_error);
    Profile c = three_step_b();
    c.x = 0.5;
    CHECK_THROWS_AS(l1_distance(a, c, -3.0, 2.0), domain_error);
}

TEST_CASE("fit_rate recovers a synthetic power law") {
    const std::vector<double> xs = {4e-3, 1e-3, 2e-3};  // unsorted on purpose
    std::vector<double> es;
    for (double x : xs) es.push_back(3.7 * std::pow(x, 1.25));
    const RateFit fit = fit_rate(xs, es);
    CHECK(fit.slope == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.abscissae.front() == 1e-3);
    CHECK(fit.leading_coefficient ==
          doctest::Approx(3.7 * std::pow(1e-3, 0.25)).epsilon(1e-12));
    CHECK(std::exp(fit.intercept) == doctest::Approx(3.7).epsilon(1e-10));
}

TEST_CASE("u_error integrates the derived-velocity gap") {
    Profile full, limit;
    full.values = {State{1.0, 0.1}};
    limit.values = {State{1.0, 0.1}};
    const ModelParams p{1.0, 0.0, 1e-4, 0.0};
    CHECK(u_error(full, limit, p, -1.0, 0.0) ==
          doctest::Approx(1.25000062500039062527e-9).epsilon(1e-9));
    CHECK(u_error(full, limit, p.limit(), -1.0, 0.0) == 0.0);
}

TEST_CASE("optimal rate cells at a_inf = 1: frozen strengths, speeds, error") {
    const auto res = optimal_rate_experiment(1.0, 1e-3, {4e-3, 2e-3, 1e-3}, {4e-3, 2e-3, 1e-3}, 1.0);
    REQUIRE(res.eps_cells.size() == 3);
    REQUIRE(res.tau2_cells.size() == 3);

    const OptimalRateCell& c = res.eps_cells[2];  // eps = 1e-3
    CHECK(c.eps == 1e-3);
    CHECK(c.tau2 == 0.0);
    CHECK(c.alpha1 == doctest::Approx(1.00100050020841669775).epsilon(1e-12));
    CHECK(c.beta1 == doctest::Approx(1.00100049995816660401).epsilon(1e-12));
    CHECK(c.sigma_limit == doctest::Approx(-0.999500041666668576389).epsilon(1e-12));
    CHECK(c.sigma_full == doctest::Approx(-0.999500291666658159718).epsilon(1e-12));
    CHECK(c.l1 == doctest::Approx(7.50249947822872926502e-10).epsilon(1e-9));

    const double eps_coeffs[3] = {7.50249478667e-4, 7.50249791437e-4, 7.50249947823e-4};
    const double tau2_coeffs[3] = {1.50552770304, 1.50275883784, 1.50137838024};
    for (int i = 0; i < 3; ++i) {
        CHECK(res.eps_cells[i].coeff == doctest::Approx(eps_coeffs[i]).epsilon(1e-6));
        CHECK(res.tau2_cells[i].coeff == doctest::Approx(tau2_coeffs[i]).epsilon(1e-6));
    }
    // The fits are over errors/(delta*x), so the leading coefficient at the
    // smallest parameter equals the rate constant.
    CHECK(res.eps_fit.leading_coefficient == doctest::Approx(7.50249947823e-4).epsilon(1e-6));
    CHECK(res.tau2_fit.leading_coefficient == doctest::Approx(1.50137838024).epsilon(1e-6));
    CHECK(res.eps_fit.slope == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(res.tau2_fit.slope == doctest::Approx(1.0).epsilon(5e-3));
}

TEST_CASE("optimal rate cells at a_inf = 2 match the frozen coefficients") {
    const auto res = optimal_rate_experiment(2.0, 1e-3, {4e-3, 2e-3, 1e-3}, {4e-3, 2e-3, 1e-3}, 1.0);
    const double eps_coeffs[3] = {1.250998413e-3, 1.2509996235e-3, 1.25100022875e-3};
    const double tau2_coeffs[3] = {0.312798239161, 0.312649270707, 0.312574841055};
    for (int i = 0; i < 3; ++i) {
        CHECK(res.eps_cells[i].coeff == doctest::Approx(eps_coeffs[i]).epsilon(1e-6));
        CHECK(res.tau2_cells[i].coeff == doctest::Approx(tau2_coeffs[i]).epsilon(1e-6));
    }
}

TEST_CASE("the formula route and the profile route agree") {
    for (double a : {1.0, 2.0}) {
        const auto res = optimal_rate_experiment(a, 1e-3, {1e-3}, {1e-3}, 1.0);
        CHECK(optimal_rate_error_by_profiles(a, 1e-3, 0.0, 1e-3, 1.0) ==
              doctest::Approx(res.eps_cells[0].l1).epsilon(1e-9));
        CHECK(optimal_rate_error_by_profiles(a, 0.0, 1e-3, 1e-3, 1.0) ==
              doctest::Approx(res.tau2_cells[0].l1).epsilon(1e-9));
    }
}

TEST_CASE("strength-gap slopes match the expansion models at small delta") {
    const auto res = optimal_rate_experiment(1.0, 1e-4, {1e-3}, {1e-3}, 1.0);
    const OptimalRateCell& ce = res.eps_cells[0];
    const double slope_eps = (ce.beta1 - ce.alpha1) / ((ce.alpha1 - 1.0) * ce.eps);
    // Model: -a*delta/4; measured -2.50012e-5 at delta = 1e-4.
    CHECK(slope_eps / (-1.0 * 1e-4 / 4.0) == doctest::Approx(1.0).epsilon(0.2));

    const OptimalRateCell& ct = res.tau2_cells[0];
    const double slope_tau = (ct.beta1 - ct.alpha1) / ((ct.alpha1 - 1.0) * ct.tau2);
    // Model: +1/(2 a^2).
    CHECK(slope_tau == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("asymptotic defect ladder: frozen values, linear decay, exact d3") {
    const std::vector<AsymptoticCase> ladder = {
        {1e-2, 1e-2, 1e-2}, {1e-3, 1e-3, 1e-3}, {1e-4, 1e-4, 1e-4}, {1e-5, 1e-5, 1e-5}};

    const AsymptoticReport r1 = asymptotic_checks(1.0, ladder);
    REQUIRE(r1.rows.size() == 4);
    CHECK(r1.rows[1].d1 == doctest::Approx(5.001677095e-4).epsilon(1e-6));
    CHECK(r1.rows[1].d2 == doctest::Approx(1.000335419e-3).epsilon(1e-6));
    CHECK(r1.rows[0].d1 == doctest::Approx(5.0177203e-3).epsilon(1e-6));
    CHECK(r1.d3_identically_zero);
    // The boundary state's v comes from a root solve, so "identically zero"
    // means below the solve noise even after dividing by delta = 1e-5.
    CHECK(r1.d3_max <= 1e-9);
    CHECK(r1.d1_fit.slope == doctest::Approx(1.0).epsilon(0.05));
    CHECK(r1.d2_fit.slope == doctest::Approx(1.0).epsilon(0.05));

    const AsymptoticReport r05 = asymptotic_checks(0.5, {{1e-3, 1e-3, 1e-3}});
    CHECK(r05.rows[0].d1 == doctest::Approx(1.002578369e-3).epsilon(1e-6));
    CHECK(r05.rows[0].d2 == doctest::Approx(8.020626953e-3).epsilon(1e-6));

    const AsymptoticReport r2 = asymptotic_checks(2.0, {{1e-3, 1e-3, 1e-3}});
    CHECK(r2.rows[0].d1 == doctest::Approx(2.508811756e-4).epsilon(1e-6));
    CHECK(r2.rows[0].d2 == doctest::Approx(1.254405878e-4).epsilon(1e-6));
}

TEST_CASE("global rate experiment: smaller mu gives smaller error") {
    const Profile U0 = builtin_initial_data(
        "random_bv", {{"tv", 0.4}, {"pieces", 4}, {"y_lo", -2.0}, {"y_hi", -0.5}}, 42);
    const std::vector<ModelParams> grid = {ModelParams{1.0, 2e-3, 2e-3, 0.0},
                                           ModelParams{1.0, 1e-3, 1e-3, 0.0}};
    SchemeParams sp = make_scheme_params(6, ModelParams{1.0, 2e-3, 2e-3, 0.0}, DomainBounds{});
    const auto res = global_rate_experiment(U0, grid, {0.4}, sp, 8, DomainBounds{}, 2);
    REQUIRE(res.cells.size() == 2);
    REQUIRE(res.mu_fits.size() == 1);
    CHECK(res.cells[0].l1 > 0.0);
    CHECK(res.cells[1].l1 > 0.0);
    CHECK(res.cells[1].l1 < res.cells[0].l1);
    CHECK(res.mu_norms[0] == doctest::Approx(4e-3));
    // Parallel and serial paths agree bitwise.
    const auto res1 = global_rate_experiment(U0, grid, {0.4}, sp, 8, DomainBounds{}, 1);
    CHECK(res1.cells[0].l1 == res.cells[0].l1);
    CHECK(res1.cells[1].l1 == res.cells[1].l1);
}
