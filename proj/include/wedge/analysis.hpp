#pragma once

#include <vector>

#include "wedge/front_tracking.hpp"
#include "wedge/profile.hpp"
#include "wedge/riemann.hpp"
#include "wedge/types.hpp"
#include "wedge/wave_curves.hpp"

// Exact L1/TV functionals on piecewise-constant profiles, log-log rate
// fitting, the boundary-shock optimal-rate experiment, the u-velocity error,
// and the small-parameter defect checks backing the expansion formulas.

namespace wedge {

enum class L1Norm { SumAbs, Euclid };

// Exact integral of |rho_a - rho_b| + |v_a - v_b| over [y_lo, y_hi] by a
// merged-breakpoint sweep. Infinite endpoints require the corresponding tail
// values to agree exactly (otherwise the integral diverges).
double l1_distance(const Profile& a, const Profile& b, double y_lo, double y_hi,
                   L1Norm norm = L1Norm::SumAbs);

struct RateFit {
    std::vector<double> abscissae;  // sorted ascending, strictly positive
    std::vector<double> errors;
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    double leading_coefficient = 0.0;  // errors[0] / abscissae[0]
};

// Log-log least squares over the `window` smallest abscissae with positive
// error; the leading coefficient always comes from the smallest abscissa.
RateFit fit_rate(std::vector<double> abscissae, std::vector<double> errors, int window = 3);

// L1 norm of the difference of the derived streamwise velocities of the two
// profiles, the full one under p and the other under p.limit().
double u_error(const Profile& full, const Profile& limit, const ModelParams& p, double y_lo,
               double y_hi);

struct OptimalRateCell {
    double eps = 0.0, tau2 = 0.0;
    double alpha1 = 1.0, beta1 = 1.0;      // limit / full shock strengths
    double sigma_limit = 0.0, sigma_full = 0.0;
    double l1 = 0.0, u_err = 0.0;
    double coeff = 0.0;  // l1 / (mu * delta * x)
};

struct OptimalRateResult {
    double a_inf = 1.0, delta = 0.0, x = 1.0;
    std::vector<OptimalRateCell> eps_cells, tau2_cells;
    RateFit eps_fit, tau2_fit;  // errors scaled by 1/(delta*x), so the
                                // leading coefficient is the rate constant
};

// Boundary Riemann datum (1, delta) against a flat wall (b0 = 0): both
// systems produce a single shock to the boundary state, so the L1 error at x
// is exact (two-term decomposition over the region between the shocks and
// the region between the boundary states). Sweeps epsilon at tau2 = 0 and
// tau2 at epsilon = 0.
OptimalRateResult optimal_rate_experiment(double a_inf, double delta,
                                          const std::vector<double>& eps_list,
                                          const std::vector<double>& tau2_list, double x);

// The same exact error evaluated through l1_distance on sampled two-state
// profiles; used to cross-check the formula route.
double optimal_rate_error_by_profiles(double a_inf, double eps, double tau2, double delta,
                                      double x);

struct GlobalRateCell {
    ModelParams p;
    double x = 0.0;
    double l1 = 0.0, u_err = 0.0, tv = 0.0, np_strength = 0.0;
    double runtime_ms = 0.0;
    bool floor_flag = false;  // error within 10x of the reference floor
};

struct GlobalRateResult {
    std::vector<GlobalRateCell> cells;        // mu-major, x-minor order
    std::vector<double> x_list;
    std::vector<double> mu_norms;             // per p_grid entry
    std::vector<RateFit> mu_fits;             // one per x: error vs mu_norm
    std::vector<RateFit> u_mu_fits;           // one per x: u_error vs mu_norm
    std::vector<RateFit> x_fits;              // one per mu > 0: error vs x
    double floor_error = 0.0;                 // limit-system run at nu vs nu_ref
    double floor_x = 0.0;
};

// Runs full-system front tracking on U0 for every entry of p_grid, measures
// the L1 gap to the limit-system reference at nu_ref over (-inf, b0*x], and
// fits exponents in mu (per x) and in x (per mu). The per-grid-entry runs
// are independent; jobs > 1 distributes them over that many threads.
GlobalRateResult global_rate_experiment(const Profile& U0, const std::vector<ModelParams>& p_grid,
                                        const std::vector<double>& x_list, const SchemeParams& sp,
                                        int nu_ref, const DomainBounds& bounds = {},
                                        int jobs = 1);

struct AsymptoticCase {
    double delta = 0.0, eps = 0.0, tau2 = 0.0;
};

struct AsymptoticRow {
    double delta = 0.0, eps = 0.0, tau2 = 0.0;
    double scale = 0.0;  // delta + eps + tau2
    double beta1 = 1.0;
    double d1 = 0.0;  // ((beta1^eps - 1)/eps - a*delta) / delta
    double d2 = 0.0;  // (B(boundary state) - 2*delta/a) / delta
    double d3 = 0.0;  // (phi1 + delta) / delta
};

struct AsymptoticReport {
    std::vector<AsymptoticRow> rows;
    RateFit d1_fit, d2_fit;  // |defect| against scale
    double d3_max = 0.0;
    bool d3_identically_zero = false;  // max |d3| <= 1e-9 across the ladder
};

// Defect ladder for the flat-wall boundary shock with datum (1, delta):
// the normalized expansion defects must vanish linearly in delta+eps+tau2.
AsymptoticReport asymptotic_checks(double a_inf, const std::vector<AsymptoticCase>& cases);

}  // namespace wedge
