#include "wedge/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

namespace wedge {

namespace {

double piece_gap(const State& a, const State& b, L1Norm norm) {
    const double dr = a.rho - b.rho;
    const double dv = a.v - b.v;
    return norm == L1Norm::SumAbs ? std::fabs(dr) + std::fabs(dv) : std::hypot(dr, dv);
}

}  // namespace

double l1_distance(const Profile& a, const Profile& b, double y_lo, double y_hi, L1Norm norm) {
    if (a.values.empty() || b.values.empty()) throw domain_error("l1_distance: empty profile");
    if (std::fabs(a.x - b.x) > 1e-9 * std::max({1.0, std::fabs(a.x), std::fabs(b.x)}))
        throw domain_error("l1_distance: profiles at different x (" + std::to_string(a.x) + " vs " +
                           std::to_string(b.x) + ")");
    if (!(y_hi > y_lo)) return 0.0;

    double lo = y_lo, hi = y_hi;
    if (std::isinf(lo)) {
        if (piece_gap(a.values.front(), b.values.front(), norm) != 0.0)
            throw domain_error("l1_distance: left tails differ, integral diverges");
        lo = std::min(a.breakpoints.empty() ? 0.0 : a.breakpoints.front(),
                      b.breakpoints.empty() ? 0.0 : b.breakpoints.front());
        lo = std::min(lo, hi);
    }
    if (std::isinf(hi)) {
        if (piece_gap(a.values.back(), b.values.back(), norm) != 0.0)
            throw domain_error("l1_distance: right tails differ, integral diverges");
        hi = std::max(a.breakpoints.empty() ? 0.0 : a.breakpoints.back(),
                      b.breakpoints.empty() ? 0.0 : b.breakpoints.back());
        hi = std::max(hi, lo);
    }

    // Merged sweep over both breakpoint lists restricted to [lo, hi].
    double total = 0.0;
    std::size_t ia = 0, ib = 0;
    // Advance to the segment containing lo.
    while (ia < a.breakpoints.size() && a.breakpoints[ia] <= lo) ++ia;
    while (ib < b.breakpoints.size() && b.breakpoints[ib] <= lo) ++ib;
    double y = lo;
    while (y < hi) {
        const double next_a =
            ia < a.breakpoints.size() ? a.breakpoints[ia] : std::numeric_limits<double>::infinity();
        const double next_b =
            ib < b.breakpoints.size() ? b.breakpoints[ib] : std::numeric_limits<double>::infinity();
        const double y_next = std::min({next_a, next_b, hi});
        total += piece_gap(a.values[ia], b.values[ib], norm) * (y_next - y);
        if (y_next == next_a) ++ia;
        if (y_next == next_b) ++ib;
        y = y_next;
    }
    return total;
}

RateFit fit_rate(std::vector<double> abscissae, std::vector<double> errors, int window) {
    if (abscissae.size() != errors.size() || abscissae.empty())
        throw domain_error("fit_rate: need equal-length nonempty inputs");
    std::vector<std::size_t> idx(abscissae.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return abscissae[i] < abscissae[j]; });

    RateFit fit;
    for (std::size_t k : idx) {
        if (!(abscissae[k] > 0.0)) throw domain_error("fit_rate: abscissae must be positive");
        fit.abscissae.push_back(abscissae[k]);
        fit.errors.push_back(errors[k]);
    }
    fit.leading_coefficient = fit.errors.front() / fit.abscissae.front();

    // Log-log least squares over the `window` smallest abscissae with
    // positive error.
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < fit.abscissae.size() && static_cast<int>(lx.size()) < window; ++i) {
        if (!(fit.errors[i] > 0.0)) continue;
        lx.push_back(std::log(fit.abscissae[i]));
        ly.push_back(std::log(fit.errors[i]));
    }
    const std::size_t n = lx.size();
    if (n >= 2) {
        const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
        const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
            syy += (ly[i] - my) * (ly[i] - my);
        }
        if (sxx > 0.0) {
            fit.slope = sxy / sxx;
            fit.intercept = my - fit.slope * mx;
            fit.r2 = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
        }
    }
    return fit;
}

double u_error(const Profile& full, const Profile& limit, const ModelParams& p, double y_lo,
               double y_hi) {
    if (full.values.empty() || limit.values.empty()) throw domain_error("u_error: empty profile");
    const ModelParams p0 = p.limit();
    auto gap = [&](const State& a, const State& b) {
        return std::fabs(u_from_state(a, p) - u_from_state(b, p0));
    };
    double lo = y_lo, hi = y_hi;
    if (std::isinf(lo)) {
        if (gap(full.values.front(), limit.values.front()) != 0.0)
            throw domain_error("u_error: left-tail u values differ, integral diverges");
        lo = std::min(full.breakpoints.empty() ? 0.0 : full.breakpoints.front(),
                      limit.breakpoints.empty() ? 0.0 : limit.breakpoints.front());
        lo = std::min(lo, hi);
    }
    if (std::isinf(hi)) {
        if (gap(full.values.back(), limit.values.back()) != 0.0)
            throw domain_error("u_error: right-tail u values differ, integral diverges");
        hi = std::max(full.breakpoints.empty() ? 0.0 : full.breakpoints.back(),
                      limit.breakpoints.empty() ? 0.0 : limit.breakpoints.back());
        hi = std::max(hi, lo);
    }
    if (!(hi > lo)) return 0.0;

    double total = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < full.breakpoints.size() && full.breakpoints[ia] <= lo) ++ia;
    while (ib < limit.breakpoints.size() && limit.breakpoints[ib] <= lo) ++ib;
    double y = lo;
    while (y < hi) {
        const double next_a = ia < full.breakpoints.size()
                                  ? full.breakpoints[ia]
                                  : std::numeric_limits<double>::infinity();
        const double next_b = ib < limit.breakpoints.size()
                                  ? limit.breakpoints[ib]
                                  : std::numeric_limits<double>::infinity();
        const double y_next = std::min({next_a, next_b, hi});
        total += gap(full.values[ia], limit.values[ib]) * (y_next - y);
        if (y_next == next_a) ++ia;
        if (y_next == next_b) ++ib;
        y = y_next;
    }
    return total;
}

namespace {

struct BoundaryShock {
    double alpha = 1.0;
    State ub;
    double sigma = 0.0;
};

// Flat-wall boundary shock for the datum (1, delta). Both systems produce a
// single compressive family One wave when delta > 0.
BoundaryShock boundary_shock(double a_inf, double eps, double tau2, double delta) {
    const ModelParams p{a_inf, eps, tau2, 0.0};
    const State ul{1.0, delta};
    const RiemannFan fan = solve_boundary(ul, p);
    BoundaryShock bs;
    bs.alpha = fan.alpha(Family::One);
    bs.ub = fan.constant_states.back();
    if (fan.waves.size() != 1 || fan.waves[0].wave.kind != WaveKind::Shock)
        throw solver_error("optimal_rate: expected a single boundary shock");
    bs.sigma = fan.waves[0].xi_lo;
    return bs;
}

// Exact L1 gap at x between the two two-state profiles with shocks at
// sigma_limit*x and sigma_full*x and boundary states ub_limit / ub_full.
double two_shock_l1(const State& ul, const BoundaryShock& lim, const BoundaryShock& ful,
                    double x) {
    const double y0 = lim.sigma * x;
    const double yf = ful.sigma * x;
    auto jump = [](const State& a, const State& b) {
        return std::fabs(a.rho - b.rho) + std::fabs(a.v - b.v);
    };
    // Region between the shocks: one profile has jumped, the other has not;
    // region from max(y0, yf) to the wall at 0: both have jumped.
    return jump(ful.ub, ul) * std::max(y0 - yf, 0.0) +
           jump(lim.ub, ul) * std::max(yf - y0, 0.0) +
           jump(ful.ub, lim.ub) * (0.0 - std::max(y0, yf));
}

double two_shock_u_error(const State& ul, const BoundaryShock& lim, const BoundaryShock& ful,
                         const ModelParams& p_full, double x) {
    const ModelParams p0 = p_full.limit();
    const double y0 = lim.sigma * x;
    const double yf = ful.sigma * x;
    auto ugap = [&](const State& a, const State& b) {
        return std::fabs(u_from_state(a, p_full) - u_from_state(b, p0));
    };
    // Measured over [min shock position, wall]; below both shocks the states
    // coincide and the residual u gap is O(tau2 * delta^4), dropped with the
    // finite interval.
    return ugap(ful.ub, ul) * std::max(y0 - yf, 0.0) + ugap(lim.ub, ul) * std::max(yf - y0, 0.0) +
           ugap(ful.ub, lim.ub) * (0.0 - std::max(y0, yf));
}

}  // namespace

OptimalRateResult optimal_rate_experiment(double a_inf, double delta,
                                          const std::vector<double>& eps_list,
                                          const std::vector<double>& tau2_list, double x) {
    if (!(delta > 0.0) || !(x > 0.0))
        throw domain_error("optimal_rate_experiment: delta and x must be positive");
    OptimalRateResult res;
    res.a_inf = a_inf;
    res.delta = delta;
    res.x = x;
    const State ul{1.0, delta};
    const BoundaryShock lim = boundary_shock(a_inf, 0.0, 0.0, delta);

    auto run = [&](double eps, double tau2) {
        OptimalRateCell cell;
        cell.eps = eps;
        cell.tau2 = tau2;
        cell.alpha1 = lim.alpha;
        cell.sigma_limit = lim.sigma;
        if (eps == 0.0 && tau2 == 0.0) {
            cell.beta1 = lim.alpha;
            cell.sigma_full = lim.sigma;
            return cell;  // errors exactly zero
        }
        const BoundaryShock ful = boundary_shock(a_inf, eps, tau2, delta);
        const ModelParams p_full{a_inf, eps, tau2, 0.0};
        cell.beta1 = ful.alpha;
        cell.sigma_full = ful.sigma;
        cell.l1 = two_shock_l1(ul, lim, ful, x);
        cell.u_err = two_shock_u_error(ul, lim, ful, p_full, x);
        cell.coeff = cell.l1 / ((eps + tau2) * delta * x);
        return cell;
    };

    std::vector<double> eps_abs, eps_err, tau_abs, tau_err;
    for (double e : eps_list) {
        res.eps_cells.push_back(run(e, 0.0));
        if (e > 0.0) {
            eps_abs.push_back(e);
            eps_err.push_back(res.eps_cells.back().l1 / (delta * x));
        }
    }
    for (double t : tau2_list) {
        res.tau2_cells.push_back(run(0.0, t));
        if (t > 0.0) {
            tau_abs.push_back(t);
            tau_err.push_back(res.tau2_cells.back().l1 / (delta * x));
        }
    }
    if (!eps_abs.empty()) res.eps_fit = fit_rate(eps_abs, eps_err);
    if (!tau_abs.empty()) res.tau2_fit = fit_rate(tau_abs, tau_err);
    return res;
}

double optimal_rate_error_by_profiles(double a_inf, double eps, double tau2, double delta,
                                      double x) {
    const State ul{1.0, delta};
    const BoundaryShock lim = boundary_shock(a_inf, 0.0, 0.0, delta);
    const BoundaryShock ful = boundary_shock(a_inf, eps, tau2, delta);
    Profile a, b;
    a.x = b.x = x;
    a.breakpoints = {lim.sigma * x};
    a.values = {ul, lim.ub};
    b.breakpoints = {ful.sigma * x};
    b.values = {ul, ful.ub};
    const double lo = std::min(lim.sigma, ful.sigma) * x - 1.0;
    return l1_distance(a, b, lo, 0.0);
}

GlobalRateResult global_rate_experiment(const Profile& U0, const std::vector<ModelParams>& p_grid,
                                        const std::vector<double>& x_list, const SchemeParams& sp,
                                        int nu_ref, const DomainBounds& bounds, int jobs) {
    if (p_grid.empty() || x_list.empty())
        throw domain_error("global_rate_experiment: empty parameter grid or x list");
    for (std::size_t i = 1; i < x_list.size(); ++i)
        if (!(x_list[i] > x_list[i - 1]))
            throw domain_error("global_rate_experiment: x_list must be strictly increasing");
    const ModelParams p0 = p_grid.front().limit();
    for (const ModelParams& p : p_grid)
        if (p.a_inf != p0.a_inf || p.b0 != p0.b0)
            throw domain_error("global_rate_experiment: a_inf and b0 must be fixed across the grid");

    GlobalRateResult res;
    res.x_list = x_list;

    // One reference run of the limit system at nu_ref, snapshotted at each x.
    SchemeParams sp_ref = sp;
    sp_ref.nu = nu_ref;
    sp_ref.varrho = 0.0;
    sp_ref.speed_perturb = 0.0;
    sp_ref.lambda_hat = 0.0;
    Tracker ref(p0, sp_ref, bounds);
    ref.set_initial(U0);
    std::vector<Profile> ref_at;
    for (double x : x_list) {
        ref.advance_to(x);
        ref_at.push_back(ref.profile());
    }

    // Resolution floor: the same limit system at the working resolution.
    {
        Tracker fl(p0, sp, bounds);
        fl.set_initial(U0);
        fl.advance_to(x_list.back());
        res.floor_x = x_list.back();
        res.floor_error = l1_distance(fl.profile(), ref_at.back(),
                                      -std::numeric_limits<double>::infinity(),
                                      p0.b0 * x_list.back());
    }

    const double inf = std::numeric_limits<double>::infinity();
    for (const ModelParams& p : p_grid) res.mu_norms.push_back(p.mu_norm());
    res.cells.resize(p_grid.size() * x_list.size());
    auto run_entry = [&](std::size_t g) {
        const ModelParams& p = p_grid[g];
        const auto t0 = std::chrono::steady_clock::now();
        Tracker tr(p, sp, bounds);
        tr.set_initial(U0);
        for (std::size_t k = 0; k < x_list.size(); ++k) {
            tr.advance_to(x_list[k]);
            const Profile prof = tr.profile();
            GlobalRateCell cell;
            cell.p = p;
            cell.x = x_list[k];
            cell.l1 = l1_distance(prof, ref_at[k], -inf, p.b0 * x_list[k]);
            cell.u_err = u_error(prof, ref_at[k], p, -inf, p.b0 * x_list[k]);
            const Diagnostics d = diagnostics(prof);
            cell.tv = d.tv;
            cell.np_strength = d.np_total_strength;
            cell.floor_flag = cell.l1 < 10.0 * res.floor_error;
            cell.runtime_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            res.cells[g * x_list.size() + k] = cell;
        }
    };
    if (jobs <= 1 || p_grid.size() <= 1) {
        for (std::size_t g = 0; g < p_grid.size(); ++g) run_entry(g);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t g; (g = next.fetch_add(1)) < p_grid.size();) {
                    try {
                        run_entry(g);
                    } catch (...) {
                        errs[static_cast<std::size_t>(t)] = std::current_exception();
                        return;
                    }
                }
            });
        for (std::thread& th : pool) th.join();
        for (const std::exception_ptr& e : errs)
            if (e) std::rethrow_exception(e);
    }

    // Fits: error vs mu at each fixed x; error vs x for each mu > 0.
    for (std::size_t k = 0; k < x_list.size(); ++k) {
        std::vector<double> mus, errs, uerrs;
        for (std::size_t g = 0; g < p_grid.size(); ++g) {
            if (!(res.mu_norms[g] > 0.0)) continue;
            mus.push_back(res.mu_norms[g]);
            errs.push_back(res.cells[g * x_list.size() + k].l1);
            uerrs.push_back(res.cells[g * x_list.size() + k].u_err);
        }
        if (mus.size() >= 2) {
            res.mu_fits.push_back(fit_rate(mus, errs, static_cast<int>(mus.size())));
            res.u_mu_fits.push_back(fit_rate(mus, uerrs, static_cast<int>(mus.size())));
        }
    }
    for (std::size_t g = 0; g < p_grid.size(); ++g) {
        if (!(res.mu_norms[g] > 0.0)) continue;
        std::vector<double> xs, errs;
        for (std::size_t k = 0; k < x_list.size(); ++k) {
            xs.push_back(x_list[k]);
            errs.push_back(res.cells[g * x_list.size() + k].l1);
        }
        res.x_fits.push_back(fit_rate(xs, errs, static_cast<int>(xs.size())));
    }
    return res;
}

AsymptoticReport asymptotic_checks(double a_inf, const std::vector<AsymptoticCase>& cases) {
    AsymptoticReport rep;
    std::vector<double> scales, d1s, d2s;
    for (const AsymptoticCase& c : cases) {
        if (!(c.delta > 0.0)) throw domain_error("asymptotic_checks: delta must be positive");
        const BoundaryShock bs = boundary_shock(a_inf, c.eps, c.tau2, c.delta);
        const ModelParams p{a_inf, c.eps, c.tau2, 0.0};
        AsymptoticRow row;
        row.delta = c.delta;
        row.eps = c.eps;
        row.tau2 = c.tau2;
        row.scale = c.delta + c.eps + c.tau2;
        row.beta1 = bs.alpha;
        row.d1 = (powm1_over(bs.alpha, c.eps) - a_inf * c.delta) / c.delta;
        row.d2 = (bernoulli_B(bs.ub, p) - 2.0 * c.delta / a_inf) / c.delta;
        row.d3 = ((bs.ub.v - c.delta) + c.delta) / c.delta;
        rep.rows.push_back(row);
        rep.d3_max = std::max(rep.d3_max, std::fabs(row.d3));
        scales.push_back(row.scale);
        d1s.push_back(std::fabs(row.d1));
        d2s.push_back(std::fabs(row.d2));
    }
    if (scales.size() >= 2) {
        rep.d1_fit = fit_rate(scales, d1s, static_cast<int>(scales.size()));
        rep.d2_fit = fit_rate(scales, d2s, static_cast<int>(scales.size()));
    }
    rep.d3_identically_zero = rep.d3_max <= 1e-9;
    return rep;
}

}  // namespace wedge
