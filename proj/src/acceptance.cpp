#include "wedge/acceptance.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "wedge/analysis.hpp"
#include "wedge/config.hpp"
#include "wedge/experiments.hpp"
#include "wedge/initial_data.hpp"
#include "wedge/io.hpp"
#include "wedge/riemann.hpp"
#include "wedge/semigroup.hpp"
#include "wedge/wave_curves.hpp"

namespace wedge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string g4(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

void parallel_for(int jobs, std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errs(n);
    std::vector<std::thread> pool;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    for (std::size_t t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    fn(i);
                } catch (...) {
                    errs[i] = std::current_exception();
                }
            }
        });
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errs)
        if (e) std::rethrow_exception(e);
}

struct Shared {
    std::filesystem::path dir;
    int jobs = 1;
    OptimalRateResult opt1, opt2;
    bool have_opt = false;
    Profile u0_c2;
    std::vector<ModelParams> grid_c2;
    SchemeParams sp_c2;
    GlobalRateResult glob;
    bool have_glob = false;
};

void write_results_schema_csv(const std::filesystem::path& path,
                              const std::vector<std::array<double, 12>>& rows) {
    std::ofstream out(path);
    if (!out) throw error("cannot open " + path.string() + " for writing");
    out << "a_inf,epsilon,tau2,b0,delta,nu,x,l1_error,u_error,tv,np_strength,runtime_ms\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << fmt(r[i]);
        out << '\n';
    }
}

void write_optimal_csv(const std::filesystem::path& path, const OptimalRateResult& res) {
    std::vector<std::array<double, 12>> rows;
    auto add = [&](const OptimalRateCell& c) {
        rows.push_back({res.a_inf, c.eps, c.tau2, 0.0, res.delta, 0.0, res.x, c.l1, c.u_err, 0.0,
                        0.0, 0.0});
    };
    for (const OptimalRateCell& c : res.eps_cells) add(c);
    for (const OptimalRateCell& c : res.tau2_cells) add(c);
    write_results_schema_csv(path, rows);
}

// --- criterion 1: optimal-rate leading coefficients -------------------------

void c1_optimal_rate(Shared& sh, CriterionResult& r) {
    const std::vector<double> sweep{4e-3, 2e-3, 1e-3};
    sh.opt1 = optimal_rate_experiment(1.0, 1e-3, sweep, sweep, 1.0);
    sh.opt2 = optimal_rate_experiment(2.0, 1e-3, sweep, sweep, 1.0);
    sh.have_opt = true;
    write_optimal_csv(sh.dir / "optimal_rate_a1.csv", sh.opt1);
    write_optimal_csv(sh.dir / "optimal_rate_a2.csv", sh.opt2);

    std::string detail;
    bool pass = true;
    for (const OptimalRateResult* res : {&sh.opt1, &sh.opt2}) {
        const double a = res->a_inf;
        const double ce = res->eps_cells.back().coeff;
        const double ct = res->tau2_cells.back().coeff;
        const double te = (2.0 * a + 1.0) / (8.0 * a);
        const double tt = (2.0 * a + 1.0) / (2.0 * a * a * a);
        const bool oke = std::fabs(ce - te) <= 0.1 * te;
        const bool okt = std::fabs(ct - tt) <= 0.1 * tt;
        pass = pass && oke && okt;
        detail += "a=" + g4(a) + " eps " + g4(ce) + "/" + g4(te) + (oke ? " ok" : " MISS") +
                  " tau2 " + g4(ct) + "/" + g4(tt) + (okt ? " ok" : " MISS") + "; ";
    }
    // The eps coefficients scale with delta; record the delta-normalized
    // values so the miss is interpretable.
    detail += "eps coeff/delta: " + g4(sh.opt1.eps_cells.back().coeff / sh.opt1.delta) + " (a=1), " +
              g4(sh.opt2.eps_cells.back().coeff / sh.opt2.delta) + " (a=2)";
    r.pass = pass;
    r.detail = detail;
}

// --- criterion 2: first-order rate in mu on random BV data ------------------

void c2_global_rate(Shared& sh, CriterionResult& r) {
    sh.u0_c2 = builtin_initial_data("random_bv", {{"tv", 0.5}, {"pieces", 20.0}}, 7, {});
    for (double mu : {8e-3, 4e-3, 2e-3, 1e-3})
        sh.grid_c2.push_back(ModelParams{1.0, 0.5 * mu, 0.5 * mu, 0.0});
    sh.sp_c2.nu = 10;
    const std::vector<double> xs{0.5, 1.0, 2.0};
    sh.glob = global_rate_experiment(sh.u0_c2, sh.grid_c2, xs, sh.sp_c2, 14, {}, sh.jobs);
    sh.have_glob = true;

    std::vector<std::array<double, 12>> rows;
    for (const GlobalRateCell& c : sh.glob.cells)
        rows.push_back({c.p.a_inf, c.p.epsilon, c.p.tau2, c.p.b0, 0.0,
                        static_cast<double>(sh.sp_c2.nu), c.x, c.l1, c.u_err, c.tv, c.np_strength,
                        c.runtime_ms});
    write_results_schema_csv(sh.dir / "global_rate.csv", rows);

    const double mu_slope = sh.glob.mu_fits.at(1).slope;  // x = 1
    double worst_x = 0.0;
    for (const RateFit& f : sh.glob.x_fits) worst_x = std::max(worst_x, f.slope);
    const bool mu_ok = mu_slope >= 0.9 && mu_slope <= 1.1;
    const bool x_ok = worst_x <= 1.1;
    bool floor_ok = true;
    for (const GlobalRateCell& c : sh.glob.cells) floor_ok = floor_ok && !c.floor_flag;
    r.pass = mu_ok && x_ok;
    r.detail = "mu-slope(x=1) " + g4(mu_slope) + (mu_ok ? " ok" : " MISS") + "; max x-slope " +
               g4(worst_x) + (x_ok ? " ok" : " MISS") + "; floor " + g4(sh.glob.floor_error) +
               (floor_ok ? "" : " (some cells near floor)");
}

// --- criterion 3: Riemann solver fidelity ------------------------------------

void c3_riemann_fidelity(const Shared& sh, CriterionResult& r) {
    constexpr int kInterior = 1000, kBoundary = 200;
    std::vector<double> recomp(kInterior, 0.0), rh(kInterior, 0.0), trace(kBoundary, 0.0);
    std::vector<int> lax_bad(kInterior, 0);

    parallel_for(sh.jobs, kInterior + kBoundary, [&](std::size_t i) {
        std::mt19937_64 rng(0xC3000000ULL + i);
        auto uni = [&](double lo, double hi) {
            return std::uniform_real_distribution<double>(lo, hi)(rng);
        };
        const double a = uni(0.5, 2.0);
        const double eps = uni(0.0, 1e-2);
        const double tau2 = uni(0.0, 1e-2 - eps);
        if (i < kInterior) {
            const ModelParams p{a, eps, tau2, 0.0};
            const State ul{uni(0.5, 2.0), uni(-0.5, 0.5)};
            const State ur{uni(0.5, 2.0), uni(-0.5, 0.5)};
            const RiemannFan fan = solve_interior(ul, ur, p);
            const State got = wave_map_Phi(fan.alpha(Family::One), fan.alpha(Family::Two), ul, p);
            recomp[i] = std::fabs(got.rho - ur.rho) + std::fabs(got.v - ur.v);
            for (std::size_t w = 0; w < fan.waves.size(); ++w) {
                if (fan.waves[w].wave.kind != WaveKind::Shock) continue;
                const State& L = fan.constant_states[w];
                const State& R = fan.constant_states[w + 1];
                const double sigma = fan.waves[w].xi_lo;
                const double r1 = sigma * (R.rho * w_factor(R, p) - L.rho * w_factor(L, p)) -
                                  (R.rho * R.v - L.rho * L.v);
                const double r2 = sigma * (R.v - L.v) - (psi(R, p) - psi(L, p));
                rh[i] = std::max({rh[i], std::fabs(r1), std::fabs(r2)});
                const auto lamL = eigenvalues(L, p);
                const auto lamR = eigenvalues(R, p);
                bool ok;
                if (fan.waves[w].wave.family == Family::One)
                    ok = lamR[0] < sigma && sigma < lamL[0] && sigma < lamR[1];
                else
                    ok = lamR[1] < sigma && sigma < lamL[1] && sigma > lamL[0];
                if (!ok) lax_bad[i] = 1;
            }
        } else {
            const double b0 = uni(-0.3, 0.0);
            const ModelParams p{a, eps, tau2, b0};
            const State ul{uni(0.5, 2.0), uni(-0.5, 0.5)};
            const RiemannFan fan = solve_boundary(ul, p);
            const State& ub = fan.constant_states.back();
            trace[i - kInterior] = std::fabs(ub.v - b0 * w_factor(ub, p));
        }
    });

    const double worst_rec = *std::max_element(recomp.begin(), recomp.end());
    const double worst_rh = *std::max_element(rh.begin(), rh.end());
    const double worst_tr = *std::max_element(trace.begin(), trace.end());
    int lax_fails = 0;
    for (int b : lax_bad) lax_fails += b;
    r.pass = worst_rec < 1e-10 && worst_rh < 1e-10 && lax_fails == 0 && worst_tr < 1e-12;
    r.detail = "max recomposition " + g4(worst_rec) + ", max RH " + g4(worst_rh) +
               ", Lax violations " + std::to_string(lax_fails) + ", max boundary trace " +
               g4(worst_tr);
}

// --- criterion 4: limit-system closed forms ----------------------------------

void c4_limit_closed_forms(const Shared&, CriterionResult& r) {
    const double a = 1.3;
    const ModelParams p{a, 0.0, 0.0, 0.0};
    const State left{1.1, 0.07};
    double worst_phi = 0.0, worst_hug = 0.0, worst_ode = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double alpha = 0.2 * std::pow(25.0, i / 199.0);  // log grid on [0.2, 5]
        const double shock_form =
            -std::sqrt(2.0 * (alpha - 1.0) * std::log(alpha) / (alpha + 1.0)) / a;
        const double exp1 = alpha >= 1.0 ? shock_form : -std::log(alpha) / a;
        const double exp2 = alpha <= 1.0 ? shock_form : std::log(alpha) / a;
        const double p1 = phi(alpha, Family::One, left, p);
        const double p2 = phi(alpha, Family::Two, left, p);
        worst_phi = std::max({worst_phi, std::fabs(p1 - exp1), std::fabs(p2 - exp2)});
        // Independent validation against the defining relations.
        if (alpha > 1.0)
            worst_hug = std::max(worst_hug, std::fabs(hugoniot(p1, alpha, left, p)));
        else if (alpha < 1.0)
            worst_ode = std::max(worst_ode, rarefaction_offset_check(alpha, Family::One, left, p));
        if (alpha < 1.0)
            worst_hug = std::max(worst_hug, std::fabs(hugoniot(p2, alpha, left, p)));
        else if (alpha > 1.0)
            worst_ode = std::max(worst_ode, rarefaction_offset_check(alpha, Family::Two, left, p));
    }

    std::mt19937_64 rng(44);
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    int lam_bad = 0;
    for (int i = 0; i < 200; ++i) {
        const double ai = uni(0.5, 2.0);
        const ModelParams pl{ai, 0.0, 0.0, 0.0};
        const State s{uni(0.2, 5.0), uni(-2.0, 2.0)};
        const auto lam = eigenvalues(s, pl);
        if (lam[0] != s.v - 1.0 / ai || lam[1] != s.v + 1.0 / ai) ++lam_bad;
    }
    r.pass = worst_phi <= 1e-12 && worst_hug <= 1e-12 && worst_ode <= 1e-9 && lam_bad == 0;
    r.detail = "max |phi - closed form| " + g4(worst_phi) + ", max shock relation residual " +
               g4(worst_hug) + ", max fan ODE residual " + g4(worst_ode) +
               ", eigenvalue mismatches " + std::to_string(lam_bad);
}

// --- criterion 5: front-tracking budgets --------------------------------------

void c5_budgets(const Shared& sh, CriterionResult& r) {
    const int nus[3] = {8, 9, 10};
    const int kSeeds = 10;
    struct RunOut {
        double np = 0.0, tv0 = 0.0, tv_peak = 0.0, fan_max = 0.0;
        int nu = 0;
    };
    std::vector<RunOut> outs(static_cast<std::size_t>(kSeeds) * 3);
    parallel_for(sh.jobs, outs.size(), [&](std::size_t k) {
        const std::uint64_t seed = 1 + k / 3;
        const int nu = nus[k % 3];
        const Profile u0 =
            builtin_initial_data("random_bv", {{"tv", 0.8}, {"pieces", 6.0}}, seed, {});
        const ModelParams p{1.0, 1e-3, 1e-3, -0.15};
        SchemeParams sp;
        sp.nu = nu;
        Tracker tr(p, sp, {});
        tr.set_initial(u0);
        tr.advance_to(1.0);
        outs[k] = RunOut{diagnostics(tr.profile()).np_total_strength, tr.tv_initial(),
                         tr.tv_peak(), tr.max_rarefaction_seen(), nu};
    });

    {
        std::ofstream bj(sh.dir / "budgets.csv");
        bj << "seed,nu,np_strength,tv_initial,tv_peak,max_fan_piece\n";
        for (std::size_t k = 0; k < outs.size(); ++k)
            bj << 1 + k / 3 << ',' << outs[k].nu << ',' << fmt(outs[k].np) << ','
               << fmt(outs[k].tv0) << ',' << fmt(outs[k].tv_peak) << ',' << fmt(outs[k].fan_max)
               << '\n';
    }

    bool fan_ok = true, tv_ok = true;
    double mean_np[3] = {0.0, 0.0, 0.0};
    for (const RunOut& o : outs) {
        if (!(o.fan_max < 1.0 / o.nu)) fan_ok = false;
        if (!(o.tv_peak <= 3.0 * o.tv0)) tv_ok = false;
        for (int j = 0; j < 3; ++j)
            if (o.nu == nus[j]) mean_np[j] += o.np / kSeeds;
    }
    const bool np_present = mean_np[0] > 0.0 && mean_np[1] > 0.0 && mean_np[2] > 0.0;
    const double ratio1 = np_present ? mean_np[0] / mean_np[1] : 0.0;
    const double ratio2 = np_present ? mean_np[1] / mean_np[2] : 0.0;
    const bool decay_ok = np_present && ratio1 >= 1.8 && ratio2 >= 1.8;
    r.pass = fan_ok && tv_ok && decay_ok;
    r.detail = "fan pieces < 1/nu " + std::string(fan_ok ? "ok" : "MISS") + "; tv peak <= 3x " +
               (tv_ok ? "ok" : "MISS") + "; mean NP " + g4(mean_np[0]) + " / " + g4(mean_np[1]) +
               " / " + g4(mean_np[2]) + " decay x" + g4(ratio1) + ", x" + g4(ratio2) +
               (decay_ok ? " ok" : " MISS");
}

// --- criterion 6: semigroup Lipschitz stability and composition ---------------

void c6_semigroup(const Shared& sh, CriterionResult& r) {
    const ModelParams p{1.0, 0.0, 0.0, -0.05};
    const double x = 0.5;
    const int kPairs = 50;
    std::vector<double> r10(kPairs, 0.0), r12(kPairs, 0.0);
    parallel_for(sh.jobs, kPairs, [&](std::size_t i) {
        const Profile A = builtin_initial_data("random_bv", {{"tv", 0.4}, {"pieces", 10.0}},
                                               100 + i, {});
        const Profile B = builtin_initial_data("random_bv", {{"tv", 0.4}, {"pieces", 10.0}},
                                               500 + i, {});
        r10[i] = lipschitz_ratio(A, B, x, 10, p);
        r12[i] = lipschitz_ratio(A, B, x, 12, p);
    });
    const double l10 = *std::max_element(r10.begin(), r10.end());
    const double l12 = *std::max_element(r12.begin(), r12.end());
    {
        std::ofstream lf(sh.dir / "lipschitz.csv");
        lf << "pair,ratio_nuref10,ratio_nuref12\n";
        for (int i = 0; i < kPairs; ++i)
            lf << i << ',' << fmt(r10[i]) << ',' << fmt(r12[i]) << '\n';
    }
    const bool bounded = l10 <= 10.0 && l12 <= 10.0;
    const bool stable = std::fabs(l12 - l10) <= 0.2 * l10;

    // Composition defect ladder on a 3-wave datum.
    const Profile u =
        builtin_initial_data("n_wave", {{"amplitude", 0.15}, {"pieces", 3.0}}, 0, {});
    double d[3] = {0.0, 0.0, 0.0};
    const int refs[3] = {8, 10, 12};
    for (int j = 0; j < 3; ++j) {
        const Profile a1 = semigroup_apply(u, 0.4, refs[j], p);
        const Profile b = semigroup_apply(a1, 0.6, refs[j], p);
        const Profile c = semigroup_apply(u, 1.0, refs[j], p);
        d[j] = l1_distance(b, c, -kInf, p.b0 * 1.0);
    }
    const bool converged = d[0] < 1e-13;
    const bool decreasing = converged || (d[2] < d[1] && d[1] < d[0]);
    r.pass = bounded && stable && decreasing;
    r.detail = "Lipschitz max " + g4(l10) + " (nu_ref 10) vs " + g4(l12) + " (nu_ref 12) " +
               (bounded && stable ? "ok" : "MISS") + "; composition defect " + g4(d[0]) + " > " +
               g4(d[1]) + " > " + g4(d[2]) + (decreasing ? " ok" : " MISS");
}

// --- criterion 7: error functional and local probes ---------------------------

void c7_error_functional(const Shared& sh, CriterionResult& r) {
    if (!sh.have_glob) {
        r.pass = false;
        r.detail = "skipped: criterion 2 artifacts unavailable";
        return;
    }
    const ModelParams p = sh.grid_c2.at(1);  // mu = 4e-3
    const SchemeParams sp = sh.sp_c2;
    const int nu_ref = 14;

    double l_meas = 0.0;
    for (int i = 0; i < 10; ++i) {
        const Profile A = builtin_initial_data("random_bv", {{"tv", 0.5}, {"pieces", 20.0}},
                                               300 + static_cast<std::uint64_t>(i), {});
        const Profile B = builtin_initial_data("random_bv", {{"tv", 0.5}, {"pieces", 20.0}},
                                               700 + static_cast<std::uint64_t>(i), {});
        l_meas = std::max(l_meas, lipschitz_ratio(A, B, 0.5, 12, p));
    }
    const double l_used = 1.5 * std::max(l_meas, 1.0);

    const std::vector<double> xs{0.5, 1.0, 2.0};
    bool bound_ok = true;
    std::string bound_txt;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const ErrorFunctionalResult ef =
            error_functional(sh.u0_c2, xs[k], 0.0, 8, l_used, nu_ref, p, sp);
        write_integrand_csv((sh.dir / ("integrand_x" + std::to_string(k) + ".csv")).string(), ef);
        const double direct = sh.glob.cells[1 * xs.size() + k].l1;
        const bool ok = ef.value + 1e-12 >= direct;
        bound_ok = bound_ok && ok;
        bound_txt += "x=" + g4(xs[k]) + ": " + g4(ef.value) + (ok ? " >= " : " < ") + g4(direct) +
                     "; ";
    }

    // Probe ratio stability under h-halving, compared through per-class
    // maxima (individually tiny windows are noise-dominated).
    Tracker tr(p, sp, {});
    tr.set_initial(sh.u0_c2);
    tr.advance_to(0.5);
    const Profile prof = tr.profile();
    // The local estimates describe propagation before the next interaction,
    // so cap h by the profile's first approach time. Approach speeds are
    // padded by the fan spread 1/(a nu) because the reference re-splits each
    // jump into a small wave group around the tracked speed.
    double t_safe = std::numeric_limits<double>::infinity();
    const double pad = 1.0 / (p.a_inf * sp.nu);
    for (std::size_t i = 0; i + 1 < prof.fronts.size(); ++i) {
        const double gap = prof.fronts[i + 1].y_at - prof.fronts[i].y_at;
        const double ds = prof.fronts[i].speed - prof.fronts[i + 1].speed + pad;
        if (ds > 0.0) t_safe = std::min(t_safe, gap / ds);
    }
    if (!prof.fronts.empty()) {
        const double gap = p.b0 * prof.x - prof.fronts.back().y_at;
        const double ds = prof.fronts.back().speed - p.b0 + pad;
        if (ds > 0.0) t_safe = std::min(t_safe, gap / ds);
    }
    double h = std::ldexp(1.0, -10);
    while (h > 0.25 * t_safe && h > std::ldexp(1.0, -24)) h *= 0.5;
    const std::vector<ProbeRow> rows1 = local_error_probe(prof, p, h, nu_ref, sp);
    const std::vector<ProbeRow> rows2 = local_error_probe(prof, p, 0.5 * h, nu_ref, sp);
    {
        std::ofstream pf(sh.dir / "probes.csv");
        pf << "h,front_id,family,kind,strength,window_lo,window_hi,raw_error,ratio,window_"
              "reduced,is_boundary\n";
        for (const auto* rows : {&rows1, &rows2})
            for (const ProbeRow& row : *rows)
                pf << fmt(rows == &rows1 ? h : 0.5 * h) << ',' << row.front_id << ','
                   << to_string(row.family) << ',' << to_string(row.kind) << ','
                   << fmt(row.strength) << ',' << fmt(row.window_lo) << ',' << fmt(row.window_hi)
                   << ',' << fmt(row.raw_error) << ',' << fmt(row.ratio) << ','
                   << (row.window_reduced ? 1 : 0) << ',' << (row.is_boundary ? 1 : 0) << '\n';
    }
    auto agg = [](const std::vector<ProbeRow>& rows) {
        double phys = 0.0, np = 0.0, bnd = 0.0;
        for (const ProbeRow& row : rows) {
            if (row.is_boundary)
                bnd = std::max(bnd, row.ratio);
            else if (row.window_reduced)
                continue;  // a clipped window mixes neighbouring contributions
            else if (row.kind == WaveKind::NonPhysical)
                np = std::max(np, row.ratio);
            else
                phys = std::max(phys, row.ratio);
        }
        return std::array<double, 3>{phys, np, bnd};
    };
    const auto a1 = agg(rows1), a2 = agg(rows2);
    bool probe_ok = true;
    std::string probe_txt;
    const char* cls[3] = {"physical", "np", "boundary"};
    for (int j = 0; j < 3; ++j) {
        const double hi = std::max(a1[j], a2[j]);
        if (hi < 1e-12) continue;  // class absent or fully converged
        const bool ok = std::fabs(a1[j] - a2[j]) <= 0.25 * hi;
        probe_ok = probe_ok && ok;
        probe_txt += std::string(cls[j]) + " " + g4(a1[j]) + "->" + g4(a2[j]) +
                     (ok ? " ok; " : " MISS; ");
    }
    r.pass = bound_ok && probe_ok;
    r.detail = bound_txt + "probe max-ratios: " + probe_txt + "(L_used " + g4(l_used) + ")";
}

// --- criterion 8: velocity error ----------------------------------------------

void c8_velocity_error(const Shared& sh, CriterionResult& r) {
    if (!sh.have_opt || !sh.have_glob) {
        r.pass = false;
        r.detail = "skipped: earlier artifacts unavailable";
        return;
    }
    auto u_slope = [](const std::vector<OptimalRateCell>& cells, bool eps_axis) {
        std::vector<double> xs, es;
        for (const OptimalRateCell& c : cells) {
            const double v = eps_axis ? c.eps : c.tau2;
            if (v > 0.0 && c.u_err > 0.0) {
                xs.push_back(v);
                es.push_back(c.u_err);
            }
        }
        return fit_rate(xs, es, static_cast<int>(xs.size())).slope;
    };
    const double s1e = u_slope(sh.opt1.eps_cells, true);
    const double s1t = u_slope(sh.opt1.tau2_cells, false);
    const double s2e = u_slope(sh.opt2.eps_cells, true);
    const double s2t = u_slope(sh.opt2.tau2_cells, false);
    const double sg = sh.glob.u_mu_fits.at(1).slope;
    auto in_band = [](double s) { return s >= 0.9 && s <= 1.1; };
    const bool slopes_ok = in_band(s1e) && in_band(s1t) && in_band(s2e) && in_band(s2t) &&
                           in_band(sg);

    std::mt19937_64 rng(88);
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    double worst_id = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double eps = uni(0.0, 0.04);
        const ModelParams p{uni(0.5, 2.0), eps, uni(0.0, 0.05 - eps), 0.0};
        const State s{uni(0.2, 5.0), uni(-2.0, 2.0)};
        worst_id = std::max(worst_id, std::fabs(u_from_state(s, p) + psi(s, p)));
    }
    const bool id_ok = worst_id <= 1e-12;
    r.pass = slopes_ok && id_ok;
    r.detail = "u-error slopes: eps " + g4(s1e) + "/" + g4(s2e) + ", tau2 " + g4(s1t) + "/" +
               g4(s2t) + ", mu(x=1) " + g4(sg) + (slopes_ok ? " ok" : " MISS") +
               "; max |u + psi| " + g4(worst_id) + (id_ok ? " ok" : " MISS");
}

// --- criterion 9: expansion-defect asymptotics ---------------------------------

void c9_asymptotics(const Shared& sh, CriterionResult& r) {
    const double as[3] = {0.5, 1.0, 2.0};
    const char* tags[3] = {"a05", "a1", "a2"};
    bool pass = true;
    std::string detail;
    for (int j = 0; j < 3; ++j) {
        std::vector<AsymptoticCase> cases;
        for (double t : {1e-2, 1e-3, 1e-4, 1e-5}) cases.push_back(AsymptoticCase{t, t, t});
        const AsymptoticReport rep = asymptotic_checks(as[j], cases);
        std::ofstream out(sh.dir / ("asymptotics_" + std::string(tags[j]) + ".csv"));
        out << "a_inf,delta,eps,tau2,scale,beta1,d1,d2,d3\n";
        for (const AsymptoticRow& row : rep.rows)
            out << fmt(as[j]) << ',' << fmt(row.delta) << ',' << fmt(row.eps) << ','
                << fmt(row.tau2) << ',' << fmt(row.scale) << ',' << fmt(row.beta1) << ','
                << fmt(row.d1) << ',' << fmt(row.d2) << ',' << fmt(row.d3) << '\n';
        auto in_band = [](double s) { return s >= 0.9 && s <= 1.1; };
        const bool ok =
            in_band(rep.d1_fit.slope) && in_band(rep.d2_fit.slope) && rep.d3_identically_zero;
        pass = pass && ok;
        detail += "a=" + g4(as[j]) + " d1 " + g4(rep.d1_fit.slope) + " d2 " +
                  g4(rep.d2_fit.slope) + " |d3| " + g4(rep.d3_max) + (ok ? " ok; " : " MISS; ");
    }
    r.pass = pass;
    r.detail = detail;
}

// --- criterion 10: determinism --------------------------------------------------

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// results.csv carries wall-clock runtime in its last column; strip it before
// comparing.
std::string drop_last_column(const std::string& text) {
    std::string out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t comma = line.rfind(',');
        out += comma == std::string::npos ? line : line.substr(0, comma);
        out += '\n';
    }
    return out;
}

void c10_determinism(const Shared& sh, CriterionResult& r) {
    const std::filesystem::path d1 = sh.dir / "det1", d2 = sh.dir / "det2";
    // Both passes write into the same path (renamed aside afterwards) so the
    // config echo in manifest.txt, which includes output_dir, is comparable.
    const std::filesystem::path work = sh.dir / "det_work";
    auto run_once = [&]() {
        std::ostringstream sink;
        std::filesystem::remove_all(work);
        for (const char* preset : {"optimal_rate", "asymptotic_checks", "front_tracking_run"}) {
            ExperimentConfig cfg = preset_config(preset);
            cfg.jobs = sh.jobs;
            if (cfg.experiment == ExperimentKind::front_tracking_run)
                cfg.x_sweep = {0.5, 0.75};  // keep the determinism probe quick
            cfg.output_dir = (work / preset).string();
            run_experiment(cfg, sink);
        }
    };
    run_once();
    std::filesystem::remove_all(d1);
    std::filesystem::rename(work, d1);
    run_once();
    std::filesystem::remove_all(d2);
    std::filesystem::rename(work, d2);

    int compared = 0, mismatched = 0;
    std::string first_bad;
    for (auto it = std::filesystem::recursive_directory_iterator(d1);
         it != std::filesystem::recursive_directory_iterator(); ++it) {
        if (!it->is_regular_file()) continue;
        const std::filesystem::path rel = std::filesystem::relative(it->path(), d1);
        std::string a = read_file(it->path());
        std::string b = read_file(d2 / rel);
        if (rel.filename() == "results.csv") {
            a = drop_last_column(a);
            b = drop_last_column(b);
        }
        ++compared;
        if (a != b) {
            ++mismatched;
            if (first_bad.empty()) first_bad = rel.string();
        }
    }
    r.pass = compared > 0 && mismatched == 0;
    r.detail = std::to_string(compared) + " files compared across two runs, " +
               std::to_string(mismatched) + " mismatched" +
               (first_bad.empty() ? "" : " (first: " + first_bad + ")") +
               "; runtime_ms column excluded (wall-clock)";
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& outdir, int jobs,
                                            std::ostream& log) {
    Shared sh;
    sh.dir = outdir;
    std::filesystem::create_directories(sh.dir);
    sh.jobs = jobs > 0 ? jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    std::vector<CriterionResult> results;
    auto run = [&](int idx, const std::string& name, auto&& fn) {
        CriterionResult r;
        r.index = idx;
        r.name = name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(r);
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        log << "criterion " << (idx < 10 ? "0" : "") << idx << " " << (r.pass ? "PASS" : "FAIL")
            << " " << name << ": " << r.detail << "\n";
        log.flush();
        results.push_back(std::move(r));
    };

    run(1, "optimal-rate coefficients", [&](CriterionResult& r) { c1_optimal_rate(sh, r); });
    run(2, "first-order mu rate", [&](CriterionResult& r) { c2_global_rate(sh, r); });
    run(3, "riemann solver fidelity", [&](CriterionResult& r) { c3_riemann_fidelity(sh, r); });
    run(4, "limit closed forms", [&](CriterionResult& r) { c4_limit_closed_forms(sh, r); });
    run(5, "front-tracking budgets", [&](CriterionResult& r) { c5_budgets(sh, r); });
    run(6, "semigroup stability", [&](CriterionResult& r) { c6_semigroup(sh, r); });
    run(7, "error-functional coherence", [&](CriterionResult& r) { c7_error_functional(sh, r); });
    run(8, "velocity error", [&](CriterionResult& r) { c8_velocity_error(sh, r); });
    run(9, "defect asymptotics", [&](CriterionResult& r) { c9_asymptotics(sh, r); });
    run(10, "determinism", [&](CriterionResult& r) { c10_determinism(sh, r); });

    {
        std::ofstream cf(sh.dir / "criteria.csv");
        cf << "index,name,pass,runtime_ms,detail\n";
        for (const CriterionResult& r : results) {
            std::string d = r.detail;
            std::replace(d.begin(), d.end(), ',', ';');
            cf << r.index << ',' << r.name << ',' << (r.pass ? 1 : 0) << ',' << fmt(r.runtime_ms)
               << ',' << d << '\n';
        }
    }
    return results;
}

}  // namespace wedge
