#include "wedge/riemann.hpp"

#include <cmath>
#include <sstream>

#include "wedge/rootfind.hpp"

namespace wedge {

namespace {

constexpr double kNullWave = 1e-14;  // |alpha - 1| below this is no wave

std::string describe(const State& s) {
    std::ostringstream os;
    os << "(rho=" << s.rho << ", v=" << s.v << ")";
    return os.str();
}

// Appends the wave (if non-null) and its right state to the fan.
void push_wave(RiemannFan& fan, double alpha, Family family, const ModelParams& p,
               double floor_) {
    const State& left = fan.constant_states.back();
    if (std::fabs(alpha - 1.0) <= kNullWave) return;

    const bool shock_side = (family == Family::One) ? (alpha > 1.0) : (alpha < 1.0);
    WaveDescriptor wd{family, shock_side ? WaveKind::Shock : WaveKind::Rarefaction, alpha};
    const State right = wave_right_state(alpha, family, left, p, floor_);

    FanWave fw;
    fw.wave = wd;
    if (wd.kind == WaveKind::Shock) {
        const double sigma = shock_speed(wd, left, right, p);
        fw.xi_lo = fw.xi_hi = sigma;
    } else {
        const int idx = (family == Family::One) ? 0 : 1;
        fw.xi_lo = eigenvalues(left, p)[idx];
        fw.xi_hi = eigenvalues(right, p)[idx];
        if (!(fw.xi_lo <= fw.xi_hi))
            throw solver_error("riemann: rarefaction edges out of order");
    }
    if (!fan.waves.empty() && fw.xi_lo < fan.waves.back().xi_hi - 1e-12)
        throw solver_error("riemann: wave speeds out of order");
    fan.waves.push_back(fw);
    fan.constant_states.push_back(right);
}

// Scalar solve of the limit problem: phi1(a1) + phi2(r / a1) = dv with both
// strengths inside the window. Strictly decreasing in a1.
double limit_alpha1(double r, double dv, const State& UL, const ModelParams& p0, double floor_) {
    const double lo = std::max(floor_, r * floor_) * (1.0 + 1e-9);
    const double hi = std::min(1.0 / floor_, r / floor_) * (1.0 - 1e-9);
    if (!(lo < hi))
        throw strength_error("solve_interior: density ratio " + std::to_string(r) +
                             " not reachable inside the strength window");
    auto g = [&](double a1) {
        return phi(a1, Family::One, UL, p0, floor_) + phi(r / a1, Family::Two, UL, p0, floor_) - dv;
    };
    const double glo = g(lo), ghi = g(hi);
    if (!(glo >= 0.0 && ghi <= 0.0)) {
        std::ostringstream os;
        os << "solve_interior: velocity jump " << dv << " unreachable within the strength window"
           << " (range [" << ghi + dv << ", " << glo + dv << "])";
        throw strength_error(os.str());
    }
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    RootOptions opt;
    opt.tol_abs = 1e-15;
    opt.max_iter = 200;
    opt.label = "solve_interior(limit)";
    return newton_bisect(std::function<double(double)>(g), lo, hi, opt);
}

}  // namespace

RiemannFan solve_interior(const State& UL, const State& UR, const ModelParams& p,
                          double default_strength_floor) {
    validate(p);
    if (!(UL.rho > 0.0) || !(UR.rho > 0.0))
        throw domain_error("solve_interior: nonpositive density");

    RiemannFan fan;
    fan.left_state = UL;
    fan.constant_states.push_back(UL);
    if (UL.rho == UR.rho && UL.v == UR.v) return fan;

    const double r = UR.rho / UL.rho;
    const double dv = UR.v - UL.v;
    const ModelParams p0 = p.limit();
    double a1 = limit_alpha1(r, dv, UL, p0, default_strength_floor);
    double a2 = r / a1;

    if (!p.is_limit()) {
        // Newton in (a1, a2) on the full-system composition, damped so every
        // iterate stays inside the strength window.
        auto v_of = [&](double x1, double x2) {
            return wave_map_Phi(x1, x2, UL, p, nullptr, default_strength_floor).v;
        };
        const double lo_w = default_strength_floor * (1.0 + 1e-9);
        const double hi_w = (1.0 - 1e-9) / default_strength_floor;
        double f1 = UL.rho * a1 * a2 - UR.rho;
        double f2 = v_of(a1, a2) - UR.v;
        double res = std::fabs(f1) / std::max(1.0, UR.rho) + std::fabs(f2);
        bool done = res < 1e-13;
        for (int it = 0; it < 80 && !done; ++it) {
            const double h1 = 1e-7 * std::max(1.0, a1);
            const double h2 = 1e-7 * std::max(1.0, a2);
            const double j11 = UL.rho * a2;
            const double j12 = UL.rho * a1;
            const double j21 = (v_of(a1 + h1, a2) - v_of(a1 - h1, a2)) / (2.0 * h1);
            const double j22 = (v_of(a1, a2 + h2) - v_of(a1, a2 - h2)) / (2.0 * h2);
            const double det = j11 * j22 - j12 * j21;
            if (det == 0.0) throw solver_error("solve_interior: singular Jacobian");
            const double d1 = -(j22 * f1 - j12 * f2) / det;
            const double d2 = -(j11 * f2 - j21 * f1) / det;

            double lam = 1.0;
            bool accepted = false;
            for (int halve = 0; halve < 60; ++halve, lam *= 0.5) {
                const double t1 = a1 + lam * d1;
                const double t2 = a2 + lam * d2;
                if (!(t1 > lo_w && t1 < hi_w && t2 > lo_w && t2 < hi_w)) continue;
                double g1, g2, tres;
                try {
                    g1 = UL.rho * t1 * t2 - UR.rho;
                    g2 = v_of(t1, t2) - UR.v;
                } catch (const error&) {
                    continue;  // step left the admissible set; shorten it
                }
                tres = std::fabs(g1) / std::max(1.0, UR.rho) + std::fabs(g2);
                if (tres < res * (1.0 - 1e-4 * lam) || tres < 1e-13) {
                    a1 = t1;
                    a2 = t2;
                    f1 = g1;
                    f2 = g2;
                    res = tres;
                    accepted = true;
                    break;
                }
            }
            if (!accepted)
                throw solver_error("solve_interior: line search stalled at residual " +
                                   std::to_string(res));
            done = res < 1e-13;
        }
        if (!done)
            throw solver_error("solve_interior: no convergence, residual " + std::to_string(res));
    }

    push_wave(fan, a1, Family::One, p, default_strength_floor);
    push_wave(fan, a2, Family::Two, p, default_strength_floor);

    // Recomposition check: the waves must reproduce the requested right state.
    const State& got = fan.constant_states.back();
    const double scale = std::max({1.0, std::fabs(UR.rho), std::fabs(UR.v)});
    if (std::fabs(got.rho - UR.rho) + std::fabs(got.v - UR.v) > 1e-10 * scale)
        throw solver_error("solve_interior: recomposition mismatch " + describe(got) + " vs " +
                           describe(UR));
    return fan;
}

RiemannFan solve_boundary(const State& UL, const ModelParams& p, double default_strength_floor) {
    validate(p);
    if (!(UL.rho > 0.0)) throw domain_error("solve_boundary: nonpositive density");

    RiemannFan fan;
    fan.left_state = UL;
    fan.constant_states.push_back(UL);
    fan.boundary_attached = true;
    fan.b0 = p.b0;

    auto trace = [&](double alpha) {
        const State ub = (alpha == 1.0) ? UL
                                        : wave_right_state(alpha, Family::One, UL, p,
                                                           default_strength_floor);
        return ub.v - p.b0 * w_factor(ub, p);
    };

    const double f1 = trace(1.0);
    if (std::fabs(f1) <= 1e-14 * std::max(1.0, std::fabs(UL.v))) return fan;

    double alpha;
    RootOptions opt;
    opt.tol_abs = 1e-15;
    opt.max_iter = 200;
    opt.label = "solve_boundary";
    if (f1 > 0.0) {
        // Incoming flow steeper than the wall: compressive reflection.
        double hi = 1.5;
        const double hi_cap = (1.0 - 1e-9) / default_strength_floor;
        while (trace(std::min(hi, hi_cap)) > 0.0) {
            if (hi >= hi_cap)
                throw strength_error("solve_boundary: reflected shock exceeds the strength window");
            hi = std::min(hi * 1.5, hi_cap);
        }
        hi = std::min(hi, hi_cap);
        alpha = newton_bisect(std::function<double(double)>(trace), 1.0, hi, opt);
    } else {
        if (p.is_limit()) {
            alpha = std::exp(p.a_inf * (UL.v - p.b0));
            if (!(alpha > default_strength_floor))
                throw strength_error("solve_boundary: expansion exceeds the strength window");
        } else {
            double lo = 0.75;
            const double lo_cap = default_strength_floor * (1.0 + 1e-9);
            while (trace(std::max(lo, lo_cap)) < 0.0) {
                if (lo <= lo_cap)
                    throw strength_error("solve_boundary: expansion exceeds the strength window");
                lo = std::max(lo * 0.75, lo_cap);
            }
            lo = std::max(lo, lo_cap);
            alpha = newton_bisect(std::function<double(double)>(trace), lo, 1.0, opt);
        }
    }

    push_wave(fan, alpha, Family::One, p, default_strength_floor);
    const State& ub = fan.constant_states.back();
    if (std::fabs(ub.v - p.b0 * w_factor(ub, p)) > 1e-12)
        throw solver_error("solve_boundary: boundary trace residual " +
                           std::to_string(ub.v - p.b0 * w_factor(ub, p)));
    return fan;
}

State sample_fan(const RiemannFan& fan, double xi, const ModelParams& p) {
    if (fan.boundary_attached && xi > fan.b0 + 1e-14)
        throw domain_error("sample_fan: slope " + std::to_string(xi) + " outside the wedge");
    for (std::size_t i = 0; i < fan.waves.size(); ++i) {
        const FanWave& fw = fan.waves[i];
        if (xi < fw.xi_lo) return fan.constant_states[i];
        if (fw.wave.kind == WaveKind::Rarefaction && xi <= fw.xi_hi) {
            const State& left = fan.constant_states[i];
            const Family fam = fw.wave.family;
            const int idx = (fam == Family::One) ? 0 : 1;
            auto g = [&](double a) {
                return eigenvalues(wave_right_state(a, fam, left, p), p)[idx] - xi;
            };
            const double a_lo = std::min(fw.wave.alpha, 1.0);
            const double a_hi = std::max(fw.wave.alpha, 1.0);
            RootOptions opt;
            opt.tol_abs = 1e-14;
            opt.max_iter = 200;
            opt.label = "sample_fan";
            const double a = newton_bisect(std::function<double(double)>(g), a_lo, a_hi, opt);
            return wave_right_state(a, fam, left, p);
        }
        // On a shock (xi >= sigma) fall through to the right side.
    }
    return fan.constant_states.back();
}

namespace {

StrengthComparison compare_family(double al, double af, double mu) {
    StrengthComparison c;
    c.alpha_limit = al;
    c.alpha_full = af;
    c.gap = af - al;
    if (mu > 0.0) c.ratio = c.gap / (std::max(std::fabs(al - 1.0), 1e-12) * mu);
    return c;
}

}  // namespace

ComparisonReport compare_strengths(const State& UL, const State& UR, const ModelParams& p_full,
                                   double default_strength_floor) {
    ComparisonReport rep;
    rep.mu_norm = p_full.mu_norm();
    const RiemannFan limit = solve_interior(UL, UR, p_full.limit(), default_strength_floor);
    const RiemannFan full = p_full.is_limit()
                                ? limit
                                : solve_interior(UL, UR, p_full, default_strength_floor);
    rep.family1 = compare_family(limit.alpha(Family::One), full.alpha(Family::One), rep.mu_norm);
    rep.family2 = compare_family(limit.alpha(Family::Two), full.alpha(Family::Two), rep.mu_norm);
    rep.exact_match = p_full.is_limit();
    return rep;
}

ComparisonReport compare_strengths_boundary(const State& UL, const ModelParams& p_full,
                                            double default_strength_floor) {
    ComparisonReport rep;
    rep.mu_norm = p_full.mu_norm();
    const RiemannFan limit = solve_boundary(UL, p_full.limit(), default_strength_floor);
    const RiemannFan full =
        p_full.is_limit() ? limit : solve_boundary(UL, p_full, default_strength_floor);
    const double al = limit.alpha(Family::One);
    const double af = full.alpha(Family::One);
    rep.family1.alpha_limit = al;
    rep.family1.alpha_full = af;
    rep.family1.gap = af - al;
    if (rep.mu_norm > 0.0)
        rep.family1.ratio = rep.family1.gap / ((1.0 + std::fabs(al - 1.0)) * rep.mu_norm);
    rep.exact_match = p_full.is_limit();
    return rep;
}

}  // namespace wedge
