#include "wedge/wave_curves.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <sstream>

#include "wedge/rootfind.hpp"

namespace wedge {

namespace {

std::string describe(const State& s) {
    std::ostringstream os;
    os << "(rho=" << s.rho << ", v=" << s.v << ")";
    return os.str();
}

void check_rho(double rho) {
    if (!(rho > 0.0)) throw domain_error("state has nonpositive density rho=" + std::to_string(rho));
}

// Closed-form shock offset of the limit system, also used as the Newton
// seed for the full system. Valid on both sides of alpha = 1.
double shock_offset_limit(double alpha, double a_inf) {
    const double t = (alpha - 1.0) * std::log(alpha) / (alpha + 1.0);
    return -std::sqrt(2.0 * t) / a_inf;
}

void check_window(double alpha, double floor_, const char* what) {
    if (!(alpha > floor_) || !(alpha < 1.0 / floor_))
        throw strength_error(std::string(what) + ": alpha=" + std::to_string(alpha) +
                             " outside the supported strength window (" + std::to_string(floor_) +
                             ", " + std::to_string(1.0 / floor_) + ")");
}

}  // namespace

double powm1_over(double x, double e) {
    if (!(x > 0.0)) throw domain_error("powm1_over: x must be positive, got " + std::to_string(x));
    const double lx = std::log(x);
    if (e == 0.0) return lx;
    return std::expm1(e * lx) / e;
}

double bernoulli_B(const State& s, const ModelParams& p) {
    check_rho(s.rho);
    return 2.0 * powm1_over(s.rho, p.epsilon) / (p.a_inf * p.a_inf) + s.v * s.v;
}

double w_factor(const State& s, const ModelParams& p) {
    if (p.tau2 == 0.0) {
        check_rho(s.rho);
        return 1.0;
    }
    const double arg = 1.0 - p.tau2 * bernoulli_B(s, p);
    if (!(arg > 0.0))
        throw cavitation_error("1 - tau2*B = " + std::to_string(arg) + " at state " + describe(s));
    return std::sqrt(arg);
}

double psi(const State& s, const ModelParams& p) {
    return bernoulli_B(s, p) / (1.0 + w_factor(s, p));
}

double u_from_state(const State& s, const ModelParams& p) { return -psi(s, p); }

std::array<double, 2> eigenvalues(const State& s, const ModelParams& p) {
    check_rho(s.rho);
    const double a = p.a_inf;
    if (p.is_limit()) return {s.v - 1.0 / a, s.v + 1.0 / a};

    const double a2 = a * a;
    const double B = bernoulli_B(s, p);
    const double W = w_factor(s, p);
    const double re = std::exp(p.epsilon * std::log(s.rho));
    const double q = re + 2.0 * powm1_over(s.rho, p.epsilon);
    const double disc = a2 - p.tau2 * q;
    if (!(disc > 0.0))
        throw degeneracy_error("eigenvalues: a^2 - tau2*q = " + std::to_string(disc) +
                               " at state " + describe(s));
    const double den = 1.0 - p.tau2 * (B + re / a2);
    if (!(den > 0.0))
        throw degeneracy_error("eigenvalues: denominator " + std::to_string(den) +
                               " at state " + describe(s));
    const double half = std::exp(0.5 * p.epsilon * std::log(s.rho)) * std::sqrt(disc);
    const double base = a2 * s.v * W;
    return {(base - half) / (a2 * den), (base + half) / (a2 * den)};
}

std::array<double, 2> eigenvector(const State& s, Family family, const ModelParams& p) {
    if (family == Family::NonPhysical) throw domain_error("eigenvector: physical family required");
    const double sgn = (family == Family::One) ? -1.0 : 1.0;
    const auto lam = eigenvalues(s, p);
    const double lj = (family == Family::One) ? lam[0] : lam[1];
    const double W = w_factor(s, p);
    const double re = std::exp(p.epsilon * std::log(s.rho));
    const double den = p.a_inf * p.a_inf * (W * lj - s.v);
    if (den == 0.0) throw degeneracy_error("eigenvector: W*lambda - v vanished at " + describe(s));
    return {sgn * s.rho, sgn * re / den};
}

double hugoniot(double dv, double alpha, const State& left, const ModelParams& p, double* d_dv) {
    check_rho(left.rho);
    if (!(alpha > 0.0)) throw domain_error("hugoniot: alpha must be positive");
    const double a2 = p.a_inf * p.a_inf;
    const double re_l = std::exp(p.epsilon * std::log(left.rho));
    const State right{left.rho * alpha, left.v + dv};

    const double t2 = 2.0 * re_l * powm1_over(alpha, p.epsilon) * (alpha - 1.0) / (a2 * (alpha + 1.0));
    const double BL = bernoulli_B(left, p);
    const double BR = bernoulli_B(right, p);
    const double wl2 = 1.0 - p.tau2 * BL;
    const double wr2 = 1.0 - p.tau2 * BR;
    if (!(wl2 > 0.0) || !(wr2 > 0.0))
        throw cavitation_error("hugoniot: cavitation across jump from " + describe(left) +
                               " with alpha=" + std::to_string(alpha) + ", dv=" + std::to_string(dv));
    const double root = std::sqrt(wl2 * wr2);
    const double t4 = left.v * right.v +
                      2.0 * (alpha * powm1_over(left.rho * alpha, p.epsilon) +
                             powm1_over(left.rho, p.epsilon)) /
                          (a2 * (alpha + 1.0));

    if (d_dv) {
        const double dBR = 2.0 * right.v;
        const double droot = -0.5 * p.tau2 * dBR * wl2 / root;
        *d_dv = 2.0 * dv - p.tau2 * BL * dBR - droot * t4 - (root - 1.0) * left.v;
    }
    return dv * dv - t2 - p.tau2 * BL * BR - (root - 1.0) * t4;
}

namespace {
double integral_curve_offset(double alpha, Family family, const State& left,
                             const ModelParams& p);
}

double shock_offset(double alpha, Family family, const State& left, const ModelParams& p,
                    double default_strength_floor) {
    check_window(alpha, default_strength_floor, "shock_offset");
    if ((family == Family::One && alpha < 1.0) || (family == Family::Two && alpha > 1.0))
        throw strength_error("shock_offset: family " + std::string(to_string(family)) +
                             " shocks need alpha on the compressive side, got " + std::to_string(alpha));
    if (alpha == 1.0) return 0.0;

    const double guess = shock_offset_limit(alpha, p.a_inf);
    if (p.is_limit()) return guess;

    // Below this strength the Hugoniot root's derivative degenerates and the
    // solved offset carries O(eps_mach/|alpha-1|) noise, while the integral
    // curve (which touches the shock curve to third order at alpha = 1) is
    // accurate to O(|alpha-1|^3). Cross over where the integral curve wins.
    if (std::fabs(alpha - 1.0) <= 3e-5) return integral_curve_offset(alpha, family, left, p);

    // H(0) < 0 and H -> +infinity as dv -> -infinity; expand the left end of
    // the bracket from the limit-system seed until the sign flips.
    double hi = 0.0;
    double f_hi = hugoniot(hi, alpha, left, p);
    if (!(f_hi < 0.0))
        throw curve_error("shock_offset: H(0) = " + std::to_string(f_hi) +
                          " >= 0; state outside the supported regime " + describe(left));
    double lo = guess;
    double f_lo = hugoniot(lo, alpha, left, p);
    int grow = 0;
    while (f_lo < 0.0) {
        if (++grow > 60)
            throw curve_error("shock_offset: no bracket below dv=" + std::to_string(lo));
        lo *= 2.0;
        f_lo = hugoniot(lo, alpha, left, p);  // cavitation_error propagates
    }

    RootOptions opt;
    opt.tol_abs = 1e-13;
    opt.label = "shock_offset";
    const double dv = newton_bisect(
        [&](double x, double& f, double& df) { f = hugoniot(x, alpha, left, p, &df); }, lo, hi, opt);
    if (!(dv < 0.0))
        throw solver_error("shock_offset: nonnegative root dv=" + std::to_string(dv));
    return dv;
}

namespace {

// dv/drho along the integral curve of family j.
double raref_rhs(double rho, double v, Family family, const ModelParams& p) {
    const State s{rho, v};
    const auto lam = eigenvalues(s, p);
    const double lj = (family == Family::One) ? lam[0] : lam[1];
    const double den = p.a_inf * p.a_inf * (w_factor(s, p) * lj - s.v);
    if (den == 0.0)
        throw degeneracy_error("rarefaction curve: W*lambda - v vanished at rho=" + std::to_string(rho));
    return std::exp((p.epsilon - 1.0) * std::log(rho)) / den;
}

// Velocity offset along the integral curve, valid on either side of
// alpha = 1 (the orientation checks live in the callers).
double integral_curve_offset(double alpha, Family family, const State& left,
                             const ModelParams& p) {
    if (alpha == 1.0) return 0.0;
    if (p.tau2 == 0.0) {
        // Exact integral of dv/drho = +-rho^(eps/2 - 1)/a.
        const double sgn = (family == Family::Two) ? 1.0 : -1.0;
        return sgn * std::exp(0.5 * p.epsilon * std::log(left.rho)) *
               powm1_over(alpha, 0.5 * p.epsilon) / p.a_inf;
    }

    namespace ode = boost::numeric::odeint;
    using stepper = ode::runge_kutta_dopri5<double>;
    double v = left.v;
    const double rho_end = left.rho * alpha;
    const double dr0 = (rho_end - left.rho) / 64.0;
    auto rhs = [&](const double& y, double& dydr, double r) { dydr = raref_rhs(r, y, family, p); };
    ode::integrate_adaptive(ode::make_controlled<stepper>(1e-13, 1e-11), rhs, v, left.rho, rho_end,
                            dr0);
    return v - left.v;
}

}  // namespace

double rarefaction_offset(double alpha, Family family, const State& left, const ModelParams& p) {
    check_rho(left.rho);
    if (!(alpha > 0.0)) throw domain_error("rarefaction_offset: alpha must be positive");
    if ((family == Family::One && alpha > 1.0) || (family == Family::Two && alpha < 1.0))
        throw strength_error("rarefaction_offset: family " + std::string(to_string(family)) +
                             " rarefactions need alpha on the expansive side, got " +
                             std::to_string(alpha));
    return integral_curve_offset(alpha, family, left, p);
}

double rarefaction_offset_check(double alpha, Family family, const State& left,
                                const ModelParams& p) {
    if (alpha == 1.0) return 0.0;
    const double dv = rarefaction_offset(alpha, family, left, p);

    // Independent route: integrate the inverse parameterization drho/dv.
    namespace ode = boost::numeric::odeint;
    using stepper = ode::runge_kutta_dopri5<double>;
    double rho = left.rho;
    auto rhs = [&](const double& y, double& dydv, double vv) {
        dydv = 1.0 / raref_rhs(y, vv, family, p);
    };
    ode::integrate_adaptive(ode::make_controlled<stepper>(1e-13, 1e-11), rhs, rho, left.v,
                            left.v + dv, dv / 64.0);
    return std::fabs(rho - left.rho * alpha) / left.rho;
}

double phi(double alpha, Family family, const State& left, const ModelParams& p,
           double default_strength_floor) {
    check_window(alpha, default_strength_floor, "phi");
    if (alpha == 1.0) return 0.0;
    const bool shock_side = (family == Family::One) ? (alpha > 1.0) : (alpha < 1.0);
    return shock_side ? shock_offset(alpha, family, left, p, default_strength_floor)
                      : rarefaction_offset(alpha, family, left, p);
}

double phi(const WaveDescriptor& w, const State& left, const ModelParams& p,
           double default_strength_floor) {
    validate(w);
    return phi(w.alpha, w.family, left, p, default_strength_floor);
}

State wave_right_state(double alpha, Family family, const State& left, const ModelParams& p,
                       double default_strength_floor) {
    return State{left.rho * alpha, left.v + phi(alpha, family, left, p, default_strength_floor)};
}

State wave_map_Phi(double alpha1, double alpha2, const State& left, const ModelParams& p,
                   State* mid, double default_strength_floor) {
    const State m = wave_right_state(alpha1, Family::One, left, p, default_strength_floor);
    if (mid) *mid = m;
    return wave_right_state(alpha2, Family::Two, m, p, default_strength_floor);
}

double shock_speed(const WaveDescriptor& w, const State& left, const State& right,
                   const ModelParams& p) {
    if (w.kind != WaveKind::Shock) throw domain_error("shock_speed: descriptor is not a shock");
    double sigma;
    if (std::fabs(right.rho / left.rho - 1.0) < 1e-6) {
        // The jump-condition ratio cancels catastrophically on micro shocks
        // and its noise swamps the Lax margins; the midpoint characteristic
        // speed is exact to second order in the strength there.
        const State mid{0.5 * (left.rho + right.rho), 0.5 * (left.v + right.v)};
        sigma = eigenvalues(mid, p)[w.family == Family::One ? 0 : 1];
    } else {
        const double WL = w_factor(left, p);
        const double WR = w_factor(right, p);
        const double den = right.rho * WR - left.rho * WL;
        if (std::fabs(den) < 1e-300)
            throw degeneracy_error("shock_speed: [rho W] vanished between " + describe(left) +
                                   " and " + describe(right));
        sigma = (right.rho * right.v - left.rho * left.v) / den;
    }

    const double lhs = sigma * (right.v - left.v);
    const double rhs = psi(right, p) - psi(left, p);
    const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    if (std::fabs(lhs - rhs) > 1e-9 * scale)
        throw solver_error("shock_speed: second jump condition violated by " +
                           std::to_string(lhs - rhs) + " between " + describe(left) + " and " +
                           describe(right));

    const auto ll = eigenvalues(left, p);
    const auto lr = eigenvalues(right, p);
    bool lax_ok = false;
    if (w.family == Family::One)
        lax_ok = (lr[0] < sigma) && (sigma < ll[0]) && (sigma < lr[1]);
    else
        lax_ok = (lr[1] < sigma) && (sigma < ll[1]) && (sigma > ll[0]);
    if (!lax_ok)
        throw solver_error("shock_speed: entropy inequalities violated for family " +
                           std::string(to_string(w.family)) + " shock, sigma=" +
                           std::to_string(sigma) + ", alpha=" + std::to_string(right.rho / left.rho));
    return sigma;
}

std::array<double, 2> genuine_nonlinearity_probe(const State& s, const ModelParams& p, double h) {
    std::array<double, 2> g{};
    for (Family fam : {Family::One, Family::Two}) {
        const auto r = eigenvector(s, fam, p);
        const State fwd{s.rho + h * r[0], s.v + h * r[1]};
        const State bwd{s.rho - h * r[0], s.v - h * r[1]};
        const int idx = (fam == Family::One) ? 0 : 1;
        g[idx] = (eigenvalues(fwd, p)[idx] - eigenvalues(bwd, p)[idx]) / (2.0 * h);
    }
    return g;
}

}  // namespace wedge
