#include "wedge/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace wedge {

namespace {

double get(const std::map<std::string, double>& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

void check_in_box(const State& s, const DomainBounds& bounds, const std::string& who) {
    if (!bounds.contains(s))
        throw config_error(who + ": state (" + std::to_string(s.rho) + ", " +
                           std::to_string(s.v) + ") outside the admissible box");
}

Profile riemann_data(const std::map<std::string, double>& params, const DomainBounds& bounds) {
    Profile prof;
    const State left{get(params, "rho_l", 1.0), get(params, "v_l", 0.0)};
    const State right{get(params, "rho_r", 1.0), get(params, "v_r", 0.0)};
    check_in_box(left, bounds, "riemann");
    check_in_box(right, bounds, "riemann");
    prof.breakpoints = {get(params, "jump_y", -1.0)};
    prof.values = {left, right};
    return prof;
}

Profile boundary_riemann_data(const std::map<std::string, double>& params,
                              const DomainBounds& bounds) {
    Profile prof;
    const State s{get(params, "rho_l", 1.0), get(params, "v_l", 0.0)};
    check_in_box(s, bounds, "boundary_riemann");
    prof.values = {s};
    return prof;
}

Profile n_wave_data(const std::map<std::string, double>& params, const DomainBounds& bounds) {
    const double amplitude = get(params, "amplitude", 0.1);
    const int pieces = static_cast<int>(get(params, "pieces", 8.0));
    const double y_lo = get(params, "y_lo", -2.0);
    const double y_hi = get(params, "y_hi", -1.0);
    if (pieces < 1) throw config_error("n_wave: pieces must be >= 1");
    if (!(y_hi > y_lo)) throw config_error("n_wave: y_hi must exceed y_lo");

    // Alternating-sign v steps on rho == 1, zero tails on both sides.
    Profile prof;
    prof.values.push_back(State{1.0, 0.0});
    for (int i = 0; i < pieces; ++i) {
        const double y = y_lo + (y_hi - y_lo) * i / pieces;
        const State s{1.0, (i % 2 == 0 ? amplitude : -amplitude)};
        check_in_box(s, bounds, "n_wave");
        prof.breakpoints.push_back(y);
        prof.values.push_back(s);
    }
    prof.breakpoints.push_back(y_hi);
    prof.values.push_back(State{1.0, 0.0});
    return prof;
}

Profile random_bv_data(const std::map<std::string, double>& params, std::uint64_t seed,
                       const DomainBounds& bounds) {
    const double tv = get(params, "tv", 0.5);
    const int pieces = static_cast<int>(get(params, "pieces", 20.0));
    const double y_lo = get(params, "y_lo", -2.2);
    const double y_hi = get(params, "y_hi", -0.2);
    if (!(tv > 0.0)) throw config_error("random_bv: tv must be positive");
    if (pieces < 2) throw config_error("random_bv: pieces must be >= 2");
    if (!(y_hi > y_lo)) throw config_error("random_bv: y_hi must exceed y_lo");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(y_lo, y_hi);

    // Interior values drawn as offsets from the background, then scaled so
    // the total variation of the final profile (tails included) is exactly
    // the requested budget.
    std::vector<double> drho(pieces - 1), dv(pieces - 1);
    for (int i = 0; i + 1 < pieces; ++i) {
        drho[i] = unit(rng);
        dv[i] = unit(rng);
    }
    std::vector<double> ys(pieces - 1 + 1);
    for (double& y : ys) y = pos(rng);
    std::sort(ys.begin(), ys.end());
    for (std::size_t i = 1; i < ys.size(); ++i)
        if (ys[i] - ys[i - 1] < 1e-6) ys[i] = ys[i - 1] + 1e-6;

    double raw = 0.0;
    double prev_r = 0.0, prev_v = 0.0;
    for (int i = 0; i + 1 < pieces; ++i) {
        raw += std::fabs(drho[i] - prev_r) + std::fabs(dv[i] - prev_v);
        prev_r = drho[i];
        prev_v = dv[i];
    }
    raw += std::fabs(prev_r) + std::fabs(prev_v);
    if (!(raw > 0.0)) throw config_error("random_bv: degenerate draw with zero variation");
    const double scale = tv / raw;

    Profile prof;
    prof.values.push_back(State{1.0, 0.0});
    for (int i = 0; i + 1 < pieces; ++i) {
        const State s{1.0 + scale * drho[i], scale * dv[i]};
        check_in_box(s, bounds, "random_bv");
        prof.breakpoints.push_back(ys[i]);
        prof.values.push_back(s);
    }
    prof.breakpoints.push_back(ys.back());
    prof.values.push_back(State{1.0, 0.0});
    return prof;
}

}  // namespace

Profile builtin_initial_data(const std::string& name,
                             const std::map<std::string, double>& params, std::uint64_t seed,
                             const DomainBounds& bounds) {
    if (name == "riemann") return riemann_data(params, bounds);
    if (name == "boundary_riemann") return boundary_riemann_data(params, bounds);
    if (name == "n_wave") return n_wave_data(params, bounds);
    if (name == "random_bv") return random_bv_data(params, seed, bounds);
    throw config_error("unknown initial data generator '" + name + "'");
}

}  // namespace wedge
