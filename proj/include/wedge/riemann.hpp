#pragma once

#include <vector>

#include "wedge/types.hpp"
#include "wedge/wave_curves.hpp"

// Exact Riemann solvers on the half plane y < b0 * x: the interior two-wave
// problem and the boundary reflection problem, plus self-similar sampling
// and the limit-vs-full strength comparison used by the rate experiments.

namespace wedge {

// One wave of a solved fan together with the slope range y/x it occupies.
// Shocks have xi_lo == xi_hi.
struct FanWave {
    WaveDescriptor wave;
    double xi_lo = 0.0;
    double xi_hi = 0.0;
};

struct RiemannFan {
    State left_state;
    std::vector<FanWave> waves;             // ordered left to right
    std::vector<State> constant_states;     // waves.size() + 1 entries
    bool boundary_attached = false;
    double b0 = 0.0;

    // Density ratio of the wave of the given family, 1 if absent.
    double alpha(Family f) const {
        for (const auto& w : waves)
            if (w.wave.family == f) return w.wave.alpha;
        return 1.0;
    }
};

// Solves U_L -> U_R with a family One wave followed by a family Two wave.
// Wave strengths must fall inside (floor, 1/floor); the recomposed right
// state is verified to 1e-10 relative.
RiemannFan solve_interior(const State& UL, const State& UR, const ModelParams& p,
                          double default_strength_floor = 0.05);

// Solves the reflection problem: a single family One wave taking U_L to a
// state satisfying v = b0 * W on the wedge boundary.
RiemannFan solve_boundary(const State& UL, const ModelParams& p,
                          double default_strength_floor = 0.05);

// State at slope xi = y / x. On a shock the right state is returned; inside
// a rarefaction the state with matching characteristic speed is solved for.
State sample_fan(const RiemannFan& fan, double xi, const ModelParams& p);

struct StrengthComparison {
    double alpha_limit = 1.0;
    double alpha_full = 1.0;
    double gap = 0.0;    // alpha_full - alpha_limit
    double ratio = 0.0;  // gap / (|alpha_limit - 1| * mu_norm)
};

struct ComparisonReport {
    StrengthComparison family1, family2;
    double mu_norm = 0.0;
    bool exact_match = false;  // limit parameters: strengths coincide identically
};

// Solves the same Riemann data under `p_full` and its limit and reports the
// strength gaps scaled by |alpha - 1| * mu_norm (the measured first-order
// sensitivity; see the strength-comparison tests for the constants it
// matches).
ComparisonReport compare_strengths(const State& UL, const State& UR, const ModelParams& p_full,
                                   double default_strength_floor = 0.05);

// Boundary version; the ratio is scaled by (1 + |alpha - 1|) * mu_norm.
ComparisonReport compare_strengths_boundary(const State& UL, const ModelParams& p_full,
                                            double default_strength_floor = 0.05);

}  // namespace wedge
