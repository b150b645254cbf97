#pragma once

#include <vector>

#include "wedge/types.hpp"

// Piecewise-constant traces in y at a fixed x, the object front tracking
// evolves and the L1/TV functionals consume.

namespace wedge {

// A tracked discontinuity. strength is the density ratio alpha for physical
// fronts and the L-infinity size of the state jump for non-physical ones.
struct Front {
    int id = 0;
    Family family = Family::One;
    WaveKind kind = WaveKind::Shock;
    double strength = 1.0;
    double y_at = 0.0;
    double speed = 0.0;
    State left, right;
};

struct Profile {
    double x = 0.0;
    std::vector<double> breakpoints;  // strictly increasing
    std::vector<State> values;        // breakpoints.size() + 1, leftmost extends to -inf
    std::vector<Front> fronts;        // optional tracker metadata, left to right

    // Value at y; on a breakpoint the right limit is returned.
    State value_at(double y) const;
};

// Sum over jumps of |d rho| + |d v|.
double total_variation(const Profile& prof);

// Sup over values of max(|rho - 1|, |v|), deviation from the background.
double linf_deviation(const Profile& prof);

}  // namespace wedge
