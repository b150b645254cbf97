#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "wedge/profile.hpp"
#include "wedge/types.hpp"

// Builtin piecewise-constant initial data generators. All of them keep states
// inside the admissible box and the tails at the background state (1, 0).

namespace wedge {

// Names: riemann (rho_l, v_l, rho_r, v_r, jump_y), boundary_riemann
// (rho_l, v_l), n_wave (amplitude, pieces, y_lo, y_hi), random_bv
// (tv, pieces, y_lo, y_hi). Unknown names or out-of-box states raise
// config_error. random_bv normalizes so the total variation equals the tv
// budget exactly; the seed fully determines the result.
Profile builtin_initial_data(const std::string& name,
                             const std::map<std::string, double>& params, std::uint64_t seed,
                             const DomainBounds& bounds = {});

}  // namespace wedge
