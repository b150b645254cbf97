#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wedge/front_tracking.hpp"
#include "wedge/profile.hpp"
#include "wedge/types.hpp"

// Reference solution operator for the limit system, built from front tracking
// in wall-following coordinates, plus the error functional and per-front
// local error probes used to assemble global L1 estimates.

namespace wedge {

// Profile in the frame that straightens the wall: y_hat = y - b0*x and
// v_hat = v - b0, so the boundary condition becomes v_hat = 0 on y_hat = 0.
struct TransformedProfile {
    Profile prof;
    double b0 = 0.0;
};

TransformedProfile to_transformed(const Profile& prof, double b0);
Profile from_transformed(const TransformedProfile& tp);

// Applies the limit-system solution operator over a width h: transform to
// the flat-wall frame, re-resolve the data with front tracking at nu_ref,
// advance by h, transform back. h = 0 returns the input unchanged. Only
// a_inf and b0 of p matter; epsilon and tau2 are forced to zero. When
// n_events is given it receives the number of interactions inside (0, h).
Profile semigroup_apply(const Profile& U0, double h, int nu_ref, const ModelParams& p,
                        const DomainBounds& bounds = {}, std::size_t* n_events = nullptr);

// |S_x A - S_x B|_L1 / |A - B|_L1 with both distances taken up to the wall.
// Returns 0 when the initial distance is below 1e-14.
double lipschitz_ratio(const Profile& A, const Profile& B, double x, int nu_ref,
                       const ModelParams& p, const DomainBounds& bounds = {});

struct ErrorFunctionalPanel {
    double s = 0.0;          // midpoint abscissa of the panel
    double integrand = 0.0;  // |S_h V(s) - V(s+h)|_L1 / h
    bool warning = false;    // interactions occurred inside the (s, s+h) window
};

struct ErrorFunctionalResult {
    double value = 0.0;    // lipschitz_used * integral
    double integral = 0.0;
    double lipschitz_used = 1.0;
    double h = 0.0;
    std::vector<ErrorFunctionalPanel> panels;
};

// Midpoint-rule estimate of L * Int_0^x |S_h(V(s)) - V(s+h)|_L1 / h ds where
// V is the front-tracking evolution of U0 under (p, sp) and S_h the limit
// reference at nu_ref. h <= 0 selects the default 2^(-nu-4) * x. Panels where
// either run logs an interaction inside the h-window carry a warning flag.
ErrorFunctionalResult error_functional(const Profile& U0, double x, double h, int samples,
                                       double lipschitz_used, int nu_ref, const ModelParams& p,
                                       const SchemeParams& sp, const DomainBounds& bounds = {});

void write_integrand_csv(const std::string& path, const ErrorFunctionalResult& r);

struct ProbeRow {
    int front_id = -1;  // -1 for the boundary row
    Family family = Family::One;
    WaveKind kind = WaveKind::Shock;
    double strength = 1.0;
    double window_lo = 0.0, window_hi = 0.0;
    double raw_error = 0.0;  // L1 gap between full evolution and S_h on the window
    double ratio = 0.0;      // raw_error over the front's expected scale
    bool window_reduced = false;
    bool is_boundary = false;
};

// Compares the full-system evolution of prof over a width h against the limit
// reference on a window around each front (center y + speed*h, half-width
// eta = 1.5 * lambda_hat * h) and around the boundary. Overlapping windows
// are split at the midpoint and flagged. Ratios divide by h*|alpha-1| for
// physical fronts, h*strength for non-physical ones, and h*(|alpha-1|+1)
// for the boundary row.
std::vector<ProbeRow> local_error_probe(const Profile& prof, const ModelParams& p_full, double h,
                                        int nu_ref, const SchemeParams& sp,
                                        const DomainBounds& bounds = {});

}  // namespace wedge
