#pragma once

#include <array>
#include <utility>

#include "wedge/types.hpp"

// Exact wave curves for the scaled potential system
//
//   (rho * W)_x + (rho * v)_y = 0,     W = sqrt(1 - tau2 * B),
//   v_x + Psi_y = 0,                   Psi = (1 - W) / tau2 = B / (1 + W),
//
// with Bernoulli quantity B = 2 (rho^eps - 1) / (a^2 eps) + v^2, and for its
// hypersonic limit eps = tau2 = 0 where the fluxes reduce to (rho, rho v) and
// (v, v^2/2 + ln(rho)/a^2). Wave strengths are density ratios alpha.

namespace wedge {

// (x^e - 1) / e, continuous in e through e = 0 where it equals ln(x).
double powm1_over(double x, double e);

// Bernoulli quantity B of a state. Throws domain_error for rho <= 0.
double bernoulli_B(const State& s, const ModelParams& p);

// W = sqrt(1 - tau2 * B). Throws cavitation_error when the argument is <= 0.
double w_factor(const State& s, const ModelParams& p);

// Psi = (1 - W) / tau2, evaluated as B / (1 + W) so tau2 = 0 is exact.
double psi(const State& s, const ModelParams& p);

// Scaled streamwise velocity perturbation u = (W - 1) / tau2 = -Psi.
double u_from_state(const State& s, const ModelParams& p);

// Characteristic speeds lambda_1 < lambda_2. Exact closed form v -+ 1/a at
// mu = 0; throws degeneracy_error if hyperbolicity is lost.
std::array<double, 2> eigenvalues(const State& s, const ModelParams& p);

// Right eigenvector of family j (for the genuine-nonlinearity probe and
// tests; normalized as r_j = (-1)^j (rho, rho^eps / (a^2 (W lambda_j - v)))).
std::array<double, 2> eigenvector(const State& s, Family family, const ModelParams& p);

// Hugoniot function H(dv; alpha, left state). A shock of ratio alpha
// connecting left to (rho_l * alpha, v_l + dv) exists where H = 0 on the
// branch dv < 0. d_dv is the analytic derivative with respect to dv.
double hugoniot(double dv, double alpha, const State& left, const ModelParams& p,
                double* d_dv = nullptr);

// Velocity offset across the admissible shock of the given family and
// density ratio (family One: alpha >= 1, family Two: alpha <= 1). Solved
// to 1e-13 absolute. The strength window (floor, 1/floor) is enforced.
double shock_offset(double alpha, Family family, const State& left, const ModelParams& p,
                    double default_strength_floor = 0.05);

// Velocity offset across a rarefaction of the given family and ratio
// (family One: alpha <= 1, family Two: alpha >= 1). Closed form whenever
// tau2 = 0, adaptive RK integration of dv/drho otherwise.
double rarefaction_offset(double alpha, Family family, const State& left, const ModelParams& p);

// Residual of the independent cross-check: integrates the inverse
// parameterization drho/dv from v_l to v_l + offset and returns
// |rho_end - rho_l * alpha| / rho_l. Used by tests; small means both
// parameterizations describe the same integral curve.
double rarefaction_offset_check(double alpha, Family family, const State& left,
                                const ModelParams& p);

// Velocity offset of the composite wave curve: shock branch or rarefaction
// branch depending on family and which side of 1 alpha lies.
double phi(double alpha, Family family, const State& left, const ModelParams& p,
           double default_strength_floor = 0.05);
double phi(const WaveDescriptor& w, const State& left, const ModelParams& p,
           double default_strength_floor = 0.05);

// Right state of the elementary wave: (rho_l * alpha, v_l + phi).
State wave_right_state(double alpha, Family family, const State& left, const ModelParams& p,
                       double default_strength_floor = 0.05);

// Two-wave composition: family One with ratio alpha1 from `left`, then
// family Two with ratio alpha2 from the middle state. Returns the right
// state; `mid` (optional) receives the middle state.
State wave_map_Phi(double alpha1, double alpha2, const State& left, const ModelParams& p,
                   State* mid = nullptr, double default_strength_floor = 0.05);

// Shock speed from the jump conditions sigma [rho W] = [rho v]. Verifies the
// second jump condition sigma [v] = [Psi] and the strict entropy
// inequalities; throws solver_error if either fails.
double shock_speed(const WaveDescriptor& w, const State& left, const State& right,
                   const ModelParams& p);

// d(lambda_j . r_j) genuine-nonlinearity probe: directional derivative of
// lambda_j along r_j by central differences with step h. Returns {g1, g2};
// both equal 1/a at mu = 0.
std::array<double, 2> genuine_nonlinearity_probe(const State& s, const ModelParams& p,
                                                 double h = 1e-6);

}  // namespace wedge
