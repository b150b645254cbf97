#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

// Core value types shared by every module: model parameters for the scaled
// potential-flow system and its hypersonic limit, states, admissible-domain
// bounds, and wave descriptors.

namespace wedge {

// Everything the solvers throw derives from wedge::error so callers can
// distinguish "this library rejected the input" from genuine bugs.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input outside the admissible domain (rho <= 0, state outside bounds, ...).
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// 1 - tau2 * B dropped to or below zero; the square root in the flux is lost.
struct cavitation_error : error {
    explicit cavitation_error(const std::string& msg) : error(msg) {}
};

// Hyperbolicity degenerated: eigenvalue discriminant or denominator vanished.
struct degeneracy_error : error {
    explicit degeneracy_error(const std::string& msg) : error(msg) {}
};

// Wave strength outside the window this code is built for.
struct strength_error : error {
    explicit strength_error(const std::string& msg) : error(msg) {}
};

// A wave-curve evaluation failed (no bracket, ODE blow-up, ...).
struct curve_error : error {
    explicit curve_error(const std::string& msg) : error(msg) {}
};

// A nonlinear solve did not converge or produced an inconsistent result.
struct solver_error : error {
    explicit solver_error(const std::string& msg) : error(msg) {}
};

// Bad configuration file or option value.
struct config_error : error {
    explicit config_error(const std::string& msg) : error(msg) {}
};

// Model parameters. a_inf is the scaled free-stream Mach parameter
// (tau * M_inf), epsilon = gamma - 1, tau2 = tau^2, b0 <= 0 the wedge slope.
// The limit system is epsilon = tau2 = 0.
struct ModelParams {
    double a_inf = 1.0;
    double epsilon = 0.0;
    double tau2 = 0.0;
    double b0 = 0.0;

    double mu_norm() const { return epsilon + tau2; }
    bool is_limit() const { return epsilon == 0.0 && tau2 == 0.0; }
    ModelParams limit() const { return ModelParams{a_inf, 0.0, 0.0, b0}; }
};

inline void validate(const ModelParams& p) {
    if (!(p.a_inf > 0.0))
        throw domain_error("ModelParams: a_inf must be positive, got " + std::to_string(p.a_inf));
    if (!(p.epsilon >= 0.0) || !(p.tau2 >= 0.0))
        throw domain_error("ModelParams: epsilon and tau2 must be nonnegative");
    if (!(p.b0 <= 0.0))
        throw domain_error("ModelParams: b0 must be <= 0, got " + std::to_string(p.b0));
}

// (density, transverse velocity). The streamwise component u is derived.
struct State {
    double rho = 1.0;
    double v = 0.0;
};

// Box the solvers are allowed to work in. States outside it are rejected up
// front rather than silently clamped.
struct DomainBounds {
    double rho_lo = 0.2;
    double rho_hi = 5.0;
    double v_max = 2.0;

    bool contains(const State& s) const {
        return s.rho >= rho_lo && s.rho <= rho_hi && std::fabs(s.v) <= v_max;
    }
};

enum class Family { One = 1, Two = 2, NonPhysical = 0 };

enum class WaveKind { Shock, Rarefaction, NonPhysical };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::One: return "1";
        case Family::Two: return "2";
        default: return "np";
    }
}

inline const char* to_string(WaveKind k) {
    switch (k) {
        case WaveKind::Shock: return "shock";
        case WaveKind::Rarefaction: return "rarefaction";
        default: return "np";
    }
}

// An elementary wave of one family. alpha is the density ratio across the
// wave: rho_right = alpha * rho_left. Family One waves are shocks for
// alpha > 1 and rarefactions for alpha < 1; family Two is mirrored.
struct WaveDescriptor {
    Family family = Family::One;
    WaveKind kind = WaveKind::Shock;
    double alpha = 1.0;
};

// Checks the family/kind/alpha orientation invariants.
inline void validate(const WaveDescriptor& w) {
    if (w.family == Family::NonPhysical || w.kind == WaveKind::NonPhysical)
        throw domain_error("WaveDescriptor: non-physical fronts have no descriptor");
    if (!(w.alpha > 0.0))
        throw domain_error("WaveDescriptor: alpha must be positive");
    const bool shock_side = (w.family == Family::One) ? (w.alpha >= 1.0) : (w.alpha <= 1.0);
    if (w.kind == WaveKind::Shock && !shock_side)
        throw domain_error("WaveDescriptor: shock of family " +
                           std::string(to_string(w.family)) + " needs alpha on the compressive side");
    if (w.kind == WaveKind::Rarefaction && shock_side && w.alpha != 1.0)
        throw domain_error("WaveDescriptor: rarefaction of family " +
                           std::string(to_string(w.family)) + " needs alpha on the expansive side");
}

}  // namespace wedge
