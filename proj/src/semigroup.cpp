#include "wedge/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "wedge/analysis.hpp"
#include "wedge/io.hpp"

namespace wedge {

TransformedProfile to_transformed(const Profile& prof, double b0) {
    TransformedProfile tp;
    tp.b0 = b0;
    tp.prof = prof;
    if (b0 == 0.0) return tp;
    const double shift = b0 * prof.x;
    for (double& y : tp.prof.breakpoints) y -= shift;
    for (State& s : tp.prof.values) s.v -= b0;
    for (Front& f : tp.prof.fronts) {
        f.y_at -= shift;
        f.speed -= b0;
        f.left.v -= b0;
        f.right.v -= b0;
    }
    return tp;
}

Profile from_transformed(const TransformedProfile& tp) {
    Profile prof = tp.prof;
    if (tp.b0 == 0.0) return prof;
    const double shift = tp.b0 * prof.x;
    for (double& y : prof.breakpoints) y += shift;
    for (State& s : prof.values) s.v += tp.b0;
    for (Front& f : prof.fronts) {
        f.y_at += shift;
        f.speed += tp.b0;
        f.left.v += tp.b0;
        f.right.v += tp.b0;
    }
    return prof;
}

Profile semigroup_apply(const Profile& U0, double h, int nu_ref, const ModelParams& p,
                        const DomainBounds& bounds, std::size_t* n_events) {
    if (h < 0.0) throw domain_error("semigroup_apply: negative width");
    if (n_events) *n_events = 0;
    if (h == 0.0) return U0;

    TransformedProfile tp = to_transformed(U0, p.b0);
    tp.prof.fronts.clear();  // the reference re-resolves the data from scratch

    ModelParams ph = p.limit();
    ph.b0 = 0.0;
    DomainBounds hb = bounds;
    hb.v_max = bounds.v_max + std::fabs(p.b0);

    SchemeParams spr;
    spr.nu = nu_ref;
    Tracker tr(ph, spr, hb);
    tr.set_initial(tp.prof);
    tr.advance_to(tp.prof.x + h);
    if (n_events) {
        for (const EventRecord& e : tr.events())
            if (e.x > tp.prof.x && e.x < tp.prof.x + h) ++*n_events;
    }
    return from_transformed(TransformedProfile{tr.profile(), p.b0});
}

double lipschitz_ratio(const Profile& A, const Profile& B, double x, int nu_ref,
                       const ModelParams& p, const DomainBounds& bounds) {
    const double inf = std::numeric_limits<double>::infinity();
    const double d0 = l1_distance(A, B, -inf, p.b0 * A.x);
    if (d0 < 1e-14) return 0.0;
    const Profile xa = semigroup_apply(A, x, nu_ref, p, bounds);
    const Profile xb = semigroup_apply(B, x, nu_ref, p, bounds);
    return l1_distance(xa, xb, -inf, p.b0 * xa.x) / d0;
}

ErrorFunctionalResult error_functional(const Profile& U0, double x, double h, int samples,
                                       double lipschitz_used, int nu_ref, const ModelParams& p,
                                       const SchemeParams& sp, const DomainBounds& bounds) {
    if (!(x > U0.x)) throw domain_error("error_functional: x must exceed the profile's x");
    if (samples < 1) throw domain_error("error_functional: samples must be >= 1");
    if (!(lipschitz_used > 0.0)) throw domain_error("error_functional: nonpositive Lipschitz constant");
    if (h <= 0.0) h = std::ldexp(x - U0.x, -sp.nu - 4);

    ErrorFunctionalResult res;
    res.h = h;
    res.lipschitz_used = lipschitz_used;

    const double width = (x - U0.x) / samples;
    // Snapshot V at every s_i and s_i + h in one sweep.
    struct Query {
        double at;
        int panel;
        bool shifted;
    };
    std::vector<Query> queries;
    for (int i = 0; i < samples; ++i) {
        const double s = U0.x + (i + 0.5) * width;
        queries.push_back({s, i, false});
        queries.push_back({s + h, i, true});
    }
    std::sort(queries.begin(), queries.end(),
              [](const Query& a, const Query& b) { return a.at < b.at; });

    Tracker tr(p, sp, bounds);
    if (U0.fronts.empty())
        tr.set_initial(U0);
    else
        tr.continue_from(U0);

    std::vector<Profile> at_s(samples), at_sh(samples);
    for (const Query& q : queries) {
        tr.advance_to(q.at);
        (q.shifted ? at_sh : at_s)[q.panel] = tr.profile();
    }

    const double inf = std::numeric_limits<double>::infinity();
    res.panels.resize(samples);
    for (int i = 0; i < samples; ++i) {
        const double s = U0.x + (i + 0.5) * width;
        std::size_t ref_events = 0;
        const Profile sh = semigroup_apply(at_s[i], h, nu_ref, p, bounds, &ref_events);
        bool v_events = false;
        for (const EventRecord& e : tr.events())
            if (e.x > s && e.x < s + h) v_events = true;
        ErrorFunctionalPanel& panel = res.panels[i];
        panel.s = s;
        panel.integrand = l1_distance(sh, at_sh[i], -inf, p.b0 * (s + h)) / h;
        panel.warning = v_events || ref_events > 0;
        res.integral += panel.integrand * width;
    }
    res.value = lipschitz_used * res.integral;
    return res;
}

void write_integrand_csv(const std::string& path, const ErrorFunctionalResult& r) {
    std::ofstream out(path);
    if (!out) throw error("cannot open " + path + " for writing");
    out << "s,integrand,h,warnings\n";
    for (const ErrorFunctionalPanel& panel : r.panels)
        out << fmt(panel.s) << ',' << fmt(panel.integrand) << ',' << fmt(r.h) << ','
            << (panel.warning ? 1 : 0) << '\n';
}

std::vector<ProbeRow> local_error_probe(const Profile& prof, const ModelParams& p_full, double h,
                                        int nu_ref, const SchemeParams& sp,
                                        const DomainBounds& bounds) {
    if (!(h > 0.0)) throw domain_error("local_error_probe: h must be positive");

    Tracker tr(p_full, sp, bounds);
    if (prof.fronts.empty())
        tr.set_initial(prof);
    else
        tr.continue_from(prof);
    tr.advance_to(prof.x + h);
    const Profile full_after = tr.profile();
    const Profile ref_after = semigroup_apply(prof, h, nu_ref, p_full, bounds);

    double lambda_hat = sp.lambda_hat;
    if (lambda_hat <= 0.0) lambda_hat = make_scheme_params(sp.nu, p_full, bounds).lambda_hat;
    const double eta = 1.5 * lambda_hat * h;
    const double wall = p_full.b0 * (prof.x + h);

    // One window per surviving front plus a boundary window; the strengths
    // and speeds come from the state at prof.x.
    std::vector<ProbeRow> rows;
    std::vector<double> centers;
    const std::vector<Front>& fronts = prof.fronts;
    for (const Front& f : fronts) {
        ProbeRow row;
        row.front_id = f.id;
        row.family = f.family;
        row.kind = f.kind;
        row.strength = f.strength;
        const double c = f.y_at + f.speed * h;
        row.window_lo = c - eta;
        row.window_hi = std::min(c + eta, wall);
        rows.push_back(row);
        centers.push_back(c);
    }
    {
        ProbeRow row;
        row.is_boundary = true;
        row.window_lo = wall - eta;
        row.window_hi = wall;
        // Strength of the physical front nearest the wall feeds the
        // boundary denominator.
        row.strength = 1.0;
        for (auto it = fronts.rbegin(); it != fronts.rend(); ++it)
            if (it->kind != WaveKind::NonPhysical) {
                row.strength = it->strength;
                row.family = it->family;
                row.kind = it->kind;
                break;
            }
        rows.push_back(row);
        centers.push_back(wall);
    }

    // Overlapping windows split at the midpoint of their centers.
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (rows[i].window_hi > rows[i + 1].window_lo) {
            const double mid = 0.5 * (centers[i] + centers[i + 1]);
            rows[i].window_hi = std::min(rows[i].window_hi, mid);
            rows[i + 1].window_lo = std::max(rows[i + 1].window_lo, mid);
            rows[i].window_reduced = true;
            rows[i + 1].window_reduced = true;
        }
    }

    for (ProbeRow& row : rows) {
        if (row.window_hi > row.window_lo)
            row.raw_error = l1_distance(full_after, ref_after, row.window_lo, row.window_hi);
        double denom = h;
        if (row.is_boundary)
            denom = h * (std::fabs(row.strength - 1.0) + 1.0);
        else if (row.kind == WaveKind::NonPhysical)
            denom = h * std::max(row.strength, 1e-300);
        else
            denom = h * std::max(std::fabs(row.strength - 1.0), 1e-300);
        row.ratio = row.raw_error / denom;
    }
    return rows;
}

}  // namespace wedge
