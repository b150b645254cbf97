#include "wedge/front_tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "wedge/io.hpp"
#include "wedge/wave_curves.hpp"

namespace wedge {

namespace {

constexpr double kNullJump = 1e-14;

double linf_jump(const State& a, const State& b) {
    return std::max(std::fabs(b.rho - a.rho), std::fabs(b.v - a.v));
}

double comp_jump(const State& a, const State& b) {
    return std::fabs(b.rho - a.rho) + std::fabs(b.v - a.v);
}

// Number of fan pieces for a rarefaction of log-size L: ceil(L * nu * kappa),
// bumped so each piece strength stays strictly below 1/nu even on the
// alpha > 1 side where exp(L/m) - 1 > L/m.
int fan_count(double L, const SchemeParams& sp) {
    int m = std::max(1, static_cast<int>(std::ceil(L * sp.nu * sp.fan_kappa - 1e-12)));
    while (std::expm1(L / m) >= 1.0 / sp.nu && m < (1 << 20)) ++m;
    return m;
}

// Emits the fronts of one fan wave starting from `left`, ending exactly at
// `right` (the final fan piece is snapped onto it; the drift absorbed this
// way is bounded by the solver's recomposition tolerance).
void emit_wave(std::vector<Front>& out, const FanWave& fw, const State& left, const State& right,
               const ModelParams& p, const SchemeParams& sp) {
    if (fw.wave.kind == WaveKind::Shock) {
        Front f;
        f.family = fw.wave.family;
        f.kind = WaveKind::Shock;
        f.strength = fw.wave.alpha;
        f.speed = fw.xi_lo;
        f.left = left;
        f.right = right;
        out.push_back(f);
        return;
    }
    const double la = std::log(fw.wave.alpha);
    const int m = fan_count(std::fabs(la), sp);
    const double piece = std::exp(la / m);
    const int idx = (fw.wave.family == Family::One) ? 0 : 1;
    State cur = left;
    for (int k = 0; k < m; ++k) {
        const State nxt = (k == m - 1) ? right : wave_right_state(piece, fw.wave.family, cur, p);
        Front f;
        f.family = fw.wave.family;
        f.kind = WaveKind::Rarefaction;
        f.strength = piece;
        f.speed = eigenvalues(nxt, p)[idx];
        f.left = cur;
        f.right = nxt;
        out.push_back(f);
        cur = nxt;
    }
}

std::vector<Front> fronts_from_fan(const RiemannFan& fan, const ModelParams& p,
                                   const SchemeParams& sp) {
    std::vector<Front> out;
    for (std::size_t i = 0; i < fan.waves.size(); ++i)
        emit_wave(out, fan.waves[i], fan.constant_states[i], fan.constant_states[i + 1], p, sp);
    return out;
}

// Single physical front of the given strength re-anchored at `left`; used by
// the simplified solver where incoming waves cross unchanged.
Front crossed_front(double alpha, Family family, const State& left, const ModelParams& p) {
    Front f;
    f.family = family;
    const bool shock_side = (family == Family::One) ? (alpha > 1.0) : (alpha < 1.0);
    f.kind = shock_side ? WaveKind::Shock : WaveKind::Rarefaction;
    f.strength = alpha;
    f.left = left;
    f.right = wave_right_state(alpha, family, left, p);
    if (f.kind == WaveKind::Shock) {
        f.speed = shock_speed(WaveDescriptor{family, WaveKind::Shock, alpha}, left, f.right, p);
    } else {
        const int idx = (family == Family::One) ? 0 : 1;
        f.speed = eigenvalues(f.right, p)[idx];
    }
    return f;
}

}  // namespace

SchemeParams make_scheme_params(int nu, const ModelParams& p, const DomainBounds& bounds) {
    if (nu < 1) throw config_error("make_scheme_params: nu must be >= 1, got " + std::to_string(nu));
    SchemeParams sp;
    sp.nu = nu;
    sp.varrho = std::exp2(-nu);
    sp.speed_perturb = std::exp2(-nu - 20);

    // lambda_hat must dominate every characteristic speed over the bounds box
    // and the boundary slope. Grid scan with margin.
    double speed = std::fabs(p.b0);
    int admissible = 0;
    const int n = 8;
    for (int i = 0; i <= n; ++i) {
        const double rho = bounds.rho_lo + (bounds.rho_hi - bounds.rho_lo) * i / n;
        for (int j = 0; j <= n; ++j) {
            const double v = -bounds.v_max + 2.0 * bounds.v_max * j / n;
            try {
                const auto lam = eigenvalues(State{rho, v}, p);
                speed = std::max({speed, std::fabs(lam[0]), std::fabs(lam[1])});
                ++admissible;
            } catch (const error&) {
                // box corner outside the admissible set; fine for the scan
            }
        }
    }
    if (admissible == 0)
        throw degeneracy_error("make_scheme_params: no admissible state inside the bounds box");
    sp.lambda_hat = speed + 1.0 + std::fabs(p.b0);
    return sp;
}

Profile discretize_initial(const std::function<State(double)>& U0, double y_lo, double y_hi,
                           const SchemeParams& sp) {
    if (!(y_hi > y_lo)) throw domain_error("discretize_initial: empty support interval");
    const std::size_t n = 1u << 16;
    const double h = (y_hi - y_lo) / static_cast<double>(n);
    const double thr = 0.5 * std::exp2(-sp.nu) / (y_hi - y_lo);

    Profile prof;
    State rep = U0(y_lo);
    prof.values.push_back(rep);
    double y_prev = y_lo;
    for (std::size_t i = 1; i <= n; ++i) {
        const double y = y_lo + static_cast<double>(i) * h;
        double lo = y_prev;
        // A steep stretch may need several breakpoints inside one cell.
        while (comp_jump(rep, U0(y)) > thr) {
            double a = lo, b = y;
            for (int it = 0; it < 100 && a < b; ++it) {
                const double mid = 0.5 * (a + b);
                if (comp_jump(rep, U0(mid)) > thr)
                    b = mid;
                else
                    a = mid;
            }
            rep = U0(b);
            prof.breakpoints.push_back(b);
            prof.values.push_back(rep);
            lo = b;
            if (prof.breakpoints.size() > sp.max_fronts)
                throw domain_error("discretize_initial: unbounded variation in the input");
        }
        y_prev = y;
    }
    const State tail = U0(y_hi);
    if (linf_jump(prof.values.back(), tail) > 0.0) {
        if (!prof.breakpoints.empty() && prof.breakpoints.back() >= y_hi) {
            prof.values.back() = tail;
        } else {
            prof.breakpoints.push_back(y_hi);
            prof.values.push_back(tail);
        }
    }
    return prof;
}

std::vector<Front> accurate_solver(const State& UL, const State& UR, const ModelParams& p,
                                   const SchemeParams& sp) {
    return fronts_from_fan(solve_interior(UL, UR, p), p, sp);
}

std::vector<Front> simplified_solver(const State& UL, const State& UR,
                                     const std::pair<Front, Front>& incoming,
                                     const ModelParams& p, const SchemeParams& sp) {
    const Front& f = incoming.first;   // left (faster) incoming front
    const Front& g = incoming.second;  // right (slower) incoming front
    std::vector<Front> outs;

    auto close_with_np = [&](const State& anchor) {
        const State l = outs.empty() ? anchor : outs.back().right;
        const double size = linf_jump(l, UR);
        if (size <= kNullJump) {
            // Mismatch at roundoff level: absorb it into the last jump.
            if (!outs.empty()) outs.back().right = UR;
            return;
        }
        Front np;
        np.family = Family::NonPhysical;
        np.kind = WaveKind::NonPhysical;
        np.strength = size;
        np.speed = sp.lambda_hat;
        np.left = l;
        np.right = UR;
        outs.push_back(np);
    };

    const bool f_np = f.family == Family::NonPhysical;
    const bool g_np = g.family == Family::NonPhysical;
    if (f_np && g_np) {
        close_with_np(UL);
        return outs;
    }
    if (g_np)
        throw solver_error("simplified_solver: a physical front cannot catch a non-physical one");
    if (f_np) {
        // Non-physical front overtakes a physical one: the physical wave
        // keeps its strength, re-anchored on the incoming left state.
        outs.push_back(crossed_front(g.strength, g.family, UL, p));
        close_with_np(UL);
        return outs;
    }

    if (f.family == g.family) {
        const double merged = f.strength * g.strength;
        if (std::fabs(merged - 1.0) > kNullJump)
            outs.push_back(crossed_front(merged, f.family, UL, p));
    } else {
        if (f.family != Family::Two || g.family != Family::One)
            throw solver_error("simplified_solver: colliding families out of order");
        outs.push_back(crossed_front(g.strength, Family::One, UL, p));
        outs.push_back(crossed_front(f.strength, Family::Two, outs.back().right, p));
    }
    close_with_np(UL);
    return outs;
}

Diagnostics diagnostics(const Profile& prof) {
    Diagnostics d;
    d.tv = total_variation(prof);
    d.linf = linf_deviation(prof);
    for (const Front& f : prof.fronts) {
        switch (f.kind) {
            case WaveKind::Shock: ++d.n_shock; break;
            case WaveKind::Rarefaction:
                ++d.n_rarefaction;
                d.max_raref_strength = std::max(d.max_raref_strength, std::fabs(f.strength - 1.0));
                break;
            case WaveKind::NonPhysical:
                ++d.n_nonphysical;
                d.np_total_strength += f.strength;
                break;
        }
    }
    return d;
}

Tracker::Tracker(const ModelParams& p, const SchemeParams& sp, const DomainBounds& bounds)
    : p_(p), sp_(sp), bounds_(bounds) {
    validate(p_);
    if (sp_.nu < 1) throw config_error("Tracker: nu must be >= 1");
    if (sp_.varrho <= 0.0) sp_.varrho = sp_.resolved_varrho();
    if (sp_.speed_perturb <= 0.0) sp_.speed_perturb = sp_.resolved_perturb();
    if (sp_.lambda_hat <= 0.0)
        sp_.lambda_hat = make_scheme_params(sp_.nu, p_, bounds_).lambda_hat;
}

void Tracker::apply_nudges(std::vector<Front>& outs) {
    for (Front& f : outs) {
        f.id = next_id_++;
        if (f.family != Family::NonPhysical)
            f.speed += static_cast<double>(f.id % 997) * sp_.speed_perturb;
    }
}

std::vector<Front> Tracker::ars_fronts(const RiemannFan& fan) {
    return fronts_from_fan(fan, p_, sp_);
}

void Tracker::retire_front(const Front& f, double y_end) {
    Birth b{x_, f.y_at};
    for (auto it = births_.rbegin(); it != births_.rend(); ++it)
        if (it->first == f.id) {
            b = it->second;
            break;
        }
    retired_.push_back(DiagramSegment{b.x, b.y, x_, y_end, f.family, f.kind, f.strength});
}

void Tracker::insert_fronts(std::size_t at, std::vector<Front>&& outs, double y) {
    for (Front& f : outs) {
        f.y_at = y;
        births_.emplace_back(f.id, Birth{x_, y});
    }
    fronts_.insert(fronts_.begin() + static_cast<std::ptrdiff_t>(at),
                   std::make_move_iterator(outs.begin()), std::make_move_iterator(outs.end()));
}

void Tracker::set_initial(const Profile& prof) {
    if (prof.values.empty() || prof.values.size() != prof.breakpoints.size() + 1)
        throw domain_error("Tracker::set_initial: malformed profile");
    x_ = prof.x;
    fronts_.clear();
    events_.clear();
    retired_.clear();
    births_.clear();
    next_id_ = 1;
    processed_events_ = 0;
    left_tail_ = prof.values.front();

    const double yb = p_.b0 * x_;
    for (const State& s : prof.values)
        if (!bounds_.contains(s))
            throw domain_error("Tracker::set_initial: state outside the bounds box (rho=" +
                               std::to_string(s.rho) + ", v=" + std::to_string(s.v) + ")");
    for (std::size_t j = 0; j < prof.breakpoints.size(); ++j) {
        if (j > 0 && !(prof.breakpoints[j] > prof.breakpoints[j - 1]))
            throw domain_error("Tracker::set_initial: breakpoints not strictly increasing");
        if (!(prof.breakpoints[j] < yb))
            throw domain_error("Tracker::set_initial: breakpoint on or beyond the boundary");
        if (linf_jump(prof.values[j], prof.values[j + 1]) <= kNullJump) continue;
        auto outs = ars_fronts(solve_interior(prof.values[j], prof.values[j + 1], p_));
        if (!outs.empty()) outs.back().right = prof.values[j + 1];
        apply_nudges(outs);
        insert_fronts(fronts_.size(), std::move(outs), prof.breakpoints[j]);
    }

    // Resolve the boundary trace if the rightmost state violates it.
    const State& ub = prof.values.back();
    if (std::fabs(ub.v - p_.b0 * w_factor(ub, p_)) > 1e-12) {
        auto outs = ars_fronts(solve_boundary(ub, p_));
        apply_nudges(outs);
        for (const Front& f : outs)
            if (!(f.speed < p_.b0))
                throw solver_error("Tracker::set_initial: boundary wave does not enter the domain");
        insert_fronts(fronts_.size(), std::move(outs), yb);
    }

    tv0_ = total_variation(profile());
    tv_peak_ = tv0_;
    np_peak_ = 0.0;
    max_raref_seen_ = 0.0;
    post_event_bookkeeping();
}

void Tracker::continue_from(const Profile& prof) {
    x_ = prof.x;
    fronts_ = prof.fronts;
    events_.clear();
    retired_.clear();
    births_.clear();
    processed_events_ = 0;
    left_tail_ = prof.values.empty() ? (fronts_.empty() ? State{} : fronts_.front().left)
                                     : prof.values.front();
    next_id_ = 1;
    const double yb = p_.b0 * x_;
    for (std::size_t i = 0; i < fronts_.size(); ++i) {
        if (i > 0 && !(fronts_[i].y_at >= fronts_[i - 1].y_at))
            throw domain_error("Tracker::continue_from: fronts out of order");
        if (fronts_[i].y_at > yb + 1e-12)
            throw domain_error("Tracker::continue_from: front beyond the boundary");
        next_id_ = std::max(next_id_, fronts_[i].id + 1);
        births_.emplace_back(fronts_[i].id, Birth{x_, fronts_[i].y_at});
    }
    tv0_ = total_variation(profile());
    tv_peak_ = tv0_;
    np_peak_ = 0.0;
    max_raref_seen_ = 0.0;
    post_event_bookkeeping();
}

void Tracker::post_event_bookkeeping() {
    double tv = 0.0, np = 0.0;
    if (!fronts_.empty()) tv = comp_jump(left_tail_, fronts_.front().left);
    for (const Front& f : fronts_) {
        tv += comp_jump(f.left, f.right);
        if (f.family == Family::NonPhysical)
            np += f.strength;
        else if (f.kind == WaveKind::Rarefaction)
            max_raref_seen_ = std::max(max_raref_seen_, std::fabs(f.strength - 1.0));
    }
    tv_peak_ = std::max(tv_peak_, tv);
    np_peak_ = std::max(np_peak_, np);
}

void Tracker::resolve_boundary_at(std::size_t idx) {
    if (idx + 1 != fronts_.size())
        throw solver_error("Tracker: boundary hit by a non-rightmost front");
    const Front f = fronts_[idx];
    const double ye = p_.b0 * x_;

    EventRecord ev;
    ev.x = x_;
    ev.y = ye;
    ev.type = (f.family == Family::NonPhysical) ? "np_boundary_absorb" : "boundary_reflect";
    ev.in_strengths = {f.strength};

    retire_front(f, ye);
    fronts_.pop_back();

    if (f.family == Family::NonPhysical) {
        // A non-physical front is removed at the wall without reflection.
        // Re-solving the boundary here would emit micro reflected waves whose
        // crossings breed new non-physical fronts, and the wall turns into a
        // geometric event cascade. Dropping it leaves a trace mismatch of at
        // most the front's size, which is within the scheme's 2^-nu budget
        // and is repaired by the next physical reflection (that solve starts
        // from the actual wall state).
        events_.push_back(std::move(ev));
        return;
    }

    auto outs = ars_fronts(solve_boundary(f.left, p_));
    apply_nudges(outs);
    for (const Front& nf : outs)
        if (!(nf.speed < p_.b0))
            throw solver_error("Tracker: reflected wave does not enter the domain");
    for (const Front& nf : outs) ev.out_strengths.push_back(nf.strength);
    insert_fronts(fronts_.size(), std::move(outs), ye);
    events_.push_back(std::move(ev));
}

void Tracker::advance_to(double x_target) {
    if (!(x_target >= x_)) throw domain_error("Tracker::advance_to: x_target is behind current x");

    auto translate = [&](double xn) {
        const double dx = xn - x_;
        for (Front& f : fronts_) f.y_at += f.speed * dx;
        x_ = xn;
    };

    while (true) {
        double best_x = std::numeric_limits<double>::infinity();
        double best_y = 0.0;
        int best_id = std::numeric_limits<int>::max();
        std::size_t best_i = static_cast<std::size_t>(-1);
        bool best_boundary = false;

        auto consider = [&](double xe, double ye, int id, std::size_t i, bool boundary) {
            if (xe < best_x || (xe == best_x && (ye < best_y || (ye == best_y && id < best_id)))) {
                best_x = xe;
                best_y = ye;
                best_id = id;
                best_i = i;
                best_boundary = boundary;
            }
        };

        for (std::size_t i = 0; i + 1 < fronts_.size(); ++i) {
            const Front& a = fronts_[i];
            const Front& b = fronts_[i + 1];
            const double ds = a.speed - b.speed;
            if (!(ds > 0.0)) continue;
            double dt = (b.y_at - a.y_at) / ds;
            if (dt < 0.0) dt = 0.0;  // roundoff overlap resolves immediately
            consider(x_ + dt, a.y_at + a.speed * dt, std::min(a.id, b.id), i, false);
        }
        if (!fronts_.empty()) {
            const Front& a = fronts_.back();
            if (a.speed > p_.b0) {
                double dt = (p_.b0 * x_ - a.y_at) / (a.speed - p_.b0);
                if (dt < 0.0) dt = 0.0;
                consider(x_ + dt, p_.b0 * (x_ + dt), a.id, fronts_.size() - 1, true);
            }
        }

        if (best_i == static_cast<std::size_t>(-1) || best_x > x_target) {
            translate(x_target);
            return;
        }

        translate(best_x);
        if (best_boundary) {
            resolve_boundary_at(best_i);
        } else {
            const Front f = fronts_[best_i];
            const Front g = fronts_[best_i + 1];
            EventRecord ev;
            ev.x = x_;
            ev.y = best_y;
            ev.in_strengths = {f.strength, g.strength};

            std::vector<Front> outs;
            const bool np_involved =
                f.family == Family::NonPhysical || g.family == Family::NonPhysical;
            // A same-family merge is the one place the simplified solver can
            // grow a rarefaction past the 1/nu strength bound; fall back to
            // the accurate solver there so fans get re-split.
            const bool srs_would_break_fan_bound =
                !np_involved && f.family == g.family &&
                std::fabs(f.strength * g.strength - 1.0) >= 0.999 / sp_.nu &&
                ((f.family == Family::One && f.strength * g.strength < 1.0) ||
                 (f.family == Family::Two && f.strength * g.strength > 1.0));
            if (np_involved) {
                ev.type = "np_collision";
                outs = simplified_solver(f.left, g.right, {f, g}, p_, sp_);
            } else if (srs_would_break_fan_bound ||
                       std::fabs(f.strength - 1.0) * std::fabs(g.strength - 1.0) > sp_.varrho) {
                ev.type = "collision_ars";
                outs = accurate_solver(f.left, g.right, p_, sp_);
                if (!outs.empty()) outs.back().right = g.right;
            } else {
                ev.type = "collision_srs";
                outs = simplified_solver(f.left, g.right, {f, g}, p_, sp_);
            }
            apply_nudges(outs);
            for (const Front& nf : outs) ev.out_strengths.push_back(nf.strength);

            retire_front(f, best_y);
            retire_front(g, best_y);
            fronts_.erase(fronts_.begin() + static_cast<std::ptrdiff_t>(best_i),
                          fronts_.begin() + static_cast<std::ptrdiff_t>(best_i) + 2);
            insert_fronts(best_i, std::move(outs), best_y);
            events_.push_back(std::move(ev));
        }

        if (++processed_events_ > sp_.max_events)
            throw solver_error("Tracker: event budget exceeded (scheduling runaway?)");
        if (fronts_.size() > sp_.max_fronts)
            throw solver_error("Tracker: front count exceeded max_fronts");
        post_event_bookkeeping();
    }
}

Profile Tracker::profile() const {
    Profile prof;
    prof.x = x_;
    prof.values.push_back(fronts_.empty() ? left_tail_ : fronts_.front().left);
    for (const Front& f : fronts_) {
        if (!prof.breakpoints.empty() && !(f.y_at > prof.breakpoints.back())) {
            // Zero-width region right at an interaction point: merge jumps.
            prof.values.back() = f.right;
        } else {
            prof.breakpoints.push_back(f.y_at);
            prof.values.push_back(f.right);
        }
    }
    prof.fronts = fronts_;
    return prof;
}

std::vector<DiagramSegment> Tracker::diagram() const {
    std::vector<DiagramSegment> segs = retired_;
    for (const Front& f : fronts_) {
        Birth b{x_, f.y_at};
        for (auto it = births_.rbegin(); it != births_.rend(); ++it)
            if (it->first == f.id) {
                b = it->second;
                break;
            }
        segs.push_back(DiagramSegment{b.x, b.y, x_, f.y_at, f.family, f.kind, f.strength});
    }
    return segs;
}

EvolveResult evolve(const Profile& prof, double x_target, const ModelParams& p,
                    const SchemeParams& sp, const DomainBounds& bounds) {
    Tracker tr(p, sp, bounds);
    if (prof.fronts.empty())
        tr.set_initial(prof);
    else
        tr.continue_from(prof);
    tr.advance_to(x_target);
    EvolveResult res;
    res.profile = tr.profile();
    res.events = tr.events();
    res.diagram = tr.diagram();
    res.tv_initial = tr.tv_initial();
    res.tv_peak = tr.tv_peak();
    res.np_peak = tr.np_peak();
    res.max_rarefaction_seen = tr.max_rarefaction_seen();
    return res;
}

void write_event_log(std::ostream& os, const std::vector<EventRecord>& events) {
    os << "x,y,event_type,in_strengths,out_strengths\n";
    for (const EventRecord& ev : events) {
        os << fmt(ev.x) << ',' << fmt(ev.y) << ',' << ev.type << ',';
        for (std::size_t i = 0; i < ev.in_strengths.size(); ++i)
            os << (i ? ";" : "") << fmt(ev.in_strengths[i]);
        os << ',';
        for (std::size_t i = 0; i < ev.out_strengths.size(); ++i)
            os << (i ? ";" : "") << fmt(ev.out_strengths[i]);
        os << '\n';
    }
}

void write_wave_diagram(std::ostream& os, const std::vector<DiagramSegment>& segments) {
    os << "x0,y0,x1,y1,family,kind,strength\n";
    for (const DiagramSegment& s : segments)
        os << fmt(s.x0) << ',' << fmt(s.y0) << ',' << fmt(s.x1) << ',' << fmt(s.y1) << ','
           << to_string(s.family) << ',' << to_string(s.kind) << ',' << fmt(s.strength) << '\n';
}

}  // namespace wedge
