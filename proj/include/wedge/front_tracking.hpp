#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "wedge/profile.hpp"
#include "wedge/riemann.hpp"
#include "wedge/types.hpp"

// Event-driven wave-front tracking on the wedge domain y < b0 * x. Jumps are
// resolved by the accurate solver (exact Riemann solution, rarefactions split
// into fans of log-equal pieces) or, for weak collisions, by the simplified
// solver which lets the incoming waves cross unchanged and lumps the mismatch
// into a non-physical front of fixed speed lambda_hat.

namespace wedge {

struct SchemeParams {
    int nu = 8;                    // resolution parameter
    double fan_kappa = 1.0;        // rarefaction fan count calibration
    double varrho = 0.0;           // ARS/SRS threshold; <= 0 selects 2^-nu
    double lambda_hat = 0.0;       // non-physical speed; <= 0 selects a derived bound
    double speed_perturb = 0.0;    // per-front speed nudge scale; <= 0 selects 2^(-nu-20)
    std::size_t max_fronts = 200000;
    std::size_t max_events = 2000000;

    double resolved_varrho() const { return varrho > 0.0 ? varrho : std::exp2(-nu); }
    double resolved_perturb() const {
        return speed_perturb > 0.0 ? speed_perturb : std::exp2(-nu - 20);
    }
};

// Fills lambda_hat from a grid scan of the characteristic speeds over the
// bounds box (plus |b0|) and pins the defaulted fields.
SchemeParams make_scheme_params(int nu, const ModelParams& p, const DomainBounds& bounds);

struct EventRecord {
    double x = 0.0;
    double y = 0.0;
    std::string type;  // collision_ars, collision_srs, np_collision, boundary_reflect, ...
    std::vector<double> in_strengths, out_strengths;
};

struct DiagramSegment {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    Family family = Family::One;
    WaveKind kind = WaveKind::Shock;
    double strength = 1.0;
};

struct Diagnostics {
    double tv = 0.0;
    double linf = 0.0;
    std::size_t n_shock = 0, n_rarefaction = 0, n_nonphysical = 0;
    double np_total_strength = 0.0;
    double max_raref_strength = 0.0;  // max |alpha - 1| over rarefaction fronts
};

// Piecewise-constant approximation of a sampled function of y which is
// constant outside [y_lo, y_hi]: greedy merging of a fine sampling with a
// deviation threshold sized so the L1 error stays below 2^-nu.
Profile discretize_initial(const std::function<State(double)>& U0, double y_lo, double y_hi,
                           const SchemeParams& sp);

// Exact Riemann solution of (U_L, U_R) as a front list at y = 0: shocks as
// single fronts at their jump-condition speed, each rarefaction split into
// fans of equal log-strength below 1/nu, traveling at the characteristic
// speed of their right state. Speeds are exact (the tracker adds nudges).
std::vector<Front> accurate_solver(const State& UL, const State& UR, const ModelParams& p,
                                   const SchemeParams& sp);

// Crossing of two incoming fronts with unchanged strengths, re-anchored on
// the left state; the leftover mismatch rides a non-physical front at
// lambda_hat. The outgoing jumps telescope to U_R - U_L exactly.
std::vector<Front> simplified_solver(const State& UL, const State& UR,
                                     const std::pair<Front, Front>& incoming,
                                     const ModelParams& p, const SchemeParams& sp);

// Diagnostics of a profile (fronts metadata feeds the counts and budgets).
Diagnostics diagnostics(const Profile& prof);

class Tracker {
  public:
    Tracker(const ModelParams& p, const SchemeParams& sp, const DomainBounds& bounds);

    // Resolves every jump of the profile (and the boundary trace) with the
    // accurate solver. The profile's fronts metadata is ignored.
    void set_initial(const Profile& prof);

    // Adopts the profile's fronts as-is (positions, speeds, states).
    void continue_from(const Profile& prof);

    void advance_to(double x_target);

    double x() const { return x_; }
    Profile profile() const;
    const std::vector<EventRecord>& events() const { return events_; }
    std::vector<DiagramSegment> diagram() const;

    double tv_initial() const { return tv0_; }
    double tv_peak() const { return tv_peak_; }
    double np_peak() const { return np_peak_; }
    double max_rarefaction_seen() const { return max_raref_seen_; }
    std::size_t event_count() const { return events_.size(); }

  private:
    struct Birth {
        double x = 0.0, y = 0.0;
    };

    void insert_fronts(std::size_t at, std::vector<Front>&& outs, double y);
    void retire_front(const Front& f, double y_end);
    std::vector<Front> ars_fronts(const RiemannFan& fan);
    void apply_nudges(std::vector<Front>& outs);
    void resolve_boundary_at(std::size_t idx);
    void post_event_bookkeeping();

    ModelParams p_;
    SchemeParams sp_;
    DomainBounds bounds_;
    double x_ = 0.0;
    State left_tail_{1.0, 0.0};
    std::vector<Front> fronts_;
    std::vector<EventRecord> events_;
    std::vector<DiagramSegment> retired_;
    std::vector<std::pair<int, Birth>> births_;  // id -> birth point, append-only
    int next_id_ = 1;
    double tv0_ = 0.0, tv_peak_ = 0.0, np_peak_ = 0.0, max_raref_seen_ = 0.0;
    std::size_t processed_events_ = 0;
};

struct EvolveResult {
    Profile profile;
    std::vector<EventRecord> events;
    std::vector<DiagramSegment> diagram;
    double tv_initial = 0.0, tv_peak = 0.0, np_peak = 0.0, max_rarefaction_seen = 0.0;
};

// One-shot evolution. Uses continue_from when the profile carries fronts,
// set_initial otherwise.
EvolveResult evolve(const Profile& prof, double x_target, const ModelParams& p,
                    const SchemeParams& sp, const DomainBounds& bounds = {});

void write_event_log(std::ostream& os, const std::vector<EventRecord>& events);
void write_wave_diagram(std::ostream& os, const std::vector<DiagramSegment>& segments);

}  // namespace wedge
