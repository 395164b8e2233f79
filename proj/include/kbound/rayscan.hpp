#pragma once

// The ray t -> L - tE: piecewise-quadratic volume, piecewise-linear restricted
// volume g(t) = P(t).E, the thresholds eps = eta and tau, the S-invariant and
// the fixed-part degree.

#include "kbound/ns_lattice.hpp"
#include "kbound/poly.hpp"
#include "kbound/zariski.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kbound {

/// A maximal interval of constant Zariski support. On it the positive part is
/// affine in t: P(t) = p0 + t p1.
struct RaySegment {
    Rat start;
    Rat end;
    std::vector<std::string> support;
    DivClass p0;
    DivClass p1;
    Poly volume;      // P(t)^2
    Poly restricted;  // P(t).E

    friend bool operator==(const RaySegment&, const RaySegment&) = default;
};

struct RaySweep {
    DivClass l;
    DivClass e;
    Rat l_squared;
    Rat tau;
    std::vector<RaySegment> segments;
    bool trusted = true;

    PiecewisePoly volume() const;
    PiecewisePoly restricted() const;
    /// Start of the first segment with nonempty support, or tau.
    Rat nef_threshold() const;
};

/// Event-driven sweep. Requires L nef with L^2 > 0, E != 0, and no catalog
/// curve C with L.C = 0 < E.C (DomainError). An irrational breakpoint is a
/// ModelError: it cannot occur on a Mori dream surface with a complete catalog.
RaySweep sweep_ray(const DivClass& l, const DivClass& e, const SurfaceModel& s);

PiecewisePoly volume_ray(const DivClass& l, const DivClass& e, const SurfaceModel& s);
PiecewisePoly restricted_volume_ray(const DivClass& l, const DivClass& e, const SurfaceModel& s);

struct Thresholds {
    Rat eps;
    Rat eta;
    Rat tau;
    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// eps from the catalog, min over E.C > 0 of L.C / E.C, capped where the ray
/// leaves the positive cone; eta = eps; tau from the sweep.
Thresholds thresholds(const DivClass& l, const DivClass& e, const SurfaceModel& s);
Rat seshadri_threshold(const DivClass& l, const DivClass& e, const SurfaceModel& s);

/// (1/L^2) int vol, cross-checked against (2/L^2) int t g(t) dt.
Rat s_invariant(const RaySweep& sweep);
Rat s_invariant(const DivClass& l, const DivClass& e, const SurfaceModel& s);

/// (2/L^2) int ((L - tE).E - g) g dt for a ray along a (-1)-curve E with
/// L.E = 0, i.e. the exceptional divisor of a point blowup.
Rat fixed_part_degree(const RaySweep& sweep, const SurfaceModel& s);
Rat fixed_part_degree(const DivClass& l, const DivClass& e, const SurfaceModel& s);

struct RayInvariants {
    Rat eps;
    Rat eta;
    Rat tau;
    Rat s_inv;
    std::optional<Rat> fixed_deg;  // exceptional rays only
    Rat l_squared;
    PiecewisePoly vol_profile;
    PiecewisePoly restricted_profile;
    Rat log_discrepancy;
    std::vector<std::vector<std::string>> supports;  // per segment
    bool trusted = true;

    /// 0 < eps = eta <= sqrt(L^2) <= tau, 0 < S <= (2/3) tau, vol' = -2 g per
    /// segment, g concave. Throws InternalError.
    void verify() const;

    friend bool operator==(const RayInvariants&, const RayInvariants&) = default;
};

RayInvariants ray_invariants(const DivClass& l, const DivClass& e, const SurfaceModel& s, const Rat& log_discrepancy);

/// The exceptional ray over a point: L is a class on the base, required ample
/// there (nef, big, positive on every catalog curve).
RayInvariants point_invariants(const PointModel& pm, const DivClass& l_base);

void require_ample(const DivClass& l, const SurfaceModel& s);

/// profile / Ln == 1 - (t/T)^n on every segment, T = profile.upper().
bool profile_match_fujita(const PiecewisePoly& profile, int n, const Rat& ln);
/// profile / Ln == 1 - n (t/T)^(n-1) + (n-1) (t/T)^n on every segment.
bool profile_match_eq_adjunction(const PiecewisePoly& profile, int n, const Rat& ln);

/// Polynomial on [0, T] for the two closed forms, for building synthetic profiles.
PiecewisePoly fujita_profile(int n, const Rat& ln, const Rat& t_end);
PiecewisePoly eq_adjunction_profile(int n, const Rat& ln, const Rat& t_end);

/// CSV with columns t, vol, g and their decimal renderings, sampled at
/// 0, step, 2 step, ... and always including tau.
std::string profile_csv(const RaySweep& sweep, const Rat& step);

}  // namespace kbound
