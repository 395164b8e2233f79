#include "kbound/rayscan.hpp"

#include "kbound/errors.hpp"

#include <algorithm>
#include <sstream>

namespace kbound {

namespace {

enum class RootKind { None, Rational, Irrational };

struct Root {
    RootKind kind = RootKind::None;
    Rat value;
};

// First root of q in (lo, hi] (hi absent: unbounded), given q(lo) > 0.
Root first_root_after(const Poly& q, const Rat& lo, const std::optional<Rat>& hi) {
    auto inside = [&](const Rat& r) { return r > lo && (!hi || r <= *hi); };
    Root out;
    if (q.degree() <= 0) return out;
    if (q.degree() == 1) {
        Rat r = -q.coeff(0) / q.coeff(1);
        if (inside(r)) out = {RootKind::Rational, r};
        return out;
    }
    const Rat a = q.coeff(2), b = q.coeff(1), c = q.coeff(0);
    Rat disc = b * b - 4 * a * c;
    if (disc < 0) return out;
    if (auto sq = exact_sqrt(disc)) {
        Rat r1 = (-b - *sq) / (2 * a), r2 = (-b + *sq) / (2 * a);
        if (r2 < r1) std::swap(r1, r2);
        if (inside(r1)) return {RootKind::Rational, r1};
        if (inside(r2)) return {RootKind::Rational, r2};
        return out;
    }
    // Irrational pair: decide by signs whether one lies in the window.
    bool crosses = false;
    if (hi) {
        if (q(*hi) < 0) crosses = true;
        Rat vertex = -b / (2 * a);
        if (a > 0 && vertex > lo && vertex < *hi && q(vertex) < 0) crosses = true;
    } else {
        Rat vertex = -b / (2 * a);
        crosses = a < 0 || (vertex > lo && q(vertex) < 0);
    }
    if (crosses) out.kind = RootKind::Irrational;
    return out;
}

std::vector<CurveEntry> sorted_catalog(const SurfaceModel& s) {
    std::vector<CurveEntry> cat = s.negative_curves();
    std::sort(cat.begin(), cat.end(), [](const CurveEntry& a, const CurveEntry& b) { return a.cls < b.cls; });
    return cat;
}

bool contains(const std::vector<CurveEntry>& v, const CurveEntry& c) {
    return std::any_of(v.begin(), v.end(), [&](const CurveEntry& x) { return x.cls == c.cls; });
}

struct Affine {
    DivClass p0, p1;
    RatVec a0, a1;  // N(t) coefficients a0 + t a1
};

Affine affine_positive_part(const DivClass& l, const DivClass& e, const std::vector<CurveEntry>& support,
                            const SurfaceModel& s) {
    Affine out{l, -e, {}, {}};
    if (support.empty()) return out;
    RatMatrix g(support.size(), RatVec(support.size()));
    RatVec rl(support.size()), re(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
        rl[i] = s.pairing(l, support[i].cls);
        re[i] = -s.pairing(e, support[i].cls);
        for (std::size_t j = 0; j < support.size(); ++j) g[i][j] = s.pairing(support[i].cls, support[j].cls);
    }
    auto a0 = solve(g, rl);
    auto a1 = solve(g, re);
    if (!a0 || !a1) throw ModelError(s.name + ": singular support Gram matrix along the ray");
    out.a0 = *a0;
    out.a1 = *a1;
    for (std::size_t i = 0; i < support.size(); ++i) {
        out.p0 -= out.a0[i] * support[i].cls;
        out.p1 -= out.a1[i] * support[i].cls;
    }
    return out;
}

Poly affine_pairing(const DivClass& p0, const DivClass& p1, const DivClass& x, const SurfaceModel& s) {
    return Poly::linear(s.pairing(p0, x), s.pairing(p1, x));
}

Poly affine_square(const DivClass& p0, const DivClass& p1, const SurfaceModel& s) {
    return Poly(std::vector<Rat>{s.square(p0), 2 * s.pairing(p0, p1), s.square(p1)});
}

bool is_exceptional_ray(const DivClass& l, const DivClass& e, const SurfaceModel& s) {
    return s.square(e) == -1 && s.pairing(e, s.canonical) == -1 && s.pairing(l, e) == 0;
}

}  // namespace

PiecewisePoly RaySweep::volume() const {
    PiecewisePoly out;
    out.breakpoints.push_back(segments.front().start);
    for (const RaySegment& seg : segments) {
        out.breakpoints.push_back(seg.end);
        out.pieces.push_back(seg.volume);
    }
    return out;
}

PiecewisePoly RaySweep::restricted() const {
    PiecewisePoly out;
    out.breakpoints.push_back(segments.front().start);
    for (const RaySegment& seg : segments) {
        out.breakpoints.push_back(seg.end);
        out.pieces.push_back(seg.restricted);
    }
    return out;
}

Rat RaySweep::nef_threshold() const {
    for (const RaySegment& seg : segments)
        if (!seg.support.empty()) return seg.start;
    return tau;
}

void require_ample(const DivClass& l, const SurfaceModel& s) {
    if (l.rank() != s.rank) throw InputError("class rank does not match " + s.name);
    if (!is_nef(l, s) || s.square(l) <= 0) throw DomainError("class " + l.to_string() + " is not ample on " + s.name);
    for (const CurveEntry& c : s.curves)
        if (c.self_int < 0 && s.pairing(l, c.cls) <= 0)
            throw DomainError("class " + l.to_string() + " is not ample on " + s.name + ": meets " + c.name +
                              " nonpositively");
}

RaySweep sweep_ray(const DivClass& l, const DivClass& e, const SurfaceModel& s) {
    if (l.rank() != s.rank || e.rank() != s.rank) throw InputError("ray classes do not match the rank of " + s.name);
    if (e.is_zero()) throw DomainError("ray direction E is zero");
    if (!is_nef(l, s) || s.square(l) <= 0) throw DomainError("class " + l.to_string() + " is not ample");
    const std::vector<CurveEntry> catalog = sorted_catalog(s);
    for (const CurveEntry& c : catalog) {
        if (s.pairing(l, c.cls) == 0 && s.pairing(e, c.cls) > 0)
            throw DomainError("class " + l.to_string() + " is not ample: it is trivial on " + c.name);
    }

    RaySweep sweep;
    sweep.l = l;
    sweep.e = e;
    sweep.l_squared = s.square(l);
    sweep.trusted = s.catalog_complete;

    Rat t(0);
    const std::size_t max_segments = 2 * catalog.size() + 4;
    while (true) {
        if (sweep.segments.size() > max_segments) throw InternalError("ray sweep did not terminate");
        const DivClass here = l - t * e;
        std::string why;
        auto z = try_zariski_decompose(here, s, &why);
        if (!z) throw ModelError("ray left the pseudo-effective cone before P^2 reached 0: " + why);
        std::vector<CurveEntry> support;
        for (const SupportTerm& term : z->negative_support) support.push_back(term.curve);

        // Grow to the support just right of t: curves P(t) touches with
        // decreasing slope, iterated because each addition changes the slope.
        Affine aff = affine_positive_part(l, e, support, s);
        bool leaves_big_cone = false;
        while (true) {
            std::vector<CurveEntry> added;
            for (const CurveEntry& c : catalog) {
                if (contains(support, c)) continue;
                Poly pc = affine_pairing(aff.p0, aff.p1, c.cls, s);
                Rat now = pc(t);
                if (now < 0 || (now == 0 && pc.coeff(1) < 0)) added.push_back(c);
            }
            if (added.empty()) break;
            support.insert(support.end(), added.begin(), added.end());
            std::sort(support.begin(), support.end(), [](const CurveEntry& a, const CurveEntry& b) { return a.cls < b.cls; });
            RatMatrix g(support.size(), RatVec(support.size()));
            for (std::size_t i = 0; i < support.size(); ++i)
                for (std::size_t j = 0; j < support.size(); ++j) g[i][j] = s.pairing(support[i].cls, support[j].cls);
            if (!is_negative_definite(g)) {
                leaves_big_cone = true;
                break;
            }
            aff = affine_positive_part(l, e, support, s);
        }
        if (leaves_big_cone || s.square(z->positive) == 0) {
            if (s.square(z->positive) != 0)
                throw ModelError("ray leaves the pseudo-effective cone at t = " + to_string(t) + " with P^2 > 0");
            if (sweep.segments.empty()) throw InternalError("ray sweep: L^2 > 0 but volume vanishes at 0");
            sweep.tau = t;
            break;
        }
        Poly vol = affine_square(aff.p0, aff.p1, s);

        // Next change of support: a new curve activates or a coefficient dies.
        std::optional<Rat> next;
        auto consider = [&](const Rat& r) {
            if (r > t && (!next || r < *next)) next = r;
        };
        for (const CurveEntry& c : catalog) {
            if (contains(support, c)) continue;
            Poly pc = affine_pairing(aff.p0, aff.p1, c.cls, s);
            if (pc.coeff(1) < 0) consider(-pc.coeff(0) / pc.coeff(1));
        }
        for (std::size_t i = 0; i < support.size(); ++i)
            if (aff.a1[i] < 0) consider(-aff.a0[i] / aff.a1[i]);

        Root collapse = first_root_after(vol, t, next);
        if (collapse.kind == RootKind::Irrational)
            throw ModelError("volume along the ray vanishes at an irrational parameter; the catalog of " + s.name +
                             " cannot be complete for a Mori dream surface");
        if (collapse.kind == RootKind::None && !next)
            throw DomainError("ray " + l.to_string() + " - t" + e.to_string() + " never leaves the big cone");

        RaySegment seg;
        seg.start = t;
        seg.end = collapse.kind == RootKind::Rational ? collapse.value : *next;
        for (const CurveEntry& c : support) seg.support.push_back(c.name);
        seg.p0 = aff.p0;
        seg.p1 = aff.p1;
        seg.volume = vol;
        seg.restricted = affine_pairing(aff.p0, aff.p1, e, s);

        // Cross-check the chamber with an independent decomposition inside it.
        Rat mid = (seg.start + seg.end) / 2;
        auto zm = try_zariski_decompose(l - mid * e, s, &why);
        if (!zm) throw ModelError("ray left the pseudo-effective cone inside a chamber: " + why);
        ensure(zm->support_names() == seg.support, "ray sweep: chamber support disagrees with decomposition");
        ensure(zm->positive == aff.p0 + mid * aff.p1, "ray sweep: chamber positive part disagrees with decomposition");

        sweep.segments.push_back(std::move(seg));
        t = sweep.segments.back().end;
        if (collapse.kind == RootKind::Rational) {
            sweep.tau = t;
            break;
        }
    }
    return sweep;
}

PiecewisePoly volume_ray(const DivClass& l, const DivClass& e, const SurfaceModel& s) {
    return sweep_ray(l, e, s).volume();
}

PiecewisePoly restricted_volume_ray(const DivClass& l, const DivClass& e, const SurfaceModel& s) {
    return sweep_ray(l, e, s).restricted();
}

Rat seshadri_threshold(const DivClass& l, const DivClass& e, const SurfaceModel& s) {
    if (l.rank() != s.rank || e.rank() != s.rank) throw InputError("ray classes do not match the rank of " + s.name);
    if (!is_nef(l, s) || s.square(l) <= 0) throw DomainError("class " + l.to_string() + " is not ample");
    std::optional<Rat> best;
    auto consider = [&](const Rat& r) {
        if (!best || r < *best) best = r;
    };
    for (const CurveEntry& c : s.curves) {
        if (c.self_int >= 0) continue;
        Rat ec = s.pairing(e, c.cls);
        if (ec > 0) consider(s.pairing(l, c.cls) / ec);
    }
    Rat ea = s.pairing(e, s.ample_ref);
    if (ea > 0) consider(s.pairing(l, s.ample_ref) / ea);
    // (L - tE)^2 >= 0 up to its first positive root.
    Poly q(std::vector<Rat>{s.square(l), -2 * s.pairing(l, e), s.square(e)});
    Root exit = first_root_after(q, Rat(0), best);
    if (exit.kind == RootKind::Irrational)
        throw ModelError("nef threshold is irrational (positive-cone exit); catalog of " + s.name +
                         " cannot be complete for a Mori dream surface");
    if (exit.kind == RootKind::Rational) best = exit.value;
    if (!best) throw DomainError("ray never leaves the nef cone");
    return *best;
}

Thresholds thresholds(const DivClass& l, const DivClass& e, const SurfaceModel& s) {
    Rat eps = seshadri_threshold(l, e, s);
    RaySweep sweep = sweep_ray(l, e, s);
    ensure(eps == sweep.nef_threshold(), "nef threshold from the catalog disagrees with the sweep");
    return {eps, eps, sweep.tau};
}

Rat s_invariant(const RaySweep& sweep) {
    Rat by_volume(0), by_moment(0);
    for (const RaySegment& seg : sweep.segments) {
        by_volume += seg.volume.integral(seg.start, seg.end);
        by_moment += (Poly::monomial(Rat(1), 1) * seg.restricted).integral(seg.start, seg.end);
    }
    Rat s1 = by_volume / sweep.l_squared;
    Rat s2 = 2 * by_moment / sweep.l_squared;
    ensure(s1 == s2, "S-invariant: int vol = " + to_string(s1) + " but 2 int t g = " + to_string(s2));
    return s1;
}

Rat s_invariant(const DivClass& l, const DivClass& e, const SurfaceModel& s) { return s_invariant(sweep_ray(l, e, s)); }

Rat fixed_part_degree(const RaySweep& sweep, const SurfaceModel& s) {
    if (!is_exceptional_ray(sweep.l, sweep.e, s))
        throw DomainError("fixed-part degree needs the exceptional curve of a point blowup as ray");
    Rat total(0);
    for (const RaySegment& seg : sweep.segments) {
        // (L - tE).E = t here
        Poly pair = Poly::monomial(Rat(1), 1) - seg.restricted;
        total += (pair * seg.restricted).integral(seg.start, seg.end);
    }
    return 2 * total / sweep.l_squared;
}

Rat fixed_part_degree(const DivClass& l, const DivClass& e, const SurfaceModel& s) {
    return fixed_part_degree(sweep_ray(l, e, s), s);
}

void RayInvariants::verify() const {
    ensure(eps > 0, "eps must be positive");
    ensure(eps == eta, "eps and eta differ on a surface");
    ensure(eps <= tau, "eps exceeds tau");
    ensure(s_inv > 0, "S must be positive");
    ensure(3 * s_inv <= 2 * tau, "S exceeds (2/3) tau");
    ensure(vol_profile.is_continuous(), "volume profile is discontinuous");
    ensure(vol_profile(vol_profile.upper()) == 0, "volume does not vanish at tau");
    ensure(vol_profile(Rat(0)) == l_squared, "volume at 0 is not L^2");
    ensure(restricted_profile.is_continuous(), "restricted volume is discontinuous");
    for (std::size_t i = 0; i < vol_profile.pieces.size(); ++i) {
        ensure(vol_profile.pieces[i].derivative() == Rat(-2) * restricted_profile.pieces[i],
               "vol' != -2 g on a segment");
        ensure(restricted_profile.pieces[i](restricted_profile.breakpoints[i]) >= 0 &&
                   restricted_profile.pieces[i](restricted_profile.breakpoints[i + 1]) >= 0,
               "restricted volume is negative");
    }
    if (fixed_deg) {
        // Exceptional ray: eps^2 <= L^2 <= tau^2, g(t) = t up to eps, g concave.
        ensure(eps * eps <= l_squared && l_squared <= tau * tau, "eps <= sqrt(L^2) <= tau fails");
        ensure(*fixed_deg >= 0, "fixed-part degree is negative");
        for (std::size_t i = 0; i < restricted_profile.pieces.size(); ++i) {
            if (restricted_profile.breakpoints[i + 1] <= eps)
                ensure(restricted_profile.pieces[i] == Poly::monomial(Rat(1), 1), "g(t) != t below eps");
            if (i > 0)
                ensure(restricted_profile.pieces[i].coeff(1) <= restricted_profile.pieces[i - 1].coeff(1),
                       "restricted volume is not concave");
        }
    }
}

RayInvariants ray_invariants(const DivClass& l, const DivClass& e, const SurfaceModel& s, const Rat& log_discrepancy) {
    RaySweep sweep = sweep_ray(l, e, s);
    RayInvariants r;
    r.eps = seshadri_threshold(l, e, s);
    ensure(r.eps == sweep.nef_threshold(), "nef threshold from the catalog disagrees with the sweep");
    r.eta = r.eps;
    r.tau = sweep.tau;
    r.s_inv = s_invariant(sweep);
    if (is_exceptional_ray(l, e, s)) r.fixed_deg = fixed_part_degree(sweep, s);
    r.l_squared = sweep.l_squared;
    r.vol_profile = sweep.volume();
    r.restricted_profile = sweep.restricted();
    r.log_discrepancy = log_discrepancy;
    for (const RaySegment& seg : sweep.segments) r.supports.push_back(seg.support);
    r.trusted = sweep.trusted;
    r.verify();
    return r;
}

RayInvariants point_invariants(const PointModel& pm, const DivClass& l_base) {
    require_ample(l_base, pm.base);
    return ray_invariants(pm.pullback(l_base), pm.exceptional, pm.blown, pm.log_discrepancy);
}

PiecewisePoly fujita_profile(int n, const Rat& ln, const Rat& t_end) {
    if (n < 1 || ln <= 0 || t_end <= 0) throw DomainError("profile needs n >= 1, Ln > 0, T > 0");
    Poly p = Poly::constant(ln) - Poly::monomial(ln / pow(t_end, static_cast<unsigned>(n)), static_cast<unsigned>(n));
    return PiecewisePoly{{Rat(0), t_end}, {p}};
}

PiecewisePoly eq_adjunction_profile(int n, const Rat& ln, const Rat& t_end) {
    if (n < 2 || ln <= 0 || t_end <= 0) throw DomainError("profile needs n >= 2, Ln > 0, T > 0");
    const auto un = static_cast<unsigned>(n);
    Poly p = Poly::constant(Rat(1)) - Poly::monomial(Rat(n) / pow(t_end, un - 1), un - 1) +
             Poly::monomial(Rat(n - 1) / pow(t_end, un), un);
    return PiecewisePoly{{Rat(0), t_end}, {p * ln}};
}

namespace {

bool matches(const PiecewisePoly& profile, const PiecewisePoly& target) {
    if (profile.empty() || profile.lower() != 0) return false;
    for (std::size_t i = 0; i < profile.pieces.size(); ++i)
        if (profile.pieces[i] != target.pieces[0]) return false;
    return true;
}

}  // namespace

bool profile_match_fujita(const PiecewisePoly& profile, int n, const Rat& ln) {
    if (profile.empty() || profile.upper() <= 0) return false;
    return matches(profile, fujita_profile(n, ln, profile.upper()));
}

bool profile_match_eq_adjunction(const PiecewisePoly& profile, int n, const Rat& ln) {
    if (profile.empty() || profile.upper() <= 0) return false;
    return matches(profile, eq_adjunction_profile(n, ln, profile.upper()));
}

std::string profile_csv(const RaySweep& sweep, const Rat& step) {
    if (step <= 0) throw InputError("CSV step must be positive");
    PiecewisePoly vol = sweep.volume();
    PiecewisePoly g = sweep.restricted();
    std::ostringstream os;
    os << "t,vol,g,t_decimal,vol_decimal,g_decimal\n";
    auto row = [&](const Rat& t) {
        Rat v = vol(t);
        Rat gv = t == sweep.tau ? g.left_value(t) : g(t);
        os << to_string(t) << ',' << to_string(v) << ',' << to_string(gv) << ',' << to_decimal(t) << ','
           << to_decimal(v) << ',' << to_decimal(gv) << '\n';
    };
    for (Rat t(0); t < sweep.tau; t += step) row(t);
    row(sweep.tau);
    return os.str();
}

}  // namespace kbound
