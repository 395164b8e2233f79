// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// status if any criterion fails.

#include "kbound/concavity_lab.hpp"
#include "kbound/delta_engine.hpp"
#include "kbound/errors.hpp"
#include "kbound/rayscan.hpp"
#include "kbound/verdicts.hpp"
#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace kbound;

namespace {

struct Tally {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    void eq(const Rat& got, const Rat& want, const std::string& what) {
        if (got != want) failures.push_back(what + ": got " + to_string(got) + ", want " + to_string(want));
    }
};

DivClass cls(std::initializer_list<long> v) {
    std::vector<Rat> c;
    for (long x : v) c.emplace_back(x);
    return DivClass(c);
}

Poly poly(std::initializer_list<long> c) {
    std::vector<Rat> v;
    for (long x : c) v.emplace_back(x);
    return Poly(v);
}

const ChainCheck* chain_entry(const InvariantReport& r, const std::string& name) {
    for (const ChainCheck& c : r.chain)
        if (c.name == name) return &c;
    return nullptr;
}

void all_chain_checks_hold(Tally& t, const InvariantReport& r, const std::string& label) {
    for (const ChainCheck& c : r.chain)
        t.expect(c.holds, label + ": chain check '" + c.name + "' fails (" + to_string(c.lhs) + " vs " + to_string(c.rhs) + ")");
}

// 1. P2 with a general point, against the subset-search Zariski oracle.
void projective_plane(Tally& t) {
    SurfaceModel s = builtin_surface("P2");
    PointModel pm = blow_up(s, GeneralPoint{});
    DivClass h = cls({1});
    InvariantReport r = surface_delta_bound(s, h, pm);
    t.eq(r.ray.eps, Rat(1), "eps");
    t.eq(r.ray.eta, Rat(1), "eta");
    t.eq(r.ray.tau, Rat(1), "tau");
    t.eq(r.ray.s_inv, make_rat(2, 3), "S");
    t.expect(r.ray.fixed_deg && *r.ray.fixed_deg == 0, "deg F = 0");
    t.eq(r.lambda_bound, Rat(3), "lambda");
    t.expect(r.equality_class.kind == EqualityKind::EpsTauSqrt && r.equality_class.value == Rat(1), "EpsTauSqrt(1)");
    t.expect(r.ray.vol_profile.pieces.size() == 1 && r.ray.vol_profile.pieces[0] == poly({1, 0, -1}), "vol = 1 - t^2");

    InvariantReport c = corollary_rho1_bound(s, h, pm);
    const ChainCheck* prod = chain_entry(c, "eps * tau = L^2");
    t.expect(prod && prod->holds && prod->lhs == 1 && prod->rhs == 1, "eps * tau = L^2 exactly");

    // Oracle: volume at sample points from the brute-force decomposition,
    // integrated by Simpson (exact for quadratics).
    DivClass l = pm.pullback(h);
    auto oracle_vol = [&](const Rat& x) -> Rat {
        auto z = oracle::brute_zariski(l - x * pm.exceptional, pm.blown);
        return z ? pm.blown.square(z->positive) : Rat(0);
    };
    for (int k = 0; k <= 10; ++k) {
        Rat x = make_rat(k, 10);
        t.eq(r.ray.vol_profile(x), oracle_vol(x), "vol vs oracle at " + to_string(x));
    }
    t.eq(oracle::simpson(oracle_vol, Rat(0), Rat(1)), make_rat(2, 3), "oracle S");
    auto z = oracle::brute_zariski(l - make_rat(1, 2) * pm.exceptional, pm.blown);
    t.expect(z && z->support.empty(), "oracle: no negative part inside the nef range");
}

// 2. P1xP1, L = (1,1), general point.
void quadric(Tally& t) {
    SurfaceModel s = builtin_surface("P1xP1");
    PointModel pm = blow_up(s, GeneralPoint{});
    InvariantReport r = surface_delta_bound(s, cls({1, 1}), pm);
    const PiecewisePoly& v = r.ray.vol_profile;
    t.expect(v.breakpoints == std::vector<Rat>{Rat(0), Rat(1), Rat(2)}, "breakpoints 0, 1, 2");
    t.expect(v.pieces.size() == 2 && v.pieces[0] == poly({2, 0, -1}) && v.pieces[1] == poly({4, -4, 1}),
             "vol = 2 - t^2 then (2 - t)^2");
    t.eq(r.ray.s_inv, Rat(1), "S");
    t.expect(r.ray.fixed_deg && *r.ray.fixed_deg == make_rat(1, 3), "deg F = 1/3");
    t.eq(r.a_over_s, Rat(2), "A/S = 2/b with b = 1");
    t.eq(r.ray.tau, Rat(2), "tau = a + b");
    t.eq(r.ray.eps, Rat(1), "eps");
}

// 3. Cubic surface, -K, general point.
void cubic_surface(Tally& t) {
    SurfaceModel s = builtin_surface("DelPezzo(3)");
    PointModel pm = blow_up(s, GeneralPoint{});
    InvariantReport r = surface_delta_bound(s, -s.canonical, pm);
    t.eq(r.ray.eps, make_rat(3, 2), "eps");
    t.eq(r.ray.s_inv, make_rat(7, 6), "S");
    t.eq(r.ray.tau, Rat(2), "tau");
    t.eq(r.lambda_bound, make_rat(3, 2), "lambda");
    all_chain_checks_hold(t, r, "DelPezzo(3)");
}

// 4. S as the integral of vol and as the first moment of the restricted
// volume; vol' = -2 g on every segment.
void s_identity(Tally& t) {
    struct Item {
        const char* surface;
        std::optional<DivClass> ample;  // empty: -K
    };
    const std::vector<Item> items = {
        {"P2", cls({1})},
        {"P1xP1", cls({1, 1})},
        {"P1xP1", cls({1, 3})},
        {"P1xP1", cls({2, 3})},
        {"Hirzebruch(1)", std::nullopt},
        {"Hirzebruch(2)", std::nullopt},
        {"DelPezzo(7)", cls({4, -1, -2})},
        {"DelPezzo(6)", std::nullopt},
        {"DelPezzo(5)", cls({5, -2, -1, -1, -1})},
        {"DelPezzo(3)", std::nullopt},
    };
    for (const Item& it : items) {
        SurfaceModel s = builtin_surface(it.surface);
        DivClass l = it.ample ? *it.ample : DivClass(-s.canonical);
        if (!it.ample && s.name.rfind("Hirzebruch", 0) == 0) l = s.ample_ref;
        std::string label = std::string(it.surface) + " " + l.to_string();
        RayInvariants r = point_invariants(blow_up(s, GeneralPoint{}), l);
        const PiecewisePoly& vol = r.vol_profile;
        const PiecewisePoly& g = r.restricted_profile;
        if (vol.breakpoints != g.breakpoints) {
            t.expect(false, label + ": profiles on different chambers");
            continue;
        }
        Rat by_vol(0), by_moment(0);
        for (std::size_t i = 0; i < vol.pieces.size(); ++i) {
            const Rat& a = vol.breakpoints[i];
            const Rat& b = vol.breakpoints[i + 1];
            by_vol += vol.pieces[i].integral(a, b);
            by_moment += (Poly::linear(Rat(0), Rat(1)) * g.pieces[i]).integral(a, b);
            t.expect(vol.pieces[i].derivative() == Rat(-2) * g.pieces[i], label + ": vol' != -2g on segment " + std::to_string(i));
        }
        t.eq(by_vol / r.l_squared, 2 * by_moment / r.l_squared, label + ": two formulas for S");
        t.eq(by_vol / r.l_squared, r.s_inv, label + ": S as reported");
    }
}

// 5. Random concave functions for the point-center and divisor-center
// inequalities, plus the extremals.
void lemma_suites(Tally& t) {
    for (LemmaKind kind : {LemmaKind::CenterPoint, LemmaKind::CenterDivisor}) {
        std::string label = kind == LemmaKind::CenterPoint ? "center-pt" : "center-div";
        std::vector<LemmaCase> cases = run_lemma_suite(kind, 1000, 7);  // throws on a violation
        t.expect(cases.size() == 1000, label + ": 1000 cases");
        std::set<int> ns;
        for (const LemmaCase& c : cases) {
            t.expect(c.check.holds && c.check.lhs <= c.check.rhs, label + ": violation at seed " + std::to_string(c.seed));
            t.expect(c.check.equality == (c.check.lhs == c.check.rhs), label + ": equality flag wrong at seed " + std::to_string(c.seed));
            if (kind == LemmaKind::CenterDivisor) ns.insert(c.n);
        }
        if (kind == LemmaKind::CenterDivisor) t.expect(ns == std::set<int>{2, 3, 4, 5, 6, 7, 8}, "n covers 2..8");
    }
    LemmaCheck h = check_center_pt(Rat(1), Rat(2), tent(Rat(1), Rat(2)));
    t.expect(h.equality, "tent extremal detected");
    t.eq(h.lhs, Rat(4), "tent lhs");
    t.eq(h.rhs, Rat(4), "tent rhs");
    PLConcave raised{{{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {make_rat(3, 2), make_rat(3, 4)}, {Rat(2), Rat(0)}}};
    t.expect(!check_center_pt(Rat(1), Rat(2), raised).equality, "non-extremal concave g is strict");

    LemmaCheck lin = check_center_div(Rat(1), 2, PLConcave{{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}});
    t.expect(lin.equality, "linear extremal detected");
    t.eq(lin.lhs, make_rat(1, 6), "linear lhs");
    t.eq(lin.rhs, make_rat(1, 6), "linear rhs");
    PLConcave bent{{{Rat(0), Rat(1)}, {make_rat(1, 2), make_rat(3, 4)}, {Rat(1), Rat(0)}}};
    t.expect(!check_center_div(Rat(1), 2, bent).equality, "bent g is strict");
}

// 6. Hypersurfaces.
void hypersurfaces(Tally& t) {
    auto cube = [](const Verdict& v) { return v.find("n^3 >= r^3 d^2"); };
    constexpr auto stable = VerdictStatus::UniformlyKStableBySufficientCriterion;
    Verdict a = hypersurface_verdict({27, 3});
    t.expect(a.status == stable, "(27,3) stable");
    t.expect(cube(a) && cube(a)->lhs == 19683 && cube(a)->rhs == 18252, "19683 >= 18252");
    Verdict b = hypersurface_verdict({64, 4});
    t.expect(b.status == stable, "(64,4) stable");
    t.expect(cube(b) && cube(b)->lhs == 262144 && cube(b)->rhs == 246016, "262144 >= 246016");
    Verdict c = hypersurface_verdict({26, 3});
    t.expect(c.status == VerdictStatus::NotCoveredByCriterion, "(26,3) not covered");
    const VerdictCheck* deg = c.find("d >= 26");
    t.expect(deg && !deg->holds && deg->lhs == 25, "failing check d = 25 < 26");
    for (int r : {3, 4, 5}) {
        // Independent integer evaluation of the four checks at n = r^3.
        long n = long(r) * r * r, d = n + 2 - r;
        bool direct = r >= 3 && d >= 26 && n >= d && n * n * n >= long(r) * r * r * d * d;
        t.expect(direct, "direct check at n = r^3, r = " + std::to_string(r));
        t.expect(hypersurface_verdict({int(n), r}).status == stable, "n = r^3 sufficient for r = " + std::to_string(r));
    }
}

// 7. Threefolds of index 2 and 1, and the K3 multiplicity bound.
void threefolds(Tally& t) {
    constexpr auto stable = VerdictStatus::UniformlyKStableBySufficientCriterion;
    auto run = [](int index, int degree) {
        ThreefoldQuery q;
        q.index = index;
        q.degree = degree;
        return threefold_verdict(q);
    };
    for (int d = 1; d <= 4; ++d) {
        Verdict v = run(2, d);
        t.expect(v.status == stable, "index 2 degree " + std::to_string(d) + " stable");
        t.eq(v.bound, Rat(2), "index 2 degree " + std::to_string(d) + " bound");
    }
    for (int d = 2; d <= 14; d += 2) t.expect(run(1, d).status == stable, "index 1 degree " + std::to_string(d) + " stable");
    t.expect(run(1, 16).status == VerdictStatus::KSemistableWithObligations, "index 1 degree 16 semistable with obligations");
    t.expect(!run(1, 16).obligations.empty(), "degree 16 lists obligations");
    for (int d : {18, 22}) t.expect(run(1, d).status == VerdictStatus::NotCoveredByCriterion, "index 1 degree " + std::to_string(d) + " not covered");
    K3TauBound k = k3_tau_bound(16, Rat(4), 100);
    t.expect(k.holds_up_to_m && k.asymptotic_ok, "k3_tau_bound(16, 4, 100)");
}

// 8. Closed-form profile recognition.
void profile_matchers(Tally& t) {
    SurfaceModel p2 = builtin_surface("P2");
    RayInvariants r = point_invariants(blow_up(p2, GeneralPoint{}), cls({1}));
    t.expect(profile_match_fujita(r.vol_profile, 2, r.l_squared), "P2 profile is 1 - (t/T)^2");
    t.eq(r.s_inv, make_rat(2, 3) * r.tau, "S = (2/3) T");
    SurfaceModel q = builtin_surface("P1xP1");
    RayInvariants rq = point_invariants(blow_up(q, GeneralPoint{}), cls({1, 1}));
    t.expect(!profile_match_fujita(rq.vol_profile, 2, rq.l_squared), "P1xP1 profile rejected");
    for (int n : {2, 3}) {
        PiecewisePoly p = eq_adjunction_profile(n, Rat(5), make_rat(7, 3));
        t.expect(profile_match_eq_adjunction(p, n, Rat(5)), "synthetic profile recognized, n = " + std::to_string(n));
        t.expect(!profile_match_fujita(p, n, Rat(5)), "synthetic profile is not the other form, n = " + std::to_string(n));
    }
}

// 9. Random ample classes on del Pezzo surfaces of degree 2..6.
void random_amples(Tally& t) {
    std::mt19937_64 rng(20240917);
    std::uniform_int_distribution<long> num(0, 6), den(1, 4);
    int done = 0;
    for (int d = 2; d <= 6; ++d) {
        SurfaceModel s = builtin_surface("DelPezzo(" + std::to_string(d) + ")");
        PointModel pm = blow_up(s, GeneralPoint{});
        const std::size_t k = s.rank - 1;
        // Nef generators: pencils of lines and conics through blown-up points,
        // and -K plus each (-1)-curve; -K keeps every combination ample.
        std::vector<DivClass> gens;
        DivClass hline = DivClass::basis(s.rank, 0);
        gens.push_back(hline);
        for (std::size_t i = 1; i <= k; ++i) gens.push_back(hline - DivClass::basis(s.rank, i));
        for (const CurveEntry& c : s.negative_curves()) gens.push_back(-s.canonical + c.cls);
        for (const DivClass& g : gens)
            for (const CurveEntry& c : s.negative_curves())
                if (s.pairing(g, c.cls) < 0) t.expect(false, "generator " + g.to_string() + " not nef");
        for (int i = 0; i < 40; ++i, ++done) {
            DivClass l = -s.canonical * make_rat(num(rng) + 1, den(rng));
            for (int j = 0; j < 3; ++j) l += gens[rng() % gens.size()] * make_rat(num(rng), den(rng));
            std::string label = s.name + " " + l.to_string();
            try {
                InvariantReport r = surface_delta_bound(s, l, pm);
                const RayInvariants& v = r.ray;
                v.verify();
                t.expect(v.eps * v.eps <= v.l_squared, label + ": eps^2 <= L^2");
                t.expect(v.l_squared <= v.tau * v.tau, label + ": L^2 <= tau^2");
                t.expect(3 * v.s_inv <= 2 * v.tau, label + ": S <= 2 tau / 3");
                t.expect(v.eta == v.eps, label + ": eta = eps");
                t.expect(r.trusted, label + ": trusted");
                all_chain_checks_hold(t, r, label);
            } catch (const std::exception& e) {
                t.expect(false, label + ": " + e.what());
            }
        }
    }
    t.expect(done == 200, "200 classes");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria = {
        {"P2 pipeline", projective_plane},
        {"P1xP1 with L = (1,1)", quadric},
        {"cubic surface, -K", cubic_surface},
        {"two formulas for S and vol' = -2g", s_identity},
        {"concavity inequality suites", lemma_suites},
        {"hypersurface verdicts", hypersurfaces},
        {"threefold verdicts", threefolds},
        {"profile matchers", profile_matchers},
        {"random ample property suite", random_amples},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Tally t;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(t);
        } catch (const std::exception& e) {
            t.failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = t.failures.empty();
        failed += !ok;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << std::fixed
                  << std::setprecision(2) << secs << "s)\n";
        for (std::size_t f = 0; f < t.failures.size() && f < 10; ++f) std::cout << "    " << t.failures[f] << '\n';
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
