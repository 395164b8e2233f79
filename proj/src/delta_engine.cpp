#include "kbound/delta_engine.hpp"

#include "kbound/errors.hpp"

#include <array>
#include <utility>

namespace kbound {

namespace {

constexpr std::array<std::pair<EqualityKind, const char*>, 4> kEqualityNames{{
    {EqualityKind::Strict, "Strict"},
    {EqualityKind::EpsTauSqrt, "EpsTauSqrt"},
    {EqualityKind::UniqueCurve, "UniqueCurve"},
    {EqualityKind::Undecided, "Undecided"},
}};

constexpr std::array<std::pair<Trichotomy, const char*>, 4> kTrichotomyNames{{
    {Trichotomy::Case1_UnitSqrt, "Case1_UnitSqrt"},
    {Trichotomy::Case2_BigSqrt, "Case2_BigSqrt"},
    {Trichotomy::Case3_DivisorProportional, "Case3_DivisorProportional"},
    {Trichotomy::Strict, "Strict"},
}};

ChainCheck le(std::string name, const Rat& lhs, const Rat& rhs) {
    return ChainCheck{std::move(name), lhs, rhs, lhs <= rhs, lhs == rhs};
}

void check_point_model(const SurfaceModel& s, const PointModel& pm) {
    if (!(pm.base == s)) throw InputError("point model is not a blowup of " + s.name);
    try {
        pm.validate();
    } catch (const InternalError& e) {
        throw InputError(std::string("inconsistent point model: ") + e.what());
    }
}

DivClass base_part(const DivClass& c, std::size_t rank) {
    return DivClass(std::vector<Rat>(c.coords.begin(), c.coords.begin() + static_cast<std::ptrdiff_t>(rank)));
}

}  // namespace

std::string to_string(EqualityKind k) {
    for (const auto& [kind, name] : kEqualityNames)
        if (kind == k) return name;
    throw InternalError("unknown equality kind");
}

EqualityKind parse_equality_kind(const std::string& text) {
    for (const auto& [kind, name] : kEqualityNames)
        if (text == name) return kind;
    throw InputError("unknown equality class '" + text + "'");
}

std::string to_string(Trichotomy t) {
    for (const auto& [kind, name] : kTrichotomyNames)
        if (kind == t) return name;
    throw InternalError("unknown trichotomy case");
}

Trichotomy parse_trichotomy(const std::string& text) {
    for (const auto& [kind, name] : kTrichotomyNames)
        if (text == name) return kind;
    throw InputError("unknown trichotomy case '" + text + "'");
}

std::optional<TauDivisor> find_unique_tau_divisor(const PointModel& pm, const DivClass& l, const RayInvariants& ray) {
    if (l.rank() != pm.base.rank) throw InputError("class rank does not match " + pm.base.name);
    if (ray.eta >= ray.tau) return std::nullopt;
    std::optional<TauDivisor> found;
    for (const CurveEntry& c : pm.blown.curves) {
        if (c.cls == pm.exceptional) continue;
        const Rat m = pm.blown.pairing(c.cls, pm.exceptional);
        if (m <= 0 || !is_integer(m)) continue;
        const DivClass base = base_part(c.cls, pm.base.rank);
        const std::optional<Rat> ratio = l.ratio_to(base);
        if (!ratio || *ratio != ray.tau) continue;
        if (found) return std::nullopt;  // two candidates: no uniqueness claim
        TauDivisor td;
        td.curve = c;
        td.base_class = base;
        td.multiplicity = static_cast<int>(m.get_num().get_si());
        td.tau = ray.tau;
        td.coefficient_bound = "D >= ((v_E(D) - " + to_string(ray.eta) + ")/" + to_string(ray.tau - ray.eta) +
                               ") * " + c.name;
        found = std::move(td);
    }
    return found;
}

InvariantReport surface_delta_bound(const SurfaceModel& s, const DivClass& l, const PointModel& pm) {
    check_point_model(s, pm);
    InvariantReport r;
    r.surface = s.name;
    r.ample = l;
    r.ray = point_invariants(pm, l);
    r.trusted = r.ray.trusted;

    const Rat& eps = r.ray.eps;
    const Rat& tau = r.ray.tau;
    const Rat& l2 = r.ray.l_squared;
    ensure(r.ray.fixed_deg.has_value(), "point ray must carry a fixed-part degree");
    const Rat s_plus_f = r.ray.s_inv + *r.ray.fixed_deg;

    r.lambda_bound = 3 * eps / l2;
    r.a_over_s = r.ray.log_discrepancy / r.ray.s_inv;
    r.chain.push_back(le("S + deg F <= 2/lambda", s_plus_f, 2 / r.lambda_bound));
    r.chain.push_back(le("lambda <= 2/(S + deg F)", r.lambda_bound, 2 / s_plus_f));
    r.chain.push_back(le("lambda <= A(E)/S", r.lambda_bound, r.a_over_s));
    r.chain.push_back(le("(lambda/2)(S + deg F) <= 1", r.lambda_bound / 2 * s_plus_f, Rat(1)));

    bool chain_ok = true;
    for (const ChainCheck& c : r.chain) {
        if (c.holds) continue;
        chain_ok = false;
        if (r.trusted)
            throw InternalError("chain inequality failed: " + c.name + " (" + to_string(c.lhs) + " vs " +
                                to_string(c.rhs) + ")");
    }

    r.witnesses.push_back(Witness{"E", pm.exceptional, "exceptional divisor over x"});
    for (const CurveEntry& c : pm.blown.curves)
        for (const std::string& name : r.ray.supports.back())
            if (c.name == name) r.witnesses.push_back(Witness{c.name, c.cls, "negative part just below tau"});

    r.citations.push_back("delta_x(L) >= 3 eps_x(L) / L^2 for an ample class on a smooth surface");
    if (!r.trusted || !chain_ok) {
        r.equality_class.kind = EqualityKind::Undecided;
        r.citations.push_back("negative-curve catalog not asserted complete: eps and tau are bounds only");
        return r;
    }
    if (eps == tau && eps * eps == l2) {
        r.equality_class.kind = EqualityKind::EpsTauSqrt;
        r.equality_class.value = eps;
        r.equality_class.tau = tau;
        r.citations.push_back("equality: E alone computes delta_x(L) once the ray is nef up to tau");
        return r;
    }
    if (eps * tau == l2) {
        if (auto td = find_unique_tau_divisor(pm, l, r.ray)) {
            r.equality_class.kind = EqualityKind::UniqueCurve;
            r.equality_class.curve = td->curve.name;
            r.equality_class.tau = td->tau;
            r.witnesses.push_back(Witness{td->curve.name, td->base_class, "L = tau C; " + td->coefficient_bound});
            r.citations.push_back(
                "equality additionally needs C to be the only divisor computing delta_x(L); not verified");
            return r;
        }
    }
    r.equality_class.kind = EqualityKind::Strict;
    return r;
}

InvariantReport corollary_rho1_bound(const SurfaceModel& s, const DivClass& l, const PointModel& pm) {
    if (s.rank != 1) throw DomainError("Picard rank of " + s.name + " is " + std::to_string(s.rank) + ", not 1");
    InvariantReport r = surface_delta_bound(s, l, pm);
    const Rat& eps = r.ray.eps;
    const Rat& tau = r.ray.tau;
    ChainCheck product{"eps * tau = L^2", eps * tau, r.ray.l_squared, eps * tau == r.ray.l_squared,
                       eps * tau == r.ray.l_squared};
    ChainCheck agree{"3/tau = 3 eps / L^2", 3 / tau, r.lambda_bound, 3 / tau == r.lambda_bound,
                     3 / tau == r.lambda_bound};
    if (r.trusted) {
        ensure(product.holds, "Picard rank one but eps * tau != L^2");
        ensure(agree.holds, "3/tau disagrees with 3 eps / L^2");
    } else if (!product.holds || !agree.holds) {
        r.equality_class = EqualityClass{EqualityKind::Undecided, std::nullopt, std::nullopt, std::nullopt};
    }
    r.chain.push_back(product);
    r.chain.push_back(agree);
    if (agree.holds) r.lambda_bound = 3 / tau;
    r.citations.push_back("Picard rank one: eps_x(L) tau_x(L) = L^2, so delta_x(L) >= 3/tau_x(L)");
    return r;
}

LiftReport lift_dimension(int n, const Rat& ln, const Rat& eps_surface, const Rat& tau_surface) {
    if (n < 2) throw DomainError("dimension must be at least 2");
    if (ln <= 0) throw DomainError("L^n must be positive");
    if (eps_surface <= 0 || eps_surface > tau_surface) throw DomainError("need 0 < eps <= tau");
    LiftReport r;
    r.n = n;
    r.ln = ln;
    r.eps_surface = eps_surface;
    r.tau_surface = tau_surface;
    r.delta_bound = Rat(n + 1) * eps_surface / ln;
    r.citations.push_back("delta_x(L) >= (n+1) eps_x(L|_S) / L^n for a complete intersection surface S through x");

    const bool sqrt_case = eps_surface == tau_surface && eps_surface * eps_surface == ln;
    if (sqrt_case && eps_surface == 1) {
        r.trichotomy = Trichotomy::Case1_UnitSqrt;
        r.citations.push_back("equality case: realized by every member of |L| through x; not verified");
    } else if (sqrt_case && eps_surface > 1) {
        r.trichotomy = Trichotomy::Case2_BigSqrt;
        r.citations.push_back("equality case: computing valuations have centers of dimension >= " +
                              std::to_string(n - 2) + "; not verified");
    } else if (eps_surface * tau_surface == ln && eps_surface < tau_surface) {
        r.trichotomy = Trichotomy::Case3_DivisorProportional;
        r.citations.push_back("equality case: computing valuations are divisorial, a prime G with L = tau G; not verified");
    } else {
        r.trichotomy = Trichotomy::Strict;
    }
    return r;
}

DivisorBound divisor_s_bound(int n, const Rat& ln, const Rat& lng, std::optional<bool> proportional) {
    if (n < 1) throw DomainError("dimension must be at least 1");
    if (ln <= 0) throw DomainError("L^n must be positive");
    if (lng <= 0) throw DomainError("L^(n-1).G must be positive");
    // On a curve every two divisors of positive degree are proportional.
    return DivisorBound{ln / (Rat(n + 1) * lng), n == 1 || proportional.value_or(false)};
}

}  // namespace kbound
