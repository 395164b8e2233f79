#pragma once

// Lower bounds for the local stability threshold delta_x(L) and the exact
// lattice tests that decide when they are sharp. delta itself is never
// computed: a report is a certified bound plus the per-ray data behind it.

#include "kbound/ns_lattice.hpp"
#include "kbound/rayscan.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kbound {

enum class EqualityKind { Strict, EpsTauSqrt, UniqueCurve, Undecided };

std::string to_string(EqualityKind k);
EqualityKind parse_equality_kind(const std::string& text);

struct EqualityClass {
    EqualityKind kind = EqualityKind::Strict;
    std::optional<Rat> value;          // EpsTauSqrt: eps = tau = sqrt(L^2)
    std::optional<std::string> curve;  // UniqueCurve: name of C with L = tau C
    std::optional<Rat> tau;

    friend bool operator==(const EqualityClass&, const EqualityClass&) = default;
};

/// One inequality of the proof chain, both sides exact.
struct ChainCheck {
    std::string name;
    Rat lhs;
    Rat rhs;
    bool holds = false;
    bool equality = false;

    friend bool operator==(const ChainCheck&, const ChainCheck&) = default;
};

struct Witness {
    std::string name;
    DivClass cls;
    std::string role;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct InvariantReport {
    std::string surface;
    DivClass ample;
    RayInvariants ray;
    Rat lambda_bound;
    std::vector<ChainCheck> chain;
    EqualityClass equality_class;
    std::vector<Witness> witnesses;
    bool trusted = true;
    /// A(E)/S(L;E): the upper certificate delta_x(L) <= A/S from this ray.
    Rat a_over_s;
    /// Statements used but not machine-checked.
    std::vector<std::string> citations;

    friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

/// lambda = 3 eps / L^2 at the blown-up point, with the chain
/// S + deg F <= 2/lambda, A(E)/S >= lambda, (lambda/2)(S + deg F) <= 1.
/// A chain failure is an InternalError on a trusted catalog and turns the
/// report Undecided otherwise.
InvariantReport surface_delta_bound(const SurfaceModel& s, const DivClass& l, const PointModel& pm);

/// Picard rank one: lambda = 3/tau, checked against 3 eps / L^2.
InvariantReport corollary_rho1_bound(const SurfaceModel& s, const DivClass& l, const PointModel& pm);

struct TauDivisor {
    CurveEntry curve;  // on the blowup
    DivClass base_class;
    int multiplicity = 0;
    Rat tau;
    /// D >= ((v(D) - eta)/(tau - eta)) C for every effective D ~ L.
    std::string coefficient_bound;

    friend bool operator==(const TauDivisor&, const TauDivisor&) = default;
};

/// A catalog curve through the point whose base class C satisfies L = tau C,
/// with L given on the base.
/// Empty when eta >= tau, when there is none, or when the match is not unique.
std::optional<TauDivisor> find_unique_tau_divisor(const PointModel& pm, const DivClass& l, const RayInvariants& ray);

enum class Trichotomy { Case1_UnitSqrt, Case2_BigSqrt, Case3_DivisorProportional, Strict };

std::string to_string(Trichotomy t);
Trichotomy parse_trichotomy(const std::string& text);

struct LiftReport {
    int n = 2;
    Rat ln;
    Rat eps_surface;
    Rat tau_surface;
    Rat delta_bound;
    Trichotomy trichotomy = Trichotomy::Strict;
    std::vector<std::string> citations;

    friend bool operator==(const LiftReport&, const LiftReport&) = default;
};

/// delta_x(L) >= (n+1) eps / L^n from a surface section through x.
LiftReport lift_dimension(int n, const Rat& ln, const Rat& eps_surface, const Rat& tau_surface);

struct DivisorBound {
    Rat bound;
    bool equality = false;
};

/// S(L;G) <= L^n / ((n+1) L^{n-1}.G). Equality iff L is proportional to G,
/// which only the caller can decide.
DivisorBound divisor_s_bound(int n, const Rat& ln, const Rat& lng, std::optional<bool> proportional = std::nullopt);

}  // namespace kbound
