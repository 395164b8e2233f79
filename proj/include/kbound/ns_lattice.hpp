#pragma once

// Neron-Severi lattices of smooth projective surfaces: intersection pairing,
// negative-curve catalogs, the classical built-in models and point blowups.
//
// Effective and nef cone knowledge is carried by the negative-curve catalog
// together with the positive cone {D^2 >= 0, D.A >= 0}. This is exact for Mori
// dream surfaces, which covers every built-in model.

#include "kbound/linalg.hpp"
#include "kbound/rational.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kbound {

/// A divisor class, coordinates in the lattice basis of its SurfaceModel.
struct DivClass {
    std::vector<Rat> coords;

    DivClass() = default;
    explicit DivClass(std::vector<Rat> c) : coords(std::move(c)) {}
    static DivClass zero(std::size_t rank) { return DivClass(std::vector<Rat>(rank, Rat(0))); }
    static DivClass basis(std::size_t rank, std::size_t index);

    std::size_t rank() const { return coords.size(); }
    const Rat& operator[](std::size_t i) const { return coords[i]; }
    Rat& operator[](std::size_t i) { return coords[i]; }
    bool is_zero() const;
    bool is_integral() const;

    DivClass& operator+=(const DivClass& other);
    DivClass& operator-=(const DivClass& other);
    DivClass& operator*=(const Rat& s);
    friend DivClass operator+(DivClass a, const DivClass& b) { return a += b; }
    friend DivClass operator-(DivClass a, const DivClass& b) { return a -= b; }
    friend DivClass operator-(DivClass a) { return a *= Rat(-1); }
    friend DivClass operator*(DivClass a, const Rat& s) { return a *= s; }
    friend DivClass operator*(const Rat& s, DivClass a) { return a *= s; }
    friend bool operator==(const DivClass&, const DivClass&) = default;
    /// Lexicographic on coordinates; the canonical catalog order.
    friend bool operator<(const DivClass& a, const DivClass& b);

    /// Returns c with *this == c * other, if the two are proportional and other != 0.
    std::optional<Rat> ratio_to(const DivClass& other) const;

    std::string to_string() const;
};

/// Parses "a,b,c" (commas or whitespace) into a class of the given rank.
DivClass parse_class(std::string_view text, std::size_t rank);

struct CurveEntry {
    std::string name;
    DivClass cls;
    Rat self_int;                   // cached cls . cls
    std::optional<int> arith_genus;

    friend bool operator==(const CurveEntry&, const CurveEntry&) = default;
};

struct SurfaceModel {
    std::string name;
    std::size_t rank = 0;
    RatMatrix gram;
    DivClass canonical;
    DivClass ample_ref;
    /// Named curves. Entries with negative self-intersection form the catalog
    /// that decides nefness; the rest are carried as witnesses only.
    std::vector<CurveEntry> curves;
    /// Asserts that every irreducible negative curve is listed.
    bool catalog_complete = false;

    Rat pairing(const DivClass& a, const DivClass& b) const;
    Rat square(const DivClass& a) const { return pairing(a, a); }
    std::vector<CurveEntry> negative_curves() const;
    CurveEntry make_curve(std::string curve_name, DivClass cls, std::optional<int> genus = std::nullopt) const;

    /// Checks dimensions, symmetry, signature (1, rank-1), cached self
    /// intersections and ample_ref positivity. Throws InputError/ModelError.
    void validate() const;

    friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;
};

/// Intersection product D1 . D2 on S. Throws InputError on rank mismatch.
Rat pairing(const DivClass& d1, const DivClass& d2, const SurfaceModel& s);

/// "P2", "P1xP1", "Hirzebruch(n)", "DelPezzo(d)" (1 <= d <= 9, the blowup of
/// P2 at 9-d general points) or "BlowupP2(k)" (0 <= k <= 8).
SurfaceModel builtin_surface(std::string_view spec);

struct NegativeSearchOptions {
    /// Largest arithmetic genus admitted by the adjunction filter.
    int genus_max = 0;
    /// When set, search classes with 1 <= C.ample_ref <= max_degree instead of
    /// using the anticanonical adjunction bound (required when K^2 <= 0).
    std::optional<long> max_degree;
    /// Effectivity filter; defaults to C.ample_ref > 0.
    std::function<bool(const DivClass&)> effective;
    /// Class used to order candidates for the irreducibility filter; defaults
    /// to ample_ref.
    std::optional<DivClass> degree_ref;
};

/// Complete list of integral classes C with self_int_min <= C^2 < 0 whose
/// adjunction genus lies in [0, genus_max], which pass the effectivity filter
/// and meet every other listed class nonnegatively. Sorted by coordinates.
/// Exhaustive: the search region is a bounded ellipsoid of a positive definite
/// form built from the Hodge index theorem.
std::vector<DivClass> enumerate_negative_classes(const SurfaceModel& s, int self_int_min,
                                                 const NegativeSearchOptions& options = {});

struct StrictTransform {
    std::string name;
    DivClass cls;      // in blown-up coordinates: pi^*C - m E
    int multiplicity;  // m
};

struct GeneralPoint {};
struct ExplicitPoint {
    std::vector<StrictTransform> strict_transforms;
    bool assert_complete = false;
};
using PointSpec = std::variant<GeneralPoint, ExplicitPoint>;

/// The blowup of a smooth point. The blown-up basis is the base basis followed
/// by the exceptional class E.
struct PointModel {
    SurfaceModel base;
    SurfaceModel blown;
    DivClass exceptional;
    Rat log_discrepancy;

    DivClass pullback(const DivClass& base_class) const;
    /// Projection formula pullback(D).E = 0 and E^2 = -1, K = pi^*K + E.
    void validate() const;
};

PointModel blow_up(const SurfaceModel& s, const PointSpec& point);

}  // namespace kbound
