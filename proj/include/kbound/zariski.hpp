#pragma once

// Nefness, pseudo-effectivity and Zariski decomposition against a surface's
// negative-curve catalog.

#include "kbound/ns_lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kbound {

struct SupportTerm {
    CurveEntry curve;
    Rat coeff;  // > 0
    friend bool operator==(const SupportTerm&, const SupportTerm&) = default;
};

struct ZariskiDecomp {
    DivClass positive;
    std::vector<SupportTerm> negative_support;  // sorted by curve class
    /// Gram matrix of the support and its leading principal minors, which
    /// alternate in sign starting negative.
    RatMatrix support_gram;
    RatVec leading_minors;
    /// False when the catalog is not asserted complete: then P is only known to
    /// be nef against the listed curves.
    bool trusted = true;

    DivClass negative() const;
    std::vector<std::string> support_names() const;
    /// Re-checks reconstruction, orthogonality, positivity of coefficients and
    /// the minor signs. Throws InternalError on failure.
    void verify(const DivClass& d, const SurfaceModel& s) const;

    friend bool operator==(const ZariskiDecomp&, const ZariskiDecomp&) = default;
};

/// D.C >= 0 on the catalog, D^2 >= 0 and D.ample_ref >= 0.
bool is_nef(const DivClass& d, const SurfaceModel& s);

bool is_pseudoeffective(const DivClass& d, const SurfaceModel& s);

/// Throws DomainError when d is not pseudo-effective.
ZariskiDecomp zariski_decompose(const DivClass& d, const SurfaceModel& s);

/// Same, but returns nullopt instead of throwing; `why` receives the reason.
std::optional<ZariskiDecomp> try_zariski_decompose(const DivClass& d, const SurfaceModel& s,
                                                   std::string* why = nullptr);

}  // namespace kbound
