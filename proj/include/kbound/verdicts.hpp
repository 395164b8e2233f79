#pragma once

// Verdict pipelines for Fano hypersurfaces and Picard-rank-one Fano
// threefolds. Everything checked here is integer or rational arithmetic; the
// geometric inputs the arguments rest on are carried as obligations.

#include "kbound/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kbound {

enum class VerdictStatus { UniformlyKStableBySufficientCriterion, KSemistableWithObligations, NotCoveredByCriterion };

std::string to_string(VerdictStatus s);
VerdictStatus parse_verdict_status(const std::string& text);

/// One exact comparison "lhs relation rhs". relation is one of
/// "<=", "<", ">=", ">", "==", "!=", "not 1/k" (rhs unused).
struct VerdictCheck {
    std::string name;
    Rat lhs;
    std::string relation;
    Rat rhs;
    bool holds = false;

    friend bool operator==(const VerdictCheck&, const VerdictCheck&) = default;
};

struct Verdict {
    std::string subject;
    VerdictStatus status = VerdictStatus::NotCoveredByCriterion;
    /// Certified lower bound; bound_label says for what (it may be a cube).
    Rat bound;
    std::string bound_label;
    std::vector<VerdictCheck> chain;
    std::vector<std::string> obligations;
    std::vector<std::string> notes;

    const VerdictCheck* find(const std::string& name) const;
    friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct HypersurfaceQuery {
    int n = 0;  // dimension
    int r = 0;  // Fano index
    int degree() const { return n + 2 - r; }
};

/// Four integer checks: r >= 3, d >= 26, n >= d, n^3 >= r^3 d^2. Throws
/// InputError unless n >= 2, r >= 1, d >= 1.
Verdict hypersurface_verdict(const HypersurfaceQuery& q);

struct K3TauBound {
    bool holds_up_to_m = false;
    bool asymptotic_ok = false;
    /// Past m0 the leading coefficients settle the inequality (asymptotic_ok only).
    std::optional<long> m0;
    /// The first (m, mu) with mu > c m and mu (mu - 1) <= d m^2 + 2.
    std::optional<std::pair<long, long>> counterexample;
    /// holds_up_to_m, asymptotic_ok, and the range [1, M] reaches m0.
    bool holds_for_all_m = false;

    friend bool operator==(const K3TauBound&, const K3TauBound&) = default;
};

/// On a K3 surface with C^2 = d m^2 and a point of multiplicity mu on C:
/// d m^2 = 2 p_a - 2 >= mu (mu - 1) - 2, so no mu > c m may satisfy
/// mu (mu - 1) <= d m^2 + 2 if tau <= c is to follow.
K3TauBound k3_tau_bound(long d, const Rat& c, long max_m);

struct ThreefoldQuery {
    int index = 1;
    int degree = 0;
    /// Lower bounds for eps_x(-K_S) on a smooth del Pezzo S in |H|, by degree.
    std::map<int, Rat> eps_table = default_eps_table();

    static std::map<int, Rat> default_eps_table();
};

/// Index 2 (degree <= 4): delta_x(H) >= 4 eps / d, strict unless the equality
/// cases survive. Index 1 (even degree <= 16): delta_x(H) >= 4 / tau with
/// tau <= 4, strict for d != 16. Throws InputError for impossible queries.
Verdict threefold_verdict(const ThreefoldQuery& q);

}  // namespace kbound
