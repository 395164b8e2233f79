#pragma once

// Exact checks of the two one-variable inequalities behind the surface bound,
// over concave piecewise-linear functions with rational nodes.

#include "kbound/poly.hpp"
#include "kbound/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kbound {

struct Node {
    Rat x;
    Rat y;
    friend bool operator==(const Node&, const Node&) = default;
};

/// Linear interpolation through nodes with strictly increasing x starting at
/// 0. Concave means the slopes never increase.
struct PLConcave {
    std::vector<Node> nodes;

    /// Throws DomainError unless x starts at 0, increases strictly and the
    /// slopes are non-increasing.
    void validate() const;
    const Rat& upper() const { return nodes.back().x; }
    Rat operator()(const Rat& x) const;
    std::vector<Rat> slopes() const;
    PiecewisePoly as_piecewise() const;

    friend bool operator==(const PLConcave&, const PLConcave&) = default;
};

struct LemmaCheck {
    Rat lhs;
    Rat rhs;
    bool holds = false;
    bool equality = false;
    Rat margin() const { return rhs - lhs; }
};

/// 3a int_0^b (2x - g) g  <=  4 (int_0^b g)^2, for g = x on [0, a], b = upper().
/// Equality forces int g = ab/2; a violation of either is an InternalError.
LemmaCheck check_center_pt(const Rat& a, const Rat& b, const PLConcave& g);

/// g(0)^(n-1) int_0^a x g^(n-1)  <=  n/(n+1) (int_0^a g^(n-1))^2 for g >= 0,
/// g(0) > 0, 1 <= n <= 8. The equality flag is cross-checked against
/// "n = 1 or g is the line from (0, g(0)) to (a, 0)".
LemmaCheck check_center_div(const Rat& a, int n, const PLConcave& g);

/// The auxiliary claim: with h the tent through (a, a) and (b, 0), c = b - a
/// and f(x) = g(x + a) - h(x + a), F(t) = int_0^t (3x - 2t) f(x) dx.
struct FClaim {
    Rat value;              // F(c), claimed <= 0
    bool derivative_nonpositive = false;  // F'(t) <= 0 on [0, c], checked exactly
};
FClaim check_f_claim(const Rat& a, const Rat& b, const PLConcave& g);

/// The extremal tent h for the first inequality (g = x up to a, then down to 0 at b).
PLConcave tent(const Rat& a, const Rat& b);

struct ConcaveConstraint {
    enum class Kind { DiagonalPrefix, Nonnegative };
    Kind kind = Kind::Nonnegative;
    Rat a;  // DiagonalPrefix: g(x) = x on [0, a]
};

/// Deterministic in the seed. node_count counts every node, including the
/// endpoints and, for DiagonalPrefix, the node at a. Throws DomainError when
/// the constraint cannot be met.
PLConcave random_concave(std::uint64_t seed, const Rat& b, int node_count, const ConcaveConstraint& constraint);

enum class LemmaKind { CenterPoint, CenterDivisor };

struct LemmaCase {
    std::uint64_t seed = 0;
    int n = 0;  // CenterDivisor only
    Rat a;
    Rat b;
    PLConcave g;
    LemmaCheck check;
};

/// Cases seed, seed+1, ..., each with its own random a, b, n and node count.
/// Any violation throws InternalError.
std::vector<LemmaCase> run_lemma_suite(LemmaKind kind, int cases, std::uint64_t seed);

/// "seed\tlhs\trhs\tmargin\tequality" header plus one row per case.
std::string lemma_tsv(const std::vector<LemmaCase>& cases);

}  // namespace kbound
