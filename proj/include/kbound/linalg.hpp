#pragma once

// Dense exact linear algebra over Rat. Sizes here are tiny (Picard ranks,
// supports of negative parts), so everything is plain Gaussian elimination.

#include "kbound/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace kbound {

using RatVec = std::vector<Rat>;
using RatMatrix = std::vector<RatVec>;

RatMatrix identity_matrix(std::size_t n);

/// Solves A x = b exactly. Returns nullopt when A is singular.
std::optional<RatVec> solve(const RatMatrix& a, std::span<const Rat> b);

Rat determinant(const RatMatrix& a);

/// Determinants of the k x k upper-left blocks, k = 1..n.
RatVec leading_minors(const RatMatrix& a);

/// Leading minors alternate in sign starting negative.
bool is_negative_definite(const RatMatrix& a);

/// Characteristic polynomial det(x I - A), coefficients lowest degree first.
RatVec characteristic_polynomial(const RatMatrix& a);

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Inertia of a symmetric matrix from Descartes' rule of signs applied to its
/// (real-rooted) characteristic polynomial. Exact.
Inertia symmetric_inertia(const RatMatrix& a);

bool is_symmetric(const RatMatrix& a);

}  // namespace kbound
