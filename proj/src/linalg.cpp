#include "kbound/linalg.hpp"

#include "kbound/errors.hpp"

#include <utility>

namespace kbound {

namespace {

int sign_changes(const RatVec& coeffs) {
    int changes = 0;
    int last = 0;
    for (const Rat& c : coeffs) {
        int s = sgn(c);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

RatMatrix identity_matrix(std::size_t n) {
    RatMatrix m(n, RatVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

std::optional<RatVec> solve(const RatMatrix& a, std::span<const Rat> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw InputError("solve: dimension mismatch");
    RatMatrix m = a;
    RatVec rhs(b.begin(), b.end());
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            Rat factor = m[row][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
            rhs[row] -= factor * rhs[col];
        }
    }
    RatVec x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rat acc = rhs[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= m[i][k] * x[k];
        x[i] = acc / m[i][i];
    }
    return x;
}

Rat determinant(const RatMatrix& a) {
    const std::size_t n = a.size();
    RatMatrix m = a;
    Rat det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return Rat(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            Rat factor = m[row][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
        }
    }
    return det;
}

RatVec leading_minors(const RatMatrix& a) {
    RatVec minors;
    minors.reserve(a.size());
    for (std::size_t k = 1; k <= a.size(); ++k) {
        RatMatrix block(k, RatVec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) block[i][j] = a[i][j];
        minors.push_back(determinant(block));
    }
    return minors;
}

bool is_negative_definite(const RatMatrix& a) {
    RatVec minors = leading_minors(a);
    for (std::size_t k = 0; k < minors.size(); ++k) {
        // (-1)^(k+1) * minor_(k+1) must be positive.
        int expected = (k % 2 == 0) ? -1 : 1;
        if (sgn(minors[k]) != expected) return false;
    }
    return true;
}

RatVec characteristic_polynomial(const RatMatrix& a) {
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    const std::size_t n = a.size();
    RatVec coeffs(n + 1, Rat(0));
    coeffs[n] = 1;
    RatMatrix m(n, RatVec(n, Rat(0)));
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix next(n, RatVec(n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Rat acc(0);
                for (std::size_t l = 0; l < n; ++l) acc += a[i][l] * m[l][j];
                next[i][j] = acc;
            }
            next[i][i] += coeffs[n - k + 1];
        }
        Rat trace(0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) trace += a[i][l] * next[l][i];
        coeffs[n - k] = -trace / Rat(static_cast<long>(k));
        m = std::move(next);
    }
    return coeffs;
}

Inertia symmetric_inertia(const RatMatrix& a) {
    RatVec p = characteristic_polynomial(a);
    Inertia out;
    std::size_t lowest = 0;
    while (lowest < p.size() && p[lowest] == 0) ++lowest;
    out.zero = static_cast<int>(lowest);
    RatVec trimmed(p.begin() + static_cast<long>(lowest), p.end());
    out.positive = sign_changes(trimmed);
    RatVec mirrored = trimmed;
    for (std::size_t i = 0; i < mirrored.size(); ++i) {
        if ((i + lowest) % 2 == 1) mirrored[i] = -mirrored[i];
    }
    out.negative = sign_changes(mirrored);
    return out;
}

bool is_symmetric(const RatMatrix& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != a.size()) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (a[i][j] != a[j][i]) return false;
    }
    return true;
}

}  // namespace kbound
