#pragma once

#include "kbound/rational.hpp"

#include <functional>
#include <string>
#include <vector>

namespace kbound {

/// Dense univariate polynomial with Rat coefficients, lowest degree first.
/// The zero polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    Poly(std::vector<Rat> coeffs);  // NOLINT: implicit from coefficient list is convenient
    static Poly constant(const Rat& c);
    static Poly monomial(const Rat& c, unsigned degree);
    /// c0 + c1 t
    static Poly linear(const Rat& c0, const Rat& c1);

    const std::vector<Rat>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    Rat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }

    Rat operator()(const Rat& t) const;
    Poly derivative() const;
    Poly antiderivative() const;
    Rat integral(const Rat& lo, const Rat& hi) const;

    Poly& operator+=(const Poly& other);
    Poly& operator-=(const Poly& other);
    Poly& operator*=(const Rat& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
    friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    Poly pow(unsigned exponent) const;

    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rat> coeffs_;
};

/// A function on [breakpoints.front(), breakpoints.back()] that is polynomial
/// on each closed segment. Evaluating past the last breakpoint gives 0, which
/// matches the volume convention beyond the pseudo-effective threshold.
struct PiecewisePoly {
    std::vector<Rat> breakpoints;  // strictly increasing, size = pieces.size() + 1
    std::vector<Poly> pieces;

    bool empty() const { return pieces.empty(); }
    const Rat& lower() const { return breakpoints.front(); }
    const Rat& upper() const { return breakpoints.back(); }

    /// Throws InputError unless breakpoints are strictly increasing and sizes agree.
    void validate() const;

    std::size_t segment_of(const Rat& t) const;
    Rat operator()(const Rat& t) const;
    /// Left-hand limit at t (value of the segment ending at t).
    Rat left_value(const Rat& t) const;

    bool is_continuous() const;
    Rat integral() const;
    PiecewisePoly derivative() const;

    /// Pointwise combination over the common domain with merged breakpoints.
    static PiecewisePoly combine(const PiecewisePoly& a, const PiecewisePoly& b,
                                 const std::function<Poly(const Poly&, const Poly&)>& op);
    PiecewisePoly map(const std::function<Poly(const Poly&)>& op) const;

    friend bool operator==(const PiecewisePoly&, const PiecewisePoly&) = default;
};

}  // namespace kbound
