#include "kbound/poly.hpp"

#include "kbound/errors.hpp"

#include <algorithm>
#include <sstream>

namespace kbound {

Poly::Poly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }

Poly Poly::monomial(const Rat& c, unsigned degree) {
    std::vector<Rat> v(degree + 1, Rat(0));
    v[degree] = c;
    return Poly(std::move(v));
}

Poly Poly::linear(const Rat& c0, const Rat& c1) { return Poly(std::vector<Rat>{c0, c1}); }

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat Poly::operator()(const Rat& t) const {
    Rat acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rat> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rat(static_cast<long>(i));
    return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
    if (coeffs_.empty()) return {};
    std::vector<Rat> a(coeffs_.size() + 1, Rat(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / Rat(static_cast<long>(i + 1));
    return Poly(std::move(a));
}

Rat Poly::integral(const Rat& lo, const Rat& hi) const {
    Poly anti = antiderivative();
    return anti(hi) - anti(lo);
}

Poly& Poly::operator+=(const Poly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rat(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rat(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Rat& s) {
    for (Rat& c : coeffs_) c *= s;
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(out));
}

Poly Poly::pow(unsigned exponent) const {
    Poly out = Poly::constant(1);
    for (unsigned i = 0; i < exponent; ++i) out = out * *this;
    return out;
}

std::string Poly::to_string(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i] == 0) continue;
        Rat c = coeffs_[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Rat mag = abs(c);
        if (i == 0 || mag != 1) os << kbound::to_string(mag);
        if (i >= 1) os << (i == 0 || mag != 1 ? "*" : "") << var;
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

void PiecewisePoly::validate() const {
    if (breakpoints.size() != pieces.size() + 1 || pieces.empty())
        throw InputError("piecewise polynomial: need k pieces and k+1 breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i - 1] < breakpoints[i]))
            throw InputError("piecewise polynomial: breakpoints must be strictly increasing");
    }
}

std::size_t PiecewisePoly::segment_of(const Rat& t) const {
    // Last segment whose left end is <= t.
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end() - 1, t);
    if (it == breakpoints.begin()) return 0;
    return std::min<std::size_t>(static_cast<std::size_t>(it - breakpoints.begin()) - 1, pieces.size() - 1);
}

Rat PiecewisePoly::operator()(const Rat& t) const {
    if (empty() || t < lower() || t > upper()) return Rat(0);
    return pieces[segment_of(t)](t);
}

Rat PiecewisePoly::left_value(const Rat& t) const {
    if (empty() || t <= lower() || t > upper()) return (*this)(t);
    auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), t);
    std::size_t seg = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    return pieces[seg](t);
}

bool PiecewisePoly::is_continuous() const {
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        if (pieces[i - 1](breakpoints[i]) != pieces[i](breakpoints[i])) return false;
    }
    return true;
}

Rat PiecewisePoly::integral() const {
    Rat total(0);
    for (std::size_t i = 0; i < pieces.size(); ++i) total += pieces[i].integral(breakpoints[i], breakpoints[i + 1]);
    return total;
}

PiecewisePoly PiecewisePoly::derivative() const {
    return map([](const Poly& p) { return p.derivative(); });
}

PiecewisePoly PiecewisePoly::combine(const PiecewisePoly& a, const PiecewisePoly& b,
                                     const std::function<Poly(const Poly&, const Poly&)>& op) {
    Rat lo = std::max(a.lower(), b.lower());
    Rat hi = std::min(a.upper(), b.upper());
    if (!(lo < hi)) throw InputError("piecewise combine: domains do not overlap");
    std::vector<Rat> cuts;
    for (const auto* src : {&a.breakpoints, &b.breakpoints})
        for (const Rat& x : *src)
            if (x >= lo && x <= hi) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    PiecewisePoly out;
    out.breakpoints = cuts;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Rat mid = (cuts[i] + cuts[i + 1]) / 2;
        out.pieces.push_back(op(a.pieces[a.segment_of(mid)], b.pieces[b.segment_of(mid)]));
    }
    return out;
}

PiecewisePoly PiecewisePoly::map(const std::function<Poly(const Poly&)>& op) const {
    PiecewisePoly out;
    out.breakpoints = breakpoints;
    out.pieces.reserve(pieces.size());
    for (const Poly& p : pieces) out.pieces.push_back(op(p));
    return out;
}

}  // namespace kbound
