#include "kbound/rational.hpp"

#include "kbound/errors.hpp"

#include <cctype>
#include <string>

namespace kbound {

namespace {

bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

Int parse_int(std::string_view s, std::string_view whole) {
    std::string_view body = s;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    if (!is_digits(body)) throw InputError("malformed rational: '" + std::string(whole) + "'");
    std::string text(s);
    if (text.front() == '+') text.erase(0, 1);
    return Int(text, 10);
}

}  // namespace

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw DomainError("division by zero");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat parse_rat(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw InputError("empty rational");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Int num = parse_int(s.substr(0, slash), text);
        std::string_view den_text = s.substr(slash + 1);
        if (!is_digits(den_text)) throw InputError("malformed rational: '" + std::string(text) + "'");
        Int den(std::string(den_text), 10);
        if (den == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        bool negative = s.front() == '-';
        std::string_view body = s;
        if (body.front() == '-' || body.front() == '+') {
            body.remove_prefix(1);
            --dot;
        }
        std::string_view whole_text = body.substr(0, dot);
        std::string_view frac_text = body.substr(dot + 1);
        bool ok = (whole_text.empty() || is_digits(whole_text)) && (frac_text.empty() || is_digits(frac_text)) &&
                  !(whole_text.empty() && frac_text.empty());
        if (!ok) throw InputError("malformed rational: '" + std::string(text) + "'");
        std::string digits = std::string(whole_text) + std::string(frac_text);
        Int scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_text.size());
        Rat r(Int(digits, 10), scale);
        r.canonicalize();
        return negative ? Rat(-r) : r;
    }
    return Rat(parse_int(s, text));
}

std::string to_string(const Rat& value) { return value.get_str(10); }

std::string to_decimal(const Rat& value, int digits) {
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Rat scaled = abs(value) * scale;
    Int rounded = floor_int(scaled + Rat(1, 2));
    std::string body = rounded.get_str(10);
    if (static_cast<int>(body.size()) <= digits) body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
    std::string out = value < 0 && rounded != 0 ? "-" : "";
    out += body.substr(0, body.size() - static_cast<size_t>(digits));
    if (digits > 0) out += "." + body.substr(body.size() - static_cast<size_t>(digits));
    return out;
}

double to_double(const Rat& value) { return value.get_d(); }

std::optional<Rat> exact_sqrt(const Rat& value) {
    if (value < 0) return std::nullopt;
    const Int& num = value.get_num();
    const Int& den = value.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rat r(rn, rd);
    r.canonicalize();
    return r;
}

bool is_integer(const Rat& value) { return value.get_den() == 1; }

Int floor_int(const Rat& value) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Int ceil_int(const Rat& value) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

int sign(const Rat& value) { return sgn(value); }

Rat pow(const Rat& base, unsigned exponent) {
    Rat out(1);
    for (unsigned i = 0; i < exponent; ++i) out *= base;
    return out;
}

}  // namespace kbound
