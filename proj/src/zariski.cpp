#include "kbound/zariski.hpp"

#include "kbound/errors.hpp"

#include <algorithm>

namespace kbound {

namespace {

RatMatrix gram_of(const std::vector<CurveEntry>& curves, const SurfaceModel& s) {
    RatMatrix g(curves.size(), RatVec(curves.size()));
    for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = 0; j < curves.size(); ++j) g[i][j] = s.pairing(curves[i].cls, curves[j].cls);
    return g;
}

bool by_class(const CurveEntry& a, const CurveEntry& b) { return a.cls < b.cls; }

}  // namespace

DivClass ZariskiDecomp::negative() const {
    DivClass n = DivClass::zero(positive.rank());
    for (const SupportTerm& t : negative_support) n += t.coeff * t.curve.cls;
    return n;
}

std::vector<std::string> ZariskiDecomp::support_names() const {
    std::vector<std::string> out;
    for (const SupportTerm& t : negative_support) out.push_back(t.curve.name);
    return out;
}

void ZariskiDecomp::verify(const DivClass& d, const SurfaceModel& s) const {
    ensure(positive + negative() == d, "zariski: P + N does not reconstruct D");
    for (const SupportTerm& t : negative_support) {
        ensure(t.coeff > 0, "zariski: nonpositive coefficient on " + t.curve.name);
        ensure(s.pairing(positive, t.curve.cls) == 0, "zariski: P is not orthogonal to " + t.curve.name);
    }
    ensure(leading_minors == kbound::leading_minors(support_gram), "zariski: stale certificate");
    ensure(negative_support.empty() || is_negative_definite(support_gram), "zariski: support not negative definite");
    ensure(is_nef(positive, s), "zariski: positive part is not nef");
}

bool is_nef(const DivClass& d, const SurfaceModel& s) {
    for (const CurveEntry& c : s.curves)
        if (c.self_int < 0 && s.pairing(d, c.cls) < 0) return false;
    return s.square(d) >= 0 && s.pairing(d, s.ample_ref) >= 0;
}

std::optional<ZariskiDecomp> try_zariski_decompose(const DivClass& d, const SurfaceModel& s, std::string* why) {
    auto fail = [why](const std::string& reason) -> std::optional<ZariskiDecomp> {
        if (why) *why = reason;
        return std::nullopt;
    };
    if (d.rank() != s.rank) throw InputError("zariski: class rank does not match the surface");
    const std::vector<CurveEntry> catalog = s.negative_curves();
    std::vector<CurveEntry> support;
    std::vector<Rat> coeffs;
    DivClass p = d;
    while (true) {
        std::vector<CurveEntry> added;
        for (const CurveEntry& c : catalog) {
            bool in = std::any_of(support.begin(), support.end(), [&](const CurveEntry& t) { return t.cls == c.cls; });
            if (!in && s.pairing(p, c.cls) < 0) added.push_back(c);
        }
        if (added.empty()) break;
        support.insert(support.end(), added.begin(), added.end());
        std::sort(support.begin(), support.end(), by_class);
        RatMatrix g = gram_of(support, s);
        if (!is_negative_definite(g)) return fail("support of the negative part is not negative definite");
        RatVec rhs;
        for (const CurveEntry& c : support) rhs.push_back(s.pairing(d, c.cls));
        auto a = solve(g, rhs);
        ensure(a.has_value(), "zariski: negative definite Gram matrix is singular");
        coeffs = *a;
        p = d;
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (coeffs[i] <= 0) return fail("negative part acquires a nonpositive coefficient");
            p -= coeffs[i] * support[i].cls;
        }
    }
    if (s.square(p) < 0) return fail("positive part has negative square");
    if (s.pairing(p, s.ample_ref) < 0) return fail("positive part is negative on the ample reference");

    ZariskiDecomp z;
    z.positive = p;
    for (std::size_t i = 0; i < support.size(); ++i) z.negative_support.push_back({support[i], coeffs[i]});
    z.support_gram = gram_of(support, s);
    z.leading_minors = leading_minors(z.support_gram);
    z.trusted = s.catalog_complete;
    z.verify(d, s);
    return z;
}

bool is_pseudoeffective(const DivClass& d, const SurfaceModel& s) { return try_zariski_decompose(d, s).has_value(); }

ZariskiDecomp zariski_decompose(const DivClass& d, const SurfaceModel& s) {
    std::string why;
    auto z = try_zariski_decompose(d, s, &why);
    if (!z) throw DomainError("class " + d.to_string() + " is not pseudo-effective on " + s.name + ": " + why);
    return *z;
}

}  // namespace kbound
