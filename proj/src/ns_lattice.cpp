#include "kbound/ns_lattice.hpp"

#include "kbound/errors.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace kbound {

namespace {

void check_rank(const DivClass& d, std::size_t rank, const char* what) {
    if (d.rank() != rank) {
        std::ostringstream os;
        os << what << ": class has " << d.rank() << " coordinates, lattice rank is " << rank;
        throw InputError(os.str());
    }
}

// Rewrites a positive definite Q in place so that
//   x^T Q x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
RatMatrix square_completion(RatMatrix q) {
    const std::size_t n = q.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (q[i][i] <= 0) throw InternalError("curve search: form is not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    return q;
}

// All integer points with x^T Q x <= bound, Q given in square-completed form.
void lattice_points(const RatMatrix& q, std::size_t i, const Rat& remaining, std::vector<Int>& x,
                    std::vector<std::vector<Int>>& out) {
    Rat center(0);
    for (std::size_t j = i + 1; j < q.size(); ++j) center -= q[i][j] * Rat(x[j]);
    Rat radius_sq = remaining / q[i][i];
    Int rough;
    Int ceil_r = ceil_int(radius_sq);
    mpz_sqrt(rough.get_mpz_t(), ceil_r.get_mpz_t());
    rough += 1;
    Int lo = floor_int(center) - rough;
    Int hi = ceil_int(center) + rough;
    for (Int v = lo; v <= hi; ++v) {
        Rat d = Rat(v) - center;
        Rat used = q[i][i] * d * d;
        if (used > remaining) continue;
        x[i] = v;
        if (i == 0) {
            out.push_back(x);
        } else {
            lattice_points(q, i - 1, remaining - used, x, out);
        }
    }
}

std::string generic_name(const DivClass& c) {
    std::string s = "C";
    s += c.to_string();
    return s;
}

SurfaceModel p2_blowup(std::size_t points, std::string name) {
    SurfaceModel s;
    s.name = std::move(name);
    s.rank = points + 1;
    s.gram = RatMatrix(s.rank, RatVec(s.rank, Rat(0)));
    s.gram[0][0] = 1;
    s.canonical = DivClass::zero(s.rank);
    s.canonical[0] = -3;
    for (std::size_t i = 1; i < s.rank; ++i) {
        s.gram[i][i] = -1;
        s.canonical[i] = 1;
    }
    // The hyperplane class on P2 itself; -K on the blowups.
    s.ample_ref = points == 0 ? DivClass::basis(1, 0) : -s.canonical;
    s.catalog_complete = true;
    if (points > 0) {
        for (const DivClass& c : enumerate_negative_classes(s, -1)) {
            std::string curve_name = generic_name(c);
            for (std::size_t i = 1; i < s.rank; ++i)
                if (c == DivClass::basis(s.rank, i)) curve_name = "E" + std::to_string(i);
            s.curves.push_back(s.make_curve(std::move(curve_name), c, 0));
        }
    }
    s.validate();
    return s;
}

SurfaceModel hirzebruch(long n) {
    // Basis (f, sigma): fibre and the negative section.
    SurfaceModel s;
    s.name = "Hirzebruch(" + std::to_string(n) + ")";
    s.rank = 2;
    s.gram = {{Rat(0), Rat(1)}, {Rat(1), Rat(-n)}};
    s.canonical = DivClass({Rat(-(n + 2)), Rat(-2)});
    s.ample_ref = DivClass({Rat(n + 1), Rat(1)});
    s.catalog_complete = true;
    for (const DivClass& c : enumerate_negative_classes(s, static_cast<int>(std::min<long>(-1, -n))))
        s.curves.push_back(s.make_curve(c == DivClass::basis(2, 1) ? "sigma" : generic_name(c), c, 0));
    s.validate();
    return s;
}

std::optional<long> parse_call(std::string_view spec, std::string_view head) {
    if (spec.size() < head.size() + 3 || spec.substr(0, head.size()) != head) return std::nullopt;
    std::string_view rest = spec.substr(head.size());
    if (rest.front() != '(' || rest.back() != ')') return std::nullopt;
    rest = rest.substr(1, rest.size() - 2);
    long value = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
    if (ec != std::errc() || ptr != rest.data() + rest.size())
        throw InputError("builtin surface: bad parameter in '" + std::string(spec) + "'");
    return value;
}

// Smallest k with k*pi^*A - E of positive square and positive on the catalog.
DivClass blown_ample(const SurfaceModel& blown, const DivClass& pulled_ample, const DivClass& e) {
    for (long k = 1; k <= 10000; ++k) {
        DivClass h = Rat(k) * pulled_ample - e;
        if (blown.square(h) <= 0) continue;
        bool ok = true;
        for (const CurveEntry& c : blown.curves) {
            if (c.self_int < 0 && blown.pairing(h, c.cls) <= 0) {
                ok = false;
                break;
            }
        }
        if (ok) return h;
    }
    throw ModelError("blow_up: could not find an ample reference class on the blowup");
}

}  // namespace

DivClass DivClass::basis(std::size_t rank, std::size_t index) {
    DivClass d = zero(rank);
    d.coords.at(index) = 1;
    return d;
}

bool DivClass::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rat& c) { return c == 0; });
}

bool DivClass::is_integral() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rat& c) { return is_integer(c); });
}

DivClass& DivClass::operator+=(const DivClass& other) {
    if (other.rank() != rank()) throw InputError("class addition: rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += other.coords[i];
    return *this;
}

DivClass& DivClass::operator-=(const DivClass& other) {
    if (other.rank() != rank()) throw InputError("class subtraction: rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= other.coords[i];
    return *this;
}

DivClass& DivClass::operator*=(const Rat& s) {
    for (Rat& c : coords) c *= s;
    return *this;
}

bool operator<(const DivClass& a, const DivClass& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(), b.coords.end());
}

std::optional<Rat> DivClass::ratio_to(const DivClass& other) const {
    if (other.rank() != rank() || other.is_zero()) return std::nullopt;
    std::optional<Rat> ratio;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (other.coords[i] == 0) {
            if (coords[i] != 0) return std::nullopt;
            continue;
        }
        Rat r = coords[i] / other.coords[i];
        if (ratio && *ratio != r) return std::nullopt;
        ratio = r;
    }
    return ratio;
}

std::string DivClass::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ",";
        s += kbound::to_string(coords[i]);
    }
    return s + ")";
}

DivClass parse_class(std::string_view text, std::size_t rank) {
    std::vector<Rat> coords;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) coords.push_back(parse_rat(token));
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',' || ch == ' ' || ch == '\t' || ch == '[' || ch == ']' || ch == '(' || ch == ')') {
            flush();
        } else {
            token += ch;
        }
    }
    flush();
    if (coords.size() != rank) {
        throw InputError("class '" + std::string(text) + "' has " + std::to_string(coords.size()) +
                         " coordinates, expected " + std::to_string(rank));
    }
    return DivClass(std::move(coords));
}

Rat SurfaceModel::pairing(const DivClass& a, const DivClass& b) const {
    check_rank(a, rank, "pairing");
    check_rank(b, rank, "pairing");
    Rat total(0);
    for (std::size_t i = 0; i < rank; ++i) {
        if (a[i] == 0) continue;
        Rat row(0);
        for (std::size_t j = 0; j < rank; ++j) row += gram[i][j] * b[j];
        total += a[i] * row;
    }
    return total;
}

Rat pairing(const DivClass& d1, const DivClass& d2, const SurfaceModel& s) { return s.pairing(d1, d2); }

std::vector<CurveEntry> SurfaceModel::negative_curves() const {
    std::vector<CurveEntry> out;
    for (const CurveEntry& c : curves)
        if (c.self_int < 0) out.push_back(c);
    return out;
}

CurveEntry SurfaceModel::make_curve(std::string curve_name, DivClass cls, std::optional<int> genus) const {
    Rat self = square(cls);
    return CurveEntry{std::move(curve_name), std::move(cls), self, genus};
}

void SurfaceModel::validate() const {
    if (rank == 0) throw InputError(name + ": rank must be positive");
    if (gram.size() != rank) throw InputError(name + ": gram matrix has wrong size");
    for (const RatVec& row : gram)
        if (row.size() != rank) throw InputError(name + ": gram matrix has wrong size");
    if (!is_symmetric(gram)) throw InputError(name + ": gram matrix is not symmetric");
    check_rank(canonical, rank, "canonical class");
    check_rank(ample_ref, rank, "ample reference");
    Inertia in = symmetric_inertia(gram);
    if (!(in == Inertia{1, static_cast<int>(rank) - 1, 0})) {
        std::ostringstream os;
        os << name << ": intersection form has signature (" << in.positive << "," << in.negative << ") with "
           << in.zero << " null directions; need (1," << rank - 1 << ")";
        throw ModelError(os.str());
    }
    if (square(ample_ref) <= 0) throw ModelError(name + ": ample reference has nonpositive square");
    for (const CurveEntry& c : curves) {
        check_rank(c.cls, rank, "curve class");
        if (square(c.cls) != c.self_int) throw InputError(name + ": cached self-intersection of " + c.name + " is wrong");
        if (c.arith_genus && *c.arith_genus < 0) throw InputError(name + ": negative genus for " + c.name);
        if (c.self_int < 0 && pairing(ample_ref, c.cls) <= 0)
            throw ModelError(name + ": ample reference is not positive on " + c.name);
    }
}

SurfaceModel builtin_surface(std::string_view spec) {
    if (spec.substr(0, 8) == "builtin:") spec.remove_prefix(8);
    if (spec == "P2") {
        SurfaceModel s = p2_blowup(0, "P2");
        return s;
    }
    if (spec == "P1xP1") {
        SurfaceModel s;
        s.name = "P1xP1";
        s.rank = 2;
        s.gram = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
        s.canonical = DivClass({Rat(-2), Rat(-2)});
        s.ample_ref = DivClass({Rat(1), Rat(1)});
        s.catalog_complete = true;
        s.validate();
        return s;
    }
    if (auto n = parse_call(spec, "Hirzebruch")) {
        if (*n < 0 || *n > 64) throw InputError("Hirzebruch(n) needs 0 <= n <= 64");
        return hirzebruch(*n);
    }
    if (auto d = parse_call(spec, "DelPezzo")) {
        if (*d < 1 || *d > 9) throw InputError("DelPezzo(d) needs 1 <= d <= 9");
        return p2_blowup(static_cast<std::size_t>(9 - *d), "DelPezzo(" + std::to_string(*d) + ")");
    }
    if (auto k = parse_call(spec, "BlowupP2")) {
        if (*k < 0 || *k > 8) throw InputError("BlowupP2(k) needs 0 <= k <= 8");
        return p2_blowup(static_cast<std::size_t>(*k), "BlowupP2(" + std::to_string(*k) + ")");
    }
    throw InputError("unknown builtin surface '" + std::string(spec) + "'");
}

std::vector<DivClass> enumerate_negative_classes(const SurfaceModel& s, int self_int_min,
                                                 const NegativeSearchOptions& options) {
    if (self_int_min > -1) return {};
    if (options.genus_max < 0) throw InputError("curve search: genus_max must be nonnegative");
    Inertia in = symmetric_inertia(s.gram);
    if (!(in == Inertia{1, static_cast<int>(s.rank) - 1, 0}))
        throw ModelError(s.name + ": curve search needs a hyperbolic lattice");

    // Reference class A with A^2 > 0. On A-perp the form is negative definite,
    // so P(x) = -x^2 + 2 (x.A)^2 / A^2 is positive definite, and bounding both
    // x^2 and x.A bounds P.
    DivClass ref;
    Rat bound;
    bool anticanonical = false;
    if (options.max_degree) {
        if (*options.max_degree < 1) throw InputError("curve search: max_degree must be positive");
        ref = s.ample_ref;
        Rat c(*options.max_degree);
        bound = Rat(2) * c * c / s.square(ref) - Rat(self_int_min);
    } else {
        Rat k2 = s.square(s.canonical);
        if (k2 <= 0) {
            throw ModelError(s.name + ": unbounded search region (K^2 <= 0); supply a degree bound");
        }
        anticanonical = true;
        ref = s.canonical;
        // -K.x = x^2 + 2 - 2 p_a
        bound = Rat(0);
        for (int self = self_int_min; self <= -1; ++self) {
            for (int p = 0; p <= options.genus_max; ++p) {
                Rat c(self + 2 - 2 * p);
                Rat value = Rat(2) * c * c / k2 - Rat(self);
                if (value > bound) bound = value;
            }
        }
    }
    Rat ref_sq = s.square(ref);
    RatVec g_ref(s.rank, Rat(0));
    for (std::size_t i = 0; i < s.rank; ++i)
        for (std::size_t j = 0; j < s.rank; ++j) g_ref[i] += s.gram[i][j] * ref[j];
    RatMatrix q(s.rank, RatVec(s.rank));
    for (std::size_t i = 0; i < s.rank; ++i)
        for (std::size_t j = 0; j < s.rank; ++j) q[i][j] = -s.gram[i][j] + Rat(2) * g_ref[i] * g_ref[j] / ref_sq;

    RatMatrix completed = square_completion(q);
    std::vector<std::vector<Int>> points;
    std::vector<Int> x(s.rank);
    lattice_points(completed, s.rank - 1, bound, x, points);

    auto effective = options.effective;
    if (!effective) effective = [&s](const DivClass& c) { return s.pairing(c, s.ample_ref) > 0; };

    std::vector<DivClass> candidates;
    for (const auto& pt : points) {
        std::vector<Rat> coords(pt.begin(), pt.end());
        DivClass c(std::move(coords));
        Rat self = s.square(c);
        if (self >= 0 || self < self_int_min) continue;
        Rat adj = self + s.pairing(c, s.canonical);  // 2 p_a - 2
        if (!is_integer(adj) || adj < -2 || adj > Rat(2 * options.genus_max - 2)) continue;
        if (!anticanonical && options.max_degree) {
            Rat deg = s.pairing(c, ref);
            if (deg < 1 || deg > Rat(*options.max_degree)) continue;
        }
        if (!effective(c)) continue;
        candidates.push_back(std::move(c));
    }

    // Two distinct irreducible curves meet nonnegatively; a class meeting an
    // already accepted one of lower degree negatively is reducible.
    DivClass degree_ref = options.degree_ref.value_or(s.ample_ref);
    std::vector<std::pair<Rat, DivClass>> keyed;
    keyed.reserve(candidates.size());
    for (DivClass& c : candidates) keyed.emplace_back(s.pairing(c, degree_ref), std::move(c));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::vector<DivClass> accepted;
    for (auto& [deg, c] : keyed) {
        bool ok = std::all_of(accepted.begin(), accepted.end(),
                              [&](const DivClass& prev) { return s.pairing(prev, c) >= 0; });
        if (ok) accepted.push_back(std::move(c));
    }
    std::sort(accepted.begin(), accepted.end());
    return accepted;
}

DivClass PointModel::pullback(const DivClass& base_class) const {
    check_rank(base_class, base.rank, "pullback");
    DivClass out = base_class;
    out.coords.push_back(Rat(0));
    return out;
}

void PointModel::validate() const {
    base.validate();
    blown.validate();
    ensure(blown.rank == base.rank + 1, "blowup: rank must grow by one");
    ensure(blown.square(exceptional) == -1, "blowup: E^2 must be -1");
    for (std::size_t i = 0; i < base.rank; ++i) {
        DivClass b = DivClass::basis(base.rank, i);
        ensure(blown.pairing(pullback(b), exceptional) == 0, "blowup: pullbacks must be orthogonal to E");
        for (std::size_t j = 0; j < base.rank; ++j)
            ensure(blown.pairing(pullback(b), pullback(DivClass::basis(base.rank, j))) == base.gram[i][j],
                   "blowup: pullback must preserve the pairing");
    }
    ensure(blown.canonical == pullback(base.canonical) + exceptional, "blowup: K must be pi^*K + E");
}

PointModel blow_up(const SurfaceModel& s, const PointSpec& point) {
    s.validate();
    PointModel pm;
    pm.base = s;
    pm.log_discrepancy = 2;
    SurfaceModel& b = pm.blown;
    const std::size_t r = s.rank + 1;
    b.rank = r;
    b.gram = RatMatrix(r, RatVec(r, Rat(0)));
    for (std::size_t i = 0; i < s.rank; ++i)
        for (std::size_t j = 0; j < s.rank; ++j) b.gram[i][j] = s.gram[i][j];
    b.gram[r - 1][r - 1] = -1;
    pm.exceptional = DivClass::basis(r, r - 1);
    b.canonical = pm.pullback(s.canonical) + pm.exceptional;
    const DivClass pulled_ample = pm.pullback(s.ample_ref);
    // Provisional reference for validation during construction.
    b.ample_ref = pulled_ample;

    if (std::holds_alternative<GeneralPoint>(point)) {
        b.name = s.name + "+pt";
        int self_min = -1;
        int genus_max = 0;
        for (const CurveEntry& c : s.negative_curves()) {
            self_min = std::min(self_min, static_cast<int>(floor_int(c.self_int).get_si()));
            if (c.arith_genus) genus_max = std::max(genus_max, *c.arith_genus);
        }
        if (b.square(b.canonical) <= 0) {
            throw ModelError(s.name + ": blowup at a general point has K^2 <= 0 and infinitely many "
                                      "negative curves; only explicit point data is supported");
        }
        NegativeSearchOptions opt;
        opt.genus_max = genus_max;
        opt.degree_ref = pulled_ample;
        const DivClass e = pm.exceptional;
        opt.effective = [&b, e, pulled_ample](const DivClass& c) {
            if (c == e) return true;
            return b.pairing(c, pulled_ample) > 0 && b.pairing(c, e) >= 0;
        };
        std::vector<DivClass> found = enumerate_negative_classes(b, self_min, opt);
        // A general point lies on no base curve, so base curves pull back unchanged.
        for (const CurveEntry& c : s.negative_curves()) {
            DivClass pc = pm.pullback(c.cls);
            if (std::find(found.begin(), found.end(), pc) == found.end()) found.push_back(pc);
        }
        std::sort(found.begin(), found.end());
        for (const DivClass& c : found) {
            std::string curve_name = generic_name(c);
            if (c == e) curve_name = "E";
            for (const CurveEntry& base_curve : s.curves)
                if (pm.pullback(base_curve.cls) == c) curve_name = base_curve.name;
            std::optional<int> genus = 0;
            Rat adj = b.square(c) + b.pairing(c, b.canonical);
            if (is_integer(adj)) {
                Rat p = adj / 2 + 1;
                genus = static_cast<int>(p.get_num().get_si());
            }
            b.curves.push_back(b.make_curve(std::move(curve_name), c, genus));
        }
        b.catalog_complete = s.catalog_complete;
    } else {
        const auto& ex = std::get<ExplicitPoint>(point);
        b.name = s.name + "+pt";
        std::vector<CurveEntry> supplied;
        for (const StrictTransform& st : ex.strict_transforms) {
            check_rank(st.cls, r, ("strict transform " + st.name).c_str());
            if (st.multiplicity < 0) throw InputError("strict transform " + st.name + ": negative multiplicity");
            if (b.pairing(st.cls, pm.exceptional) != st.multiplicity) {
                throw InputError("strict transform " + st.name + ": (C - mE).E = " +
                                 to_string(b.pairing(st.cls, pm.exceptional)) + " but multiplicity is " +
                                 std::to_string(st.multiplicity));
            }
            if (b.square(st.cls) >= 0) continue;  // not part of any catalog
            supplied.push_back(b.make_curve(st.name, st.cls));
        }
        b.curves.push_back(b.make_curve("E", pm.exceptional, 0));
        for (const CurveEntry& c : s.negative_curves()) {
            DivClass pc = pm.pullback(c.cls);
            bool replaced = std::any_of(supplied.begin(), supplied.end(), [&](const CurveEntry& st) {
                DivClass base_part = st.cls;
                base_part.coords.back() = 0;
                return base_part == pc;
            });
            if (!replaced) b.curves.push_back(b.make_curve(c.name, pc, c.arith_genus));
        }
        for (CurveEntry& st : supplied) b.curves.push_back(std::move(st));
        b.catalog_complete = ex.assert_complete && s.catalog_complete;
    }
    b.ample_ref = blown_ample(b, pulled_ample, pm.exceptional);
    pm.validate();
    return pm;
}

}  // namespace kbound
