#include "kbound/concavity_lab.hpp"

#include "kbound/errors.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace kbound {

namespace {

const Poly kX = Poly::linear(Rat(0), Rat(1));

Rat slope(const Node& p, const Node& q) { return (q.y - p.y) / (q.x - p.x); }

// Largest value of a polynomial of degree <= 2 on [lo, hi].
Rat max_on(const Poly& q, const Rat& lo, const Rat& hi) {
    Rat best = std::max(q(lo), q(hi));
    if (q.degree() == 2 && q.coeff(2) < 0) {
        Rat vertex = -q.coeff(1) / (2 * q.coeff(2));
        if (vertex > lo && vertex < hi) best = std::max(best, q(vertex));
    }
    return best;
}

void require_diagonal_prefix(const Rat& a, const Rat& b, const PLConcave& g) {
    g.validate();
    if (a <= 0 || a > b) throw DomainError("need 0 < a <= b");
    if (g.upper() != b) throw DomainError("g must be defined exactly on [0, b]");
    for (const Node& n : g.nodes)
        if (n.x <= a && n.y != n.x) throw DomainError("g must equal x on [0, a]");
    if (g(a) != a) throw DomainError("g must equal x on [0, a]");
}

// Values agree at every node of either function.
bool same_function(const PLConcave& f, const PLConcave& g) {
    if (f.upper() != g.upper()) return false;
    for (const Node& n : f.nodes)
        if (g(n.x) != n.y) return false;
    for (const Node& n : g.nodes)
        if (f(n.x) != n.y) return false;
    return true;
}

class RatSource {
public:
    explicit RatSource(std::uint64_t seed) : rng_(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool chance(int one_in) { return uniform(1, one_in) == 1; }
    Rat rat(long num_lo, long num_hi, long den_max) { return make_rat(uniform(num_lo, num_hi), uniform(1, den_max)); }

    /// count distinct points strictly inside (lo, hi), increasing.
    std::vector<Rat> interior(const Rat& lo, const Rat& hi, int count) {
        const long d = 8L * (count + 1);
        std::set<long> picks;
        while (static_cast<int>(picks.size()) < count) picks.insert(uniform(1, d - 1));
        std::vector<Rat> out;
        for (long k : picks) out.push_back(lo + (hi - lo) * make_rat(k, d));
        return out;
    }

    /// Non-increasing sequence starting at or below start.
    std::vector<Rat> slopes(const Rat& start, std::size_t count) {
        std::vector<Rat> out;
        Rat s = start;
        for (std::size_t i = 0; i < count; ++i) {
            if (!chance(4)) s -= rat(0, 6, 4);
            out.push_back(s);
        }
        return out;
    }

private:
    std::mt19937_64 rng_;
};

std::vector<Node> integrate_slopes(const std::vector<Rat>& xs, const Rat& y0, const std::vector<Rat>& slopes) {
    std::vector<Node> nodes{{xs[0], y0}};
    for (std::size_t i = 1; i < xs.size(); ++i)
        nodes.push_back({xs[i], nodes.back().y + slopes[i - 1] * (xs[i] - xs[i - 1])});
    return nodes;
}

}  // namespace

void PLConcave::validate() const {
    if (nodes.size() < 2) throw DomainError("a piecewise-linear function needs at least two nodes");
    if (nodes.front().x != 0) throw DomainError("first node must sit at x = 0");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (nodes[i].x <= nodes[i - 1].x) throw DomainError("node abscissae must increase strictly");
    const std::vector<Rat> s = slopes();
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] > s[i - 1]) throw DomainError("slopes increase at x = " + to_string(nodes[i].x) + ": not concave");
}

std::vector<Rat> PLConcave::slopes() const {
    std::vector<Rat> out;
    for (std::size_t i = 1; i < nodes.size(); ++i) out.push_back(slope(nodes[i - 1], nodes[i]));
    return out;
}

Rat PLConcave::operator()(const Rat& x) const {
    if (x < nodes.front().x || x > nodes.back().x) throw DomainError("evaluation outside [0, B]");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (x <= nodes[i].x) return nodes[i - 1].y + slope(nodes[i - 1], nodes[i]) * (x - nodes[i - 1].x);
    return nodes.back().y;
}

PiecewisePoly PLConcave::as_piecewise() const {
    PiecewisePoly p;
    for (const Node& n : nodes) p.breakpoints.push_back(n.x);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        Rat s = slope(nodes[i - 1], nodes[i]);
        p.pieces.push_back(Poly::linear(nodes[i - 1].y - s * nodes[i - 1].x, s));
    }
    return p;
}

PLConcave tent(const Rat& a, const Rat& b) {
    if (a <= 0 || a > b) throw DomainError("need 0 < a <= b");
    if (a == b) return PLConcave{{{Rat(0), Rat(0)}, {a, a}}};
    return PLConcave{{{Rat(0), Rat(0)}, {a, a}, {b, Rat(0)}}};
}

LemmaCheck check_center_pt(const Rat& a, const Rat& b, const PLConcave& g) {
    require_diagonal_prefix(a, b, g);
    const PiecewisePoly p = g.as_piecewise();
    const Rat int_g = p.integral();
    const Rat int_mix = p.map([](const Poly& q) { return (2 * kX - q) * q; }).integral();

    LemmaCheck c;
    c.lhs = 3 * a * int_mix;
    c.rhs = 4 * int_g * int_g;
    c.holds = c.lhs <= c.rhs;
    c.equality = c.lhs == c.rhs;
    ensure(c.holds, "center-point inequality violated: " + to_string(c.lhs) + " > " + to_string(c.rhs));
    ensure(c.equality == (a == b || same_function(g, tent(a, b))),
           "center-point equality flag disagrees with the extremal characterization");
    if (c.equality) ensure(2 * int_g == a * b, "center-point equality without int g = ab/2");
    return c;
}

LemmaCheck check_center_div(const Rat& a, int n, const PLConcave& g) {
    if (n < 1 || n > 8) throw DomainError("n must lie in [1, 8]");
    g.validate();
    if (a <= 0 || g.upper() != a) throw DomainError("g must be defined exactly on [0, a] with a > 0");
    for (const Node& nd : g.nodes)
        if (nd.y < 0) throw DomainError("g must be nonnegative");
    const Rat g0 = g.nodes.front().y;
    if (g0 <= 0) throw DomainError("g(0) must be positive");

    const auto k = static_cast<unsigned>(n - 1);
    const PiecewisePoly gk = g.as_piecewise().map([k](const Poly& q) { return q.pow(k); });
    const Rat moment = gk.map([](const Poly& q) { return kX * q; }).integral();
    const Rat mass = gk.integral();

    LemmaCheck c;
    c.lhs = pow(g0, k) * moment;
    c.rhs = Rat(n) / Rat(n + 1) * mass * mass;
    c.holds = c.lhs <= c.rhs;
    c.equality = c.lhs == c.rhs;
    ensure(c.holds, "center-divisor inequality violated: " + to_string(c.lhs) + " > " + to_string(c.rhs));
    const bool linear = same_function(g, PLConcave{{{Rat(0), g0}, {a, Rat(0)}}});
    ensure(c.equality == (n == 1 || linear), "center-divisor equality flag disagrees with the characterization");
    return c;
}

FClaim check_f_claim(const Rat& a, const Rat& b, const PLConcave& g) {
    require_diagonal_prefix(a, b, g);
    FClaim out{Rat(0), true};
    if (a == b) return out;
    const Rat c = b - a;
    const PLConcave h = tent(a, b);

    // f on [0, c] through the nodes of g to the right of a.
    std::vector<Node> f{{Rat(0), Rat(0)}};
    for (const Node& n : g.nodes)
        if (n.x > a) f.push_back({n.x - a, n.y - h(n.x)});
    const PiecewisePoly fp = PLConcave{f}.as_piecewise();

    Rat cumulative(0);  // int_0^{t_i} f
    for (std::size_t i = 0; i < fp.pieces.size(); ++i) {
        const Rat& lo = fp.breakpoints[i];
        const Rat& hi = fp.breakpoints[i + 1];
        const Poly anti = fp.pieces[i].antiderivative();
        const Poly running = anti - Poly::constant(anti(lo) - cumulative);
        const Poly dF = kX * fp.pieces[i] - 2 * running;
        if (max_on(dF, lo, hi) > 0) out.derivative_nonpositive = false;
        cumulative = running(hi);
    }
    out.value = fp.map([&c](const Poly& q) { return (3 * kX - Poly::constant(2 * c)) * q; }).integral();
    ensure(out.value <= 0, "F(c) > 0 for a concave g");
    ensure(out.derivative_nonpositive, "F'(t) > 0 somewhere for a concave g");
    return out;
}

PLConcave random_concave(std::uint64_t seed, const Rat& b, int node_count, const ConcaveConstraint& constraint) {
    if (node_count < 2) throw DomainError("need at least two nodes");
    if (b <= 0) throw DomainError("domain end must be positive");
    RatSource src(seed);

    if (constraint.kind == ConcaveConstraint::Kind::DiagonalPrefix) {
        const Rat& a = constraint.a;
        if (a <= 0 || a > b) throw DomainError("need 0 < a <= b");
        if (a == b) {
            std::vector<Node> nodes{{Rat(0), Rat(0)}};
            for (const Rat& x : src.interior(Rat(0), b, node_count - 2)) nodes.push_back({x, x});
            nodes.push_back({b, b});
            return PLConcave{nodes};
        }
        if (node_count < 3) throw DomainError("g = x on [0, a] with a < b needs a node at a: at least three nodes");
        std::vector<Rat> xs{a};
        for (const Rat& x : src.interior(a, b, node_count - 3)) xs.push_back(x);
        xs.push_back(b);
        std::vector<Node> tail = integrate_slopes(xs, a, src.slopes(Rat(1), xs.size() - 1));
        std::vector<Node> nodes{{Rat(0), Rat(0)}};
        nodes.insert(nodes.end(), tail.begin(), tail.end());
        return PLConcave{nodes};
    }

    std::vector<Rat> xs{Rat(0)};
    for (const Rat& x : src.interior(Rat(0), b, node_count - 2)) xs.push_back(x);
    xs.push_back(b);
    std::vector<Node> q = integrate_slopes(xs, Rat(0), src.slopes(src.rat(-6, 6, 3), xs.size() - 1));
    // Adding an affine function keeps concavity; pin positive g(0) and g(b) >= 0.
    const Rat y0 = src.rat(1, 12, 4);
    const Rat yb = src.chance(4) ? Rat(0) : src.rat(0, 12, 4);
    const Rat tilt = (yb - y0 - q.back().y) / b;
    for (Node& n : q) n.y += y0 + tilt * n.x;
    return PLConcave{q};
}

std::vector<LemmaCase> run_lemma_suite(LemmaKind kind, int cases, std::uint64_t seed) {
    if (cases < 0) throw DomainError("case count must be nonnegative");
    std::vector<LemmaCase> out;
    for (int i = 0; i < cases; ++i) {
        LemmaCase lc;
        lc.seed = seed + static_cast<std::uint64_t>(i);
        RatSource src(lc.seed ^ 0x5bd1e995u);
        lc.b = src.rat(1, 12, 4);
        const int nodes = static_cast<int>(src.uniform(3, 8));
        if (kind == LemmaKind::CenterPoint) {
            const long m = src.uniform(2, 9);
            lc.a = src.chance(8) ? lc.b : lc.b * make_rat(src.uniform(1, m - 1), m);
            lc.g = random_concave(lc.seed, lc.b, nodes,
                                  ConcaveConstraint{ConcaveConstraint::Kind::DiagonalPrefix, lc.a});
            lc.check = check_center_pt(lc.a, lc.b, lc.g);
        } else {
            lc.n = 2 + i % 7;
            lc.a = lc.b;
            lc.g = random_concave(lc.seed, lc.b, nodes, ConcaveConstraint{ConcaveConstraint::Kind::Nonnegative, {}});
            lc.check = check_center_div(lc.a, lc.n, lc.g);
        }
        out.push_back(std::move(lc));
    }
    return out;
}

std::string lemma_tsv(const std::vector<LemmaCase>& cases) {
    std::ostringstream os;
    os << "seed\tlhs\trhs\tmargin\tequality\n";
    for (const LemmaCase& c : cases)
        os << c.seed << '\t' << to_string(c.check.lhs) << '\t' << to_string(c.check.rhs) << '\t'
           << to_string(c.check.margin()) << '\t' << (c.check.equality ? "true" : "false") << '\n';
    return os.str();
}

}  // namespace kbound
