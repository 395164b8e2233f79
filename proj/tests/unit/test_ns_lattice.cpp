#include "kbound/errors.hpp"
#include "kbound/ns_lattice.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace kbound;

namespace {

DivClass cls(std::initializer_list<long> v) {
    std::vector<Rat> c;
    for (long x : v) c.emplace_back(x);
    return DivClass(std::move(c));
}

// Independent count of exceptional classes on P2 blown up at k points:
// integer (a; b_1..b_k) with a^2 - sum b^2 = -1, 3a - sum b = 1, searched in
// the box 0 <= a <= 6, -3 <= b_i <= 1 (coordinates of E_i are +1).
int brute_exceptional_count(int k) {
    int count = 0;
    std::vector<int> b(static_cast<std::size_t>(k), -3);
    for (int a = 0; a <= 6; ++a) {
        std::fill(b.begin(), b.end(), -3);
        while (true) {
            long sq = static_cast<long>(a) * a, lin = 3L * a;
            for (int x : b) sq -= static_cast<long>(x) * x, lin += x;  // K = (-3; 1,..,1)
            if (sq == -1 && lin == 1) ++count;
            std::size_t i = 0;
            while (i < b.size() && b[i] == 1) b[i++] = -3;
            if (i == b.size()) break;
            ++b[i];
        }
    }
    return count;
}

}  // namespace

TEST(NsLattice, PairingExamples) {
    SurfaceModel p2 = builtin_surface("P2");
    EXPECT_EQ(pairing(cls({1}), cls({1}), p2), Rat(1));
    SurfaceModel q = builtin_surface("P1xP1");
    EXPECT_EQ(pairing(cls({1, 0}), cls({0, 1}), q), Rat(1));
    EXPECT_EQ(pairing(cls({1, 0}), cls({1, 0}), q), Rat(0));
    SurfaceModel dp2 = builtin_surface("DelPezzo(2)");
    EXPECT_EQ(pairing(dp2.canonical, dp2.canonical, dp2), Rat(2));
    EXPECT_THROW(pairing(cls({1}), cls({1, 0}), q), InputError);
}

TEST(NsLattice, BuiltinsAreValidWithExpectedCatalogs) {
    EXPECT_EQ(builtin_surface("P2").gram, (RatMatrix{{Rat(1)}}));
    EXPECT_EQ(builtin_surface("P2").canonical, cls({-3}));
    EXPECT_TRUE(builtin_surface("P1xP1").curves.empty());
    SurfaceModel f2 = builtin_surface("Hirzebruch(2)");
    ASSERT_EQ(f2.curves.size(), 1u);
    EXPECT_EQ(f2.curves[0].cls, cls({0, 1}));
    EXPECT_EQ(f2.curves[0].self_int, Rat(-2));
    SurfaceModel f5 = builtin_surface("builtin:Hirzebruch(5)");
    ASSERT_EQ(f5.curves.size(), 1u);
    EXPECT_EQ(f5.curves[0].self_int, Rat(-5));
    EXPECT_TRUE(builtin_surface("Hirzebruch(0)").curves.empty());

    const int expected[] = {240, 56, 27, 16, 10, 6, 3, 1, 0};
    for (int d = 1; d <= 9; ++d) {
        SurfaceModel s = builtin_surface("DelPezzo(" + std::to_string(d) + ")");
        EXPECT_EQ(static_cast<int>(s.curves.size()), expected[d - 1]) << d;
        EXPECT_TRUE(s.catalog_complete);
        EXPECT_EQ(s.square(s.canonical), Rat(d));
        for (const CurveEntry& c : s.curves) {
            EXPECT_EQ(c.self_int, Rat(-1));
            EXPECT_EQ(s.pairing(c.cls, s.canonical), Rat(-1));
        }
    }
    EXPECT_EQ(builtin_surface("BlowupP2(6)").curves, builtin_surface("DelPezzo(3)").curves);
}

TEST(NsLattice, EnumerationMatchesBruteForceBox) {
    for (int k = 1; k <= 7; ++k) {
        SurfaceModel s = builtin_surface("BlowupP2(" + std::to_string(k) + ")");
        EXPECT_EQ(static_cast<int>(s.curves.size()), brute_exceptional_count(k)) << k;
    }
}

TEST(NsLattice, EnumerationIsCanonicalAndIdempotent) {
    SurfaceModel s = builtin_surface("DelPezzo(4)");
    auto a = enumerate_negative_classes(s, -1);
    auto b = enumerate_negative_classes(s, -1);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    std::set<DivClass> unique(a.begin(), a.end());
    EXPECT_EQ(unique.size(), a.size());
    // Degree-bounded search finds the same curves.
    NegativeSearchOptions opt;
    opt.max_degree = 3;
    EXPECT_EQ(enumerate_negative_classes(s, -1, opt), a);
}

TEST(NsLattice, UnboundedSearchIsAModelError) {
    SurfaceModel s = builtin_surface("DelPezzo(1)");
    PointModel ok = blow_up(builtin_surface("DelPezzo(2)"), GeneralPoint{});
    EXPECT_EQ(ok.blown.curves.size(), 240u);
    EXPECT_THROW(blow_up(s, GeneralPoint{}), ModelError);
}

TEST(NsLattice, ValidationRejectsBadModels) {
    SurfaceModel s = builtin_surface("P1xP1");
    s.gram = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    EXPECT_THROW(s.validate(), ModelError);
    s = builtin_surface("P1xP1");
    s.gram[0][1] = 2;
    EXPECT_THROW(s.validate(), InputError);
    s = builtin_surface("P1xP1");
    s.ample_ref = cls({1, 0});
    EXPECT_THROW(s.validate(), ModelError);
    s = builtin_surface("Hirzebruch(2)");
    s.ample_ref = cls({1, 1});  // meets sigma in -1
    EXPECT_THROW(s.validate(), ModelError);
    EXPECT_THROW(builtin_surface("DelPezzo(10)"), InputError);
    EXPECT_THROW(builtin_surface("Enriques"), InputError);
    EXPECT_THROW(builtin_surface("DelPezzo(x)"), InputError);
}

TEST(NsLattice, BlowupsOfBuiltins) {
    PointModel p2 = blow_up(builtin_surface("P2"), GeneralPoint{});
    ASSERT_EQ(p2.blown.curves.size(), 1u);
    EXPECT_EQ(p2.blown.curves[0].cls, p2.exceptional);
    EXPECT_EQ(p2.log_discrepancy, Rat(2));

    PointModel q = blow_up(builtin_surface("P1xP1"), GeneralPoint{});
    std::set<DivClass> got;
    for (const auto& c : q.blown.curves) got.insert(c.cls);
    EXPECT_EQ(got, (std::set<DivClass>{cls({0, 0, 1}), cls({1, 0, -1}), cls({0, 1, -1})}));

    PointModel dp4 = blow_up(builtin_surface("DelPezzo(4)"), GeneralPoint{});
    EXPECT_EQ(dp4.blown.curves.size(), 27u);
    // Same lattice as DelPezzo(3) in the standard basis.
    SurfaceModel dp3 = builtin_surface("DelPezzo(3)");
    EXPECT_EQ(dp4.blown.gram, dp3.gram);
    EXPECT_EQ(dp4.blown.canonical, dp3.canonical);
    std::set<DivClass> a, b;
    for (const auto& c : dp4.blown.curves) a.insert(c.cls);
    for (const auto& c : dp3.curves) b.insert(c.cls);
    EXPECT_EQ(a, b);

    PointModel f2 = blow_up(builtin_surface("Hirzebruch(2)"), GeneralPoint{});
    std::set<DivClass> fc;
    for (const auto& c : f2.blown.curves) fc.insert(c.cls);
    EXPECT_EQ(fc, (std::set<DivClass>{cls({0, 0, 1}), cls({0, 1, 0}), cls({1, 0, -1})}));

    // The conic through the point on a cubic: -K - 2E is a (-1)-curve.
    PointModel dp3pt = blow_up(dp3, GeneralPoint{});
    EXPECT_EQ(dp3pt.blown.curves.size(), 56u);
    DivClass tangent = dp3pt.pullback(dp3.canonical) * Rat(-1) - Rat(2) * dp3pt.exceptional;
    bool found = false;
    for (const auto& c : dp3pt.blown.curves) found |= (c.cls == tangent);
    EXPECT_TRUE(found);
}

TEST(NsLattice, ProjectionFormula) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (const char* name : {"P2", "P1xP1", "Hirzebruch(3)", "DelPezzo(5)", "DelPezzo(3)"}) {
        SurfaceModel s = builtin_surface(name);
        PointModel pm = blow_up(s, GeneralPoint{});
        for (int trial = 0; trial < 20; ++trial) {
            DivClass d1 = DivClass::zero(s.rank), d2 = DivClass::zero(s.rank), d3 = DivClass::zero(s.rank);
            for (std::size_t i = 0; i < s.rank; ++i) {
                d1[i] = make_rat(coef(rng), 1 + std::abs(coef(rng)));
                d2[i] = Rat(coef(rng));
                d3[i] = make_rat(coef(rng), 3);
            }
            EXPECT_EQ(pm.blown.pairing(pm.pullback(d1), pm.pullback(d2)), s.pairing(d1, d2));
            EXPECT_EQ(pm.blown.pairing(pm.pullback(d1), pm.exceptional), Rat(0));
            Rat a = make_rat(coef(rng), 7), b = make_rat(coef(rng), 2);
            EXPECT_EQ(s.pairing(a * d1 + b * d2, d3), a * s.pairing(d1, d3) + b * s.pairing(d2, d3));
            EXPECT_EQ(s.pairing(d1, d2), s.pairing(d2, d1));
        }
    }
}

TEST(NsLattice, ExplicitPointData) {
    // A point of a cubic surface lying on the line E1.
    SurfaceModel dp3 = builtin_surface("DelPezzo(3)");
    ExplicitPoint pt;
    DivClass line_st = DivClass::basis(8, 1) - DivClass::basis(8, 7);
    pt.strict_transforms.push_back({"E1~", line_st, 1});
    DivClass conic_st = DivClass::zero(8);
    conic_st[0] = 1;
    conic_st[7] = -1;
    pt.strict_transforms.push_back({"line of P2", conic_st, 1});  // square 0: dropped
    PointModel pm = blow_up(dp3, pt);
    EXPECT_FALSE(pm.blown.catalog_complete);
    ASSERT_EQ(pm.blown.curves.size(), 28u);
    bool replaced = true;
    for (const auto& c : pm.blown.curves) replaced &= !(c.cls == pm.pullback(DivClass::basis(7, 1)));
    EXPECT_TRUE(replaced);
    EXPECT_GT(pm.blown.pairing(pm.blown.ample_ref, line_st), 0);

    ExplicitPoint asserted = pt;
    asserted.assert_complete = true;
    EXPECT_TRUE(blow_up(dp3, asserted).blown.catalog_complete);

    ExplicitPoint bad;
    bad.strict_transforms.push_back({"oops", line_st, 2});
    EXPECT_THROW(blow_up(dp3, bad), InputError);
}

TEST(NsLattice, ParseClass) {
    EXPECT_EQ(parse_class("1, -1/2 ,3", 3), (DivClass({Rat(1), Rat(-1, 2), Rat(3)})));
    EXPECT_EQ(parse_class("[2 0]", 2), cls({2, 0}));
    EXPECT_THROW(parse_class("1,2", 3), InputError);
    EXPECT_EQ(cls({2, 4}).ratio_to(cls({1, 2})), Rat(2));
    EXPECT_FALSE(cls({2, 4}).ratio_to(cls({1, 3})));
}
