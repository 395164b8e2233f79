#include "kbound/errors.hpp"
#include "kbound/serialize.hpp"
#include "kbound/zariski.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace kbound;

namespace {

DivClass anticanonical(const SurfaceModel& s) { return -s.canonical; }

template <class T>
void expect_round_trip(const T& value) {
    std::string text = dump(value);
    T back = parse_as<T>(text);
    EXPECT_EQ(back, value) << text;
    EXPECT_EQ(dump(back), text);
}

}  // namespace

TEST(Serialize, Rationals) {
    EXPECT_EQ(json(make_rat(-6, 4)).get<std::string>(), "-3/2");
    EXPECT_EQ(json(Rat(7)).get<std::string>(), "7");
    EXPECT_EQ(json(3).get<Rat>(), Rat(3));
    EXPECT_EQ(json(-12345678901234LL).get<Rat>(), Rat(mpz_class("-12345678901234")));
    EXPECT_EQ(json("2/4").get<Rat>(), make_rat(1, 2));
    EXPECT_THROW(json(0.5).get<Rat>(), InputError);
    EXPECT_THROW(json("x").get<Rat>(), InputError);
}

TEST(Serialize, BuiltinSurfacesRoundTrip) {
    for (const char* name : {"P2", "P1xP1", "Hirzebruch(2)", "DelPezzo(3)", "DelPezzo(1)", "BlowupP2(4)"})
        expect_round_trip(builtin_surface(name));
}

TEST(Serialize, SurfaceFileFillsSelfIntersections) {
    const char* text = R"({
      "name": "F1",
      "gram": [[1, 0], [0, -1]],
      "canonical": [-3, 1],
      "ample_ref": [2, -1],
      "curves": [{"name": "E", "class": [0, 1]}],
      "catalog_complete": true
    })";
    SurfaceModel s = parse_as<SurfaceModel>(text);
    EXPECT_EQ(s.rank, 2u);
    ASSERT_EQ(s.curves.size(), 1u);
    EXPECT_EQ(s.curves[0].self_int, Rat(-1));
    EXPECT_EQ(s.square(s.canonical), Rat(8));

    std::string path = ::testing::TempDir() + "kbound_f1.json";
    {
        std::ofstream out(path);
        out << text;
    }
    EXPECT_EQ(load_surface(path), s);
    std::remove(path.c_str());
    EXPECT_EQ(load_surface("builtin:P2"), builtin_surface("P2"));
    EXPECT_EQ(load_surface("DelPezzo(5)"), builtin_surface("DelPezzo(5)"));
}

TEST(Serialize, SurfaceFileRejectsBadInput) {
    // Wrong self-intersection.
    EXPECT_THROW(parse_as<SurfaceModel>(R"({"gram": [[1]], "canonical": [-3], "ample_ref": [1],
        "curves": [{"name": "L", "class": [1], "self_int": 2}]})"),
                 InputError);
    // Rank mismatch.
    EXPECT_THROW(parse_as<SurfaceModel>(R"({"gram": [[1]], "canonical": [-3, 0], "ample_ref": [1]})"), InputError);
    // Not a surface lattice: signature (0, 1).
    EXPECT_ANY_THROW(parse_as<SurfaceModel>(R"({"gram": [[-1]], "canonical": [1], "ample_ref": [1]})"));
    EXPECT_THROW(parse_as<SurfaceModel>("{"), InputError);
    EXPECT_THROW(parse_as<SurfaceModel>(R"({"canonical": [-3]})"), InputError);
    EXPECT_THROW(load_surface("no/such/file.json"), InputError);
}

TEST(Serialize, ExplicitPoint) {
    ExplicitPoint p = explicit_point_from_json(
        json::parse(R"({"strict_transforms": [{"name": "C~", "class": [1, -1], "multiplicity": 1}], "assert_complete": true})"), 2);
    ASSERT_EQ(p.strict_transforms.size(), 1u);
    EXPECT_EQ(p.strict_transforms[0].multiplicity, 1);
    EXPECT_TRUE(p.assert_complete);
    EXPECT_THROW(explicit_point_from_json(json::parse(R"({"strict_transforms": [{"name": "C", "class": [1]}]})"), 2),
                 InputError);
}

TEST(Serialize, ReportsRoundTrip) {
    for (const char* name : {"P2", "P1xP1", "DelPezzo(3)", "DelPezzo(2)"}) {
        SurfaceModel s = builtin_surface(name);
        PointModel pm = blow_up(s, GeneralPoint{});
        InvariantReport r = surface_delta_bound(s, anticanonical(s), pm);
        expect_round_trip(r);
        json j = r;
        EXPECT_EQ(j.at("lambda_bound").get<Rat>(), r.lambda_bound);
        EXPECT_TRUE(j.at("ray").at("vol_profile").contains("breakpoints"));
        expect_round_trip(zariski_decompose(pm.pullback(anticanonical(s)) - pm.exceptional * r.ray.tau * make_rat(1, 2), pm.blown));
    }
    expect_round_trip(lift_dimension(3, Rat(8), Rat(2), Rat(2)));
    expect_round_trip(hypersurface_verdict({27, 3}));
    ThreefoldQuery q;
    q.index = 1;
    q.degree = 16;
    expect_round_trip(threefold_verdict(q));
    expect_round_trip(k3_tau_bound(16, make_rat(39, 10), 10));
    expect_round_trip(k3_tau_bound(16, make_rat(401, 100), 5));
}

TEST(Serialize, DumpIsDeterministic) {
    SurfaceModel s = builtin_surface("DelPezzo(4)");
    PointModel pm = blow_up(s, GeneralPoint{});
    EXPECT_EQ(dump(surface_delta_bound(s, anticanonical(s), pm)), dump(surface_delta_bound(s, anticanonical(s), pm)));
}
