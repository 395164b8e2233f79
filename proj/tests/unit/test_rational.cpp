#include "kbound/errors.hpp"
#include "kbound/rational.hpp"

#include <gtest/gtest.h>

using namespace kbound;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
    EXPECT_EQ(parse_rat("3/6"), Rat(1, 2));
    EXPECT_EQ(parse_rat("-4/2"), Rat(-2));
    EXPECT_EQ(parse_rat("+7"), Rat(7));
    EXPECT_EQ(parse_rat(" 12 "), Rat(12));
    EXPECT_EQ(parse_rat("-1.25"), Rat(-5, 4));
    EXPECT_EQ(parse_rat(".5"), Rat(1, 2));
    EXPECT_EQ(parse_rat("3."), Rat(3));
    EXPECT_EQ(parse_rat("123456789012345678901234567890/10"), Rat(Int("12345678901234567890123456789")));
}

TEST(Rational, RejectsGarbage) {
    for (const char* bad : {"", "1/0", "a", "1/-2", "1.2.3", "--1", "1/", "/2", ".", "1e5"})
        EXPECT_THROW(parse_rat(bad), InputError) << bad;
}

TEST(Rational, CanonicalText) {
    EXPECT_EQ(to_string(make_rat(6, 4)), "3/2");
    EXPECT_EQ(to_string(Rat(-3)), "-3");
    EXPECT_EQ(to_string(Rat(0)), "0");
    EXPECT_EQ(to_decimal(Rat(2, 3), 4), "0.6667");
    EXPECT_EQ(to_decimal(Rat(-7, 6), 3), "-1.167");
    EXPECT_EQ(to_decimal(Rat(-1, 10000), 2), "0.00");
    EXPECT_EQ(to_decimal(Rat(5), 0), "5");
}

TEST(Rational, SqrtFloorCeil) {
    EXPECT_EQ(exact_sqrt(make_rat(9, 16)), Rat(3, 4));
    EXPECT_FALSE(exact_sqrt(Rat(2)).has_value());
    EXPECT_FALSE(exact_sqrt(Rat(-1)).has_value());
    EXPECT_EQ(exact_sqrt(Rat(0)), Rat(0));
    EXPECT_EQ(floor_int(Rat(-3, 2)), Int(-2));
    EXPECT_EQ(ceil_int(Rat(-3, 2)), Int(-1));
    EXPECT_EQ(floor_int(Rat(7, 2)), Int(3));
    EXPECT_EQ(ceil_int(Rat(7, 2)), Int(4));
    EXPECT_TRUE(is_integer(make_rat(8, 4)));
    EXPECT_FALSE(is_integer(Rat(1, 3)));
    EXPECT_EQ(pow(Rat(2, 3), 3), Rat(8, 27));
    EXPECT_EQ(pow(Rat(5), 0), Rat(1));
    EXPECT_EQ(sign(Rat(-1, 9)), -1);
}
