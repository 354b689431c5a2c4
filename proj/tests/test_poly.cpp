#include <gtest/gtest.h>

#include "brp/poly.hpp"

using namespace brp;

TEST(Poly, ParseAndPrint) {
    Poly p = parse_poly("y2^2 + 1", 2);
    EXPECT_EQ(p.degree(), 2);
    EXPECT_EQ(print_poly(p), "y2^2 + 1");
    EXPECT_EQ(print_poly(parse_poly("3/6*y1*y2 - y1", 2)), "1/2*y1*y2 - y1");
    EXPECT_EQ(print_poly(Poly(2)), "0");
    EXPECT_EQ(parse_poly(print_poly(p), 2), p);
    EXPECT_THROW(parse_poly("y3", 2), std::invalid_argument);
    EXPECT_THROW(parse_poly("y1 +", 2), std::invalid_argument);
}

TEST(Poly, Arithmetic) {
    Poly x = Poly::variable(2, 0), y = Poly::variable(2, 1);
    Poly p = (x + y) * (x - y);
    EXPECT_EQ(p, parse_poly("y1^2 - y2^2", 2));
    EXPECT_EQ(p.derivative(0), Rational(2) * x);
    EXPECT_TRUE(Poly::constant(2, 5).derivative(1).is_zero());
    EXPECT_EQ(p.eval<Rational>({Rational(3), Rational(1)}), Rational(8));
}

TEST(Poly, FieldParseAndEval) {
    PolyVectorField f = parse_field("y2^2 + 1; 1", 2);
    EXPECT_EQ(f.dim(), 2);
    auto v = f.eval<Rational>({Rational(0), Rational(2)});
    EXPECT_EQ(v, (std::vector<Rational>{5, 1}));
    EXPECT_EQ(print_field(f), "y2^2 + 1; 1");
    EXPECT_THROW(parse_field("y1", 2), std::invalid_argument);
    CompiledField cf(f);
    auto w = cf({0.5, -1.5});
    EXPECT_DOUBLE_EQ(w[0], 3.25);
    EXPECT_DOUBLE_EQ(w[1], 1.0);
}

TEST(Poly, DirectionalDerivative) {
    PolyVectorField f = parse_field("y1*y2; y1^2", 2);
    PolyVectorField a = parse_field("1; y2", 2);
    // (a . D) f = a_1 d_1 f + a_2 d_2 f
    EXPECT_EQ(f.directional(a), parse_field("y2 + y1*y2; 2*y1", 2));
    EXPECT_EQ(f.directional(PolyVectorField::zero(2)), PolyVectorField::zero(2));
}

TEST(Poly, ContractionIsSymmetricMultilinear) {
    PolyVectorField F = parse_field("y1^2*y2; y2^3", 2);
    PolyVectorField g = parse_field("1; y1", 2), h = parse_field("y2; 2", 2);
    EXPECT_EQ(contract(F, {g, h}), contract(F, {h, g}));
    EXPECT_EQ(contract(F, {}), F);
    EXPECT_EQ(contract(F, {g}), F.directional(g));
    std::vector<Rational> y{Rational(1), Rational(2)};
    auto at = contract_at<Rational>(F, y, {g.eval(y), h.eval(y)});
    EXPECT_EQ(at, contract(F, {g, h}).eval(y));
}
