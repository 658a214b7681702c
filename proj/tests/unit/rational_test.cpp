#include <gtest/gtest.h>

#include <framekit/rational.hpp>

using framekit::Errc;
using framekit::Error;
using framekit::GaussianRational;
using framekit::parse_gaussian;
using framekit::Rational;

namespace {

GaussianRational g(long a, long b, long c = 0, long d = 1) { return {Rational(a, b), Rational(c, d)}; }

Errc code_of(std::string_view text) {
    try {
        parse_gaussian(text);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error for '" << text << "'";
    return Errc::invalid_argument;
}

} // namespace

TEST(Rational, CanonicalForm) {
    EXPECT_EQ(Rational(2, 4), Rational(1, 2));
    EXPECT_EQ(Rational(3, -6), Rational(-1, 2));
    EXPECT_EQ(Rational(-3, 6).to_string(), "-1/2");
    EXPECT_EQ(Rational(4, 2).to_string(), "2");
    EXPECT_TRUE(Rational(0, 5).is_zero());
}

TEST(Rational, ZeroDenominatorThrows) {
    try {
        Rational(1, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::division_by_zero);
    }
}

TEST(Rational, OrderingAndSign) {
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_EQ(Rational(-7, 3).sign(), -1);
    EXPECT_DOUBLE_EQ(Rational(3, 8).to_double(), 0.375);
}

TEST(GaussianRational, Arithmetic) {
    const GaussianRational a = g(1, 2, 1, 3), b = g(-2, 1, 3, 4);
    // (1/2 + i/3)(-2 + 3i/4) = -1 + 3i/8 - 2i/3 - 1/4 = -5/4 - 7i/24
    EXPECT_EQ(a * b, g(-5, 4, -7, 24));
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(a + b - b, a);
    EXPECT_EQ(a.conj(), g(1, 2, -1, 3));
    EXPECT_EQ(a.norm2(), Rational(13, 36));
    EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), GaussianRational(-1));
}

TEST(GaussianRational, DivisionByZeroThrows) {
    try {
        (void)(g(1, 1) / GaussianRational());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::division_by_zero);
    }
}

TEST(GaussianRational, ToString) {
    EXPECT_EQ(GaussianRational().to_string(), "0");
    EXPECT_EQ(g(1, 2).to_string(), "1/2");
    EXPECT_EQ(g(0, 1, -3, 1).to_string(), "-3*i");
    EXPECT_EQ(g(1, 2, 3, 4).to_string(), "1/2+3/4*i");
    EXPECT_EQ(g(1, 2, -3, 4).to_string(), "1/2-3/4*i");
}

TEST(ParseGaussian, Forms) {
    EXPECT_EQ(parse_gaussian("1/2"), g(1, 2));
    EXPECT_EQ(parse_gaussian("-3"), g(-3, 1));
    EXPECT_EQ(parse_gaussian("0.5"), g(1, 2));
    EXPECT_EQ(parse_gaussian("-0.125"), g(-1, 8));
    EXPECT_EQ(parse_gaussian("i"), g(0, 1, 1, 1));
    EXPECT_EQ(parse_gaussian("-i"), g(0, 1, -1, 1));
    EXPECT_EQ(parse_gaussian("1/2 + 3/4*i"), g(1, 2, 3, 4));
    EXPECT_EQ(parse_gaussian(" 2 - i "), g(2, 1, -1, 1));
    EXPECT_EQ(parse_gaussian("4/8"), g(1, 2));
}

TEST(ParseGaussian, RoundTripsToString) {
    for (const auto& z : {g(1, 2, 3, 4), g(-5, 3, -1, 7), g(0, 1, 2, 1), g(7, 1), GaussianRational()})
        EXPECT_EQ(parse_gaussian(z.to_string()), z) << z.to_string();
}

TEST(ParseGaussian, Rejections) {
    EXPECT_EQ(code_of("0.1"), Errc::parse_error); // not dyadic
    EXPECT_EQ(code_of("1/3.5"), Errc::parse_error);
    EXPECT_EQ(code_of("1/0"), Errc::parse_error);
    EXPECT_EQ(code_of("sqrt(2)"), Errc::parse_error);
    EXPECT_EQ(code_of("3i"), Errc::parse_error);
    EXPECT_EQ(code_of(""), Errc::parse_error);
    EXPECT_EQ(code_of("1e-3"), Errc::parse_error);
    EXPECT_EQ(code_of("1 +"), Errc::parse_error);
}
