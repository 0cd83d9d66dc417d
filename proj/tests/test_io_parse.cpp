#include <gtest/gtest.h>

#include "rk/io/parse.hpp"

using namespace rk;
using namespace rk::io;

TEST(Grammar, RationalFunctions) {
    auto f = to_rational_function(*parse_expression("(z^2-1)/z^3"));
    EXPECT_EQ(f.num(), (Polynomial<BigRational>{-1, 0, 1}));
    EXPECT_EQ(f.den().degree(), 3);
    auto g = to_rational_function(*parse_expression("1/2 z + 3/4"));
    EXPECT_EQ(g.num()[1] / g.den()[0], BigRational(1, 2));
    auto h = to_rational_function(*parse_expression("x^-2"));
    EXPECT_EQ(h.den().degree(), 2);
    auto d = to_rational_function(*parse_expression("0.25*z"));
    EXPECT_EQ(d.num()[1] / d.den()[0], BigRational(1, 4));
    EXPECT_THROW(to_rational_function(*parse_expression("z + i")), ParseError);
    EXPECT_THROW(to_rational_function(*parse_expression("x + y")), ParseError);
    EXPECT_THROW(to_rational_function(*parse_expression("sin(z)")), ParseError);
    EXPECT_THROW(to_rational_function(*parse_expression("z^(1/2)")), ParseError);
}

TEST(Grammar, GaussianCoefficients) {
    auto f = to_rational_function_gaussian(*parse_expression("1/(z - (2+3i))"));
    ASSERT_EQ(f.den().degree(), 1);
    const GaussianRational root = GaussianRational(0) - f.den()[0] / f.den()[1];
    EXPECT_EQ(root, GaussianRational(2, 3));
    EXPECT_EQ(parse_complex("2+3i"), Complex(2, 3));
    EXPECT_EQ(parse_complex("-1/2 - i"), Complex(-0.5, -1));
    EXPECT_EQ(parse_complex("1e-3"), Complex(0.001, 0));
    EXPECT_THROW(parse_complex("z"), ParseError);
}

TEST(Grammar, SparsePolynomials) {
    auto f = to_sparse_polynomial<2>(*parse_expression("y^2 - x^3"));
    EXPECT_EQ(f.coeff({0, 2}), 1);
    EXPECT_EQ(f.coeff({3, 0}), -1);
    EXPECT_EQ(f.terms().size(), 2u);
    auto g = to_sparse_polynomial<2>(*parse_expression("(x+y)^2/2"));
    EXPECT_EQ(g.coeff({1, 1}), 1);
    EXPECT_EQ(g.coeff({2, 0}), BigRational(1, 2));
    auto F = to_sparse_polynomial<3>(*parse_expression("y^2z - x^3 - xz^2"));
    EXPECT_TRUE(F.is_homogeneous());
    EXPECT_EQ(F.coeff({1, 0, 2}), -1);
    EXPECT_THROW(to_sparse_polynomial<2>(*parse_expression("z")), ParseError);
    EXPECT_THROW(to_sparse_polynomial<2>(*parse_expression("1/x")), ParseError);
    EXPECT_THROW(to_sparse_polynomial<2>(*parse_expression("i x")), ParseError);
}

TEST(Grammar, NumericBackend) {
    auto e = parse_expression("z^4 + 4z + 1");
    const Complex z(0.3, -0.2);
    auto d = eval_dual(*e, z);
    EXPECT_LT(std::abs(d.v - (std::pow(z, 4) + 4.0 * z + 1.0)), 1e-14);
    EXPECT_LT(std::abs(d.d - (4.0 * std::pow(z, 3) + 4.0)), 1e-14);
    auto t = parse_expression("exp(z) sin(2z) + sqrt(z+2)/cosh(z) - log(z+3) + tan(z) + sinh(pi z)");
    const double h = 1e-6;
    const Complex fd = (eval_dual(*t, z + h).v - eval_dual(*t, z - h).v) / (2 * h);
    EXPECT_LT(std::abs(eval_dual(*t, z).d - fd), 1e-7);
}

TEST(Grammar, Errors) {
    for (const char* bad : {"", "(z", "z +", "2..3", "w", "sin z", "z)", "3 $ 4"})
        EXPECT_THROW(parse_expression(bad), ParseError) << bad;
    EXPECT_EQ(variables_of(*parse_expression("x y + z")), "xyz");
}
