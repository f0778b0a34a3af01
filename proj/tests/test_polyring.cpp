#include "qtchar/bank.hpp"

#include <gtest/gtest.h>

using namespace qtc;

namespace {

Scheme c2() { return make_scheme("C2", Direction::Forward); }

}  // namespace

TEST(Monomial, ArithmeticAndCanonicalForm)
{
    Monomial a = Monomial::var(0, 0, 0);
    Monomial b = Monomial::var(1, 1, 1, 2);
    Monomial ab = a * b;
    EXPECT_EQ(ab.exponent(0, 0, 0), 1);
    EXPECT_EQ(ab.exponent(1, 1, 1), 2);
    EXPECT_EQ(ab, b * a);
    EXPECT_TRUE((ab / ab).is_one());
    EXPECT_EQ(ab.inverse().exponent(1, 1, 1), -2);
    EXPECT_EQ(b.pow(3).exponent(1, 1, 1), 6);
    EXPECT_EQ(a.shifted(4, 2), Monomial::var(0, 4, 2));
    EXPECT_EQ(ab.node_part(1), b);
    EXPECT_EQ(ab.without_node(1), a);
    EXPECT_TRUE(Monomial::var(0, 3, 3, 0).is_one());
    EXPECT_EQ(Monomial::from_factors({{{0, 2, 0}, 1}, {{0, 2, 0}, -1}}), Monomial());
}

TEST(Coeff, IdempotentArithmetic)
{
    Coeff i = Coeff::iota();
    EXPECT_EQ(i * i, i);
    EXPECT_TRUE(((Coeff(1) - i) * i).is_zero());
    Coeff x(3, -2), y(-1, 5);
    // (3 - 2i)(-1 + 5i) = -3 + (15 + 2 - 10) i
    EXPECT_EQ(x * y, Coeff(-3, 7));
    EXPECT_EQ(Coeff(2, 3).at_one(), 5);
    EXPECT_EQ(-(x + y), Coeff(-2, -3));
}

TEST(CharPoly, QuotientIdentities)
{
    Scheme s = c2();
    const auto& R = s.ring();
    // iota Y_{i,a} = iota Y_{i,at}
    auto p = CharPoly::monomial(R, Monomial::var(0, 0, 0), Coeff::iota());
    auto q = CharPoly::monomial(R, Monomial::var(0, 0, 1), Coeff::iota());
    EXPECT_EQ(p, q);
    EXPECT_TRUE(identical(p, p));
    // (1 - iota) Y_{i,aq^4} = (1 - iota) Y_{i,a}, node 1 being a single-variable unit
    auto u = CharPoly::monomial(R, Monomial::var(0, 4, 0), Coeff(1, -1));
    auto v = CharPoly::monomial(R, Monomial::var(0, 0, 0), Coeff(1, -1));
    EXPECT_EQ(u, v);
    EXPECT_FALSE(identical(u, v));
    // the plain monomials are different
    EXPECT_NE(CharPoly::monomial(R, Monomial::var(0, 4, 0)), CharPoly::monomial(R, Monomial::var(0, 0, 0)));
    // iota (iota - 1) M = 0
    auto w = CharPoly::monomial(R, Monomial::var(1, 1, 1), Coeff::iota() * (Coeff::iota() - Coeff(1)));
    EXPECT_TRUE(w.is_zero());
}

TEST(CharPoly, AdditionProductAndDims)
{
    Scheme s = c2();
    const auto& R = s.ring();
    auto y = CharPoly::monomial(R, Monomial::var(0, 0, 0));
    auto z = CharPoly::monomial(R, Monomial::var(1, 1, 1), Coeff::iota());
    auto sum = y + z;
    EXPECT_EQ(sum.terms().size(), 2u);
    EXPECT_EQ(sum.dims(), (std::pair<Int, Int>{2, 1}));
    EXPECT_TRUE((sum - sum).is_zero());
    auto prod = sum * sum;
    // (y + i z)^2 = y^2 + 2 i y z + i z^2
    EXPECT_EQ(prod.dims(), (std::pair<Int, Int>{4, 1}));
    EXPECT_EQ(sum.scaled(Coeff(2)).dims(), (std::pair<Int, Int>{4, 2}));
    EXPECT_EQ(sum.iota_free_count(), 1);
}

TEST(CharPoly, RingMismatch)
{
    Scheme s = c2();
    auto a = CharPoly::monomial(s.ring(), Monomial::var(0, 0, 0));
    auto b = CharPoly::monomial(s.qring(), Monomial::var(0, 0, 0));
    EXPECT_THROW(a + b, RingMismatch);
}

TEST(CharPoly, NormalFormMergesEqualClasses)
{
    Scheme s = c2();
    std::vector<Term> terms{{Monomial::var(1, 1, 1), Coeff::iota()},
                            {Monomial::var(1, 1, 3), Coeff::iota()},
                            {Monomial::var(0, 0, 0), Coeff(1)}};
    auto p = normal_form(s.ring(), terms);
    EXPECT_EQ(p.dims(), (std::pair<Int, Int>{3, 1}));
    EXPECT_EQ(p.class_coeff(Monomial::var(1, 1, 1)), Coeff(0, 2));
}

TEST(Render, Formats)
{
    Scheme s = c2();
    Monomial m = Monomial::var(0, 4, 2, -1) * Monomial::var(1, 1, 1);
    EXPECT_EQ(render_monomial(m, *s.ring()), "Y[1,(4,2)]^-1 Y[2,(1,1)]");
    EXPECT_EQ(render_monomial(Monomial(), *s.ring()), "1");
    EXPECT_EQ(render_coeff(Coeff(1, 1), *s.ring()), "1+1*a");
    EXPECT_EQ(render_coeff(Coeff(0, -2), *s.ring()), "0-2*a");
    Scheme g = make_scheme("G2", Direction::Reverse);
    EXPECT_EQ(render_coeff(Coeff(0, 1), *g.ring()), "0+1*bL");
    EXPECT_EQ(render_monomial(Monomial::var(0, 0, 0), *g.ring()), "z[1,(0,0)]");
}

TEST(RightNegative, QRing)
{
    Scheme s = c2();
    const auto& Q = *s.qring();
    EXPECT_TRUE(is_right_negative(Monomial::var(0, 4, 0, -1) * Monomial::var(1, 1, 0), Q));
    EXPECT_FALSE(is_right_negative(Monomial::var(0, 0, 0), Q));
    EXPECT_FALSE(is_right_negative(Monomial::var(0, 4, 0) * Monomial::var(1, 1, 0, -1), Q));
}

TEST(Interpolation, FunctionsAtTEqualsOne)
{
    for (double q : {0.3, 0.7, 1.9, 2.5}) {
        EXPECT_NEAR(alpha_eval(q, 1.0), 1.0, 1e-12);
        EXPECT_NEAR(beta_eval(q, 1.0), 1.0, 1e-9);
    }
}
