#include "qtchar/bank.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qtc;

TEST(KR, Parse)
{
    auto k = parse_kr("2:3:-1:4");
    EXPECT_EQ(k.node, 1);
    EXPECT_EQ(k.k, 3);
    EXPECT_EQ(k.a.q, -1);
    EXPECT_EQ(k.a.t, 4);
    for (const char* bad : {"", "1:1:0", "0:1:0:0", "1:0:0:0", "1:x:0:0", "1:1:0:0:0", "1:1:0.5:0"})
        EXPECT_THROW(parse_kr(bad), std::invalid_argument) << bad;
}

TEST(KR, HighestMonomials)
{
    auto s = make_scheme("C2", Direction::Forward);
    EXPECT_EQ(kr_interp_monomial(s, parse_kr("2:1:1:0")), Monomial::var(1, 0, 0) * Monomial::var(1, 2, 0));
    EXPECT_EQ(kr_interp_monomial(s, parse_kr("2:1:0:0")), Monomial::var(1, -1, 0) * Monomial::var(1, 1, 0));
    EXPECT_EQ(kr_interp_monomial(s, parse_kr("1:2:0:0")), Monomial::var(0, 0, 0) * Monomial::var(0, 4, 2));
    auto g = make_scheme("G2", Direction::Forward);
    EXPECT_EQ(kr_interp_monomial(g, parse_kr("2:1:2:0")),
              Monomial::var(1, 0, 0) * Monomial::var(1, 2, 0) * Monomial::var(1, 4, 0));
}

TEST(Duality, C2FundamentalPair)
{
    auto s = make_scheme("C2", Direction::Forward);
    auto p = dual_pair_for_kr(s, parse_kr("1:1:0:0"));
    EXPECT_TRUE(p.report.ok());
    EXPECT_EQ(p.report.dims.dim_q, 5);
    EXPECT_EQ(p.report.dims.dim_t, 4);
    EXPECT_EQ(p.source.ring()->kind, RingKind::SpecQ);
    EXPECT_EQ(p.dual.ring()->kind, RingKind::SpecT);

    auto o = ordinary_duality_check(s, p);
    EXPECT_TRUE(o.ok());
    EXPECT_EQ(o.surplus, (WeightChar{{Weight{0, 0}, 1}}));
}

TEST(Duality, TensorIsMultiplicative)
{
    auto s = make_scheme("C2", Direction::Forward);
    auto a = dual_pair_for_kr(s, parse_kr("1:1:0:0"));
    auto b = dual_pair_for_kr(s, parse_kr("2:1:11:7"));
    auto t = tensor_dual(s, {a, b});
    EXPECT_EQ(t.report.dims.dim_q, a.report.dims.dim_q * b.report.dims.dim_q);
    EXPECT_EQ(t.report.dims.dim_t, a.report.dims.dim_t * b.report.dims.dim_t);
    EXPECT_EQ(t.source, a.source * b.source);
    EXPECT_EQ(t.dual, a.dual * b.dual);
}

TEST(Duality, ReverseA2WithLabelsTwo)
{
    auto s = make_scheme("A2", Direction::Reverse, 2);
    auto p = dual_pair_for_kr(s, parse_kr("2:1:0:0"));
    EXPECT_EQ(p.report.dims.dim_q, 3);
    EXPECT_EQ(p.report.dims.dim_t, 9);
}

TEST(Duality, ReverseC2Node2)
{
    auto s = make_scheme("C2", Direction::Reverse);
    auto p = dual_pair_for_kr(s, parse_kr("2:1:0:0"));
    EXPECT_TRUE(p.report.ok());
    // the twisted module is the source side
    EXPECT_EQ(p.source.ring()->kind, RingKind::SpecT);
    EXPECT_EQ(p.report.dims.dim_t, 6);
    EXPECT_EQ(p.report.dims.dim_q, 4);
}

TEST(Duality, OrdinaryCharactersAreWeylInvariant)
{
    for (const char* t : {"C2", "C3", "G2", "B3"}) {
        auto s = make_scheme(t, Direction::Forward);
        for (int i = 0; i < s.rank(); ++i) {
            auto p = dual_pair_for_kr(s, {i, 1, {0, 0}});
            auto chi = ordinary_character(s, p.source);
            auto c = oracle::cartan_of(t);
            for (const auto& [w, m] : chi)
                for (const auto& o : oracle::weyl_orbit(c, w)) {
                    auto it = chi.find(o);
                    ASSERT_NE(it, chi.end()) << t;
                    EXPECT_EQ(it->second, m) << t;
                }
            EXPECT_THROW(ordinary_character(s, p.interp.poly), std::invalid_argument);
        }
    }
}

TEST(TSystem, G2ShortNode)
{
    auto s = make_scheme("G2", Direction::Forward);
    auto ids = t_system_check(s, 3);
    ASSERT_GE(ids.size(), 4u);
    for (const auto& id : ids) EXPECT_TRUE(id.pass()) << id.name << ": " << id.lhs << " vs " << id.rhs;
    EXPECT_THROW(t_system_check(s, 4), std::invalid_argument);
    EXPECT_THROW(t_system_check(make_scheme("C2", Direction::Forward), 1), std::invalid_argument);
}

TEST(KRString, Recognition)
{
    auto s = make_scheme("G2", Direction::Forward);
    const auto& Q = *s.qring();
    EXPECT_TRUE(is_kr_string(Monomial::var(1, 0, 0) * Monomial::var(1, 2, 0), Q, 2));
    EXPECT_FALSE(is_kr_string(Monomial::var(1, 0, 0) * Monomial::var(1, 4, 0), Q, 2));
    EXPECT_FALSE(is_kr_string(Monomial::var(1, 0, 0) * Monomial::var(0, 2, 0), Q, 2));
    EXPECT_FALSE(is_kr_string(Monomial::var(1, 0, 0, -1), Q, 2));
}
