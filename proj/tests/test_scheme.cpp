#include "qtchar/bank.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace qtc;

namespace {

struct Case {
    const char* algebra;
    int node;
};

}  // namespace

TEST(Scheme, UnitShapes)
{
    auto c2 = make_scheme("C2", Direction::Forward);
    EXPECT_EQ(c2.unit(0, {0, 0}), Monomial::var(0, 0, 0));
    // the spectral index is the centre of the string
    EXPECT_EQ(c2.unit(1, {1, 0}), Monomial::var(1, 0, 0) * Monomial::var(1, 2, 0));
    auto g2 = make_scheme("G2", Direction::Forward);
    EXPECT_EQ(g2.unit(1, {0, 0}).factors().size(), 3u);
    auto rg2 = make_scheme("G2", Direction::Reverse);
    EXPECT_EQ(rg2.unit(0, {0, 0}).factors().size(), 3u);
    EXPECT_EQ(rg2.unit(1, {0, 0}).factors().size(), 1u);
}

TEST(Scheme, RootsSpecializeToQRoots)
{
    for (const char* t : {"A2", "B3", "C2", "C3", "G2"}) {
        auto s = make_scheme(t, Direction::Forward);
        for (int i = 0; i < s.rank(); ++i)
            for (int q : {0, 3, 7})
                EXPECT_EQ(s.spec_iota(s.root(i, {q, 2})), s.q_root(i, q)) << t << " node " << i;
    }
}

TEST(Scheme, RootNodeExponentsFollowCartan)
{
    for (const char* t : {"B3", "C3", "G2"}) {
        auto s = make_scheme(t, Direction::Forward);
        auto c = oracle::cartan_of(t);
        for (int i = 0; i < s.rank(); ++i) {
            auto r = s.root(i, {5, 1});
            for (int j = 0; j < s.rank(); ++j) {
                int total = 0;
                Monomial part = r.node_part(j);
                for (const auto& f : part.factors()) total += f.e;
                EXPECT_EQ(total, c[j][i]) << t << " " << i << "," << j;
            }
        }
    }
}

TEST(Scheme, SpecializationAtTOneMatchesOracle)
{
    for (Case c : {Case{"C2", 0}, Case{"C2", 1}, Case{"G2", 0}, Case{"G2", 1}, Case{"C3", 2}, Case{"B3", 0}}) {
        auto s = make_scheme(c.algebra, Direction::Forward);
        auto r = fundamental_char(s, c.node, {0, 0});
        auto expect = oracle::forward_at_t1(oracle::parse_lines(render(r.poly)));
        auto got = oracle::forward_at_t1(oracle::parse_lines(render(s.specialize_q(r.poly))));
        EXPECT_EQ(got, expect) << c.algebra << " node " << c.node;
    }
}

TEST(Scheme, SpecializationAtEpsKeepsLambdaMass)
{
    for (Case c : {Case{"C2", 0}, Case{"C2", 1}, Case{"G2", 1}, Case{"C3", 0}}) {
        auto s = make_scheme(c.algebra, Direction::Forward);
        auto r = fundamental_char(s, c.node, {0, 0});
        long long lam = 0;
        for (const auto& l : oracle::parse_lines(render(r.poly))) lam += l.lam;
        long long spec = 0;
        for (const auto& l : oracle::parse_lines(render(s.specialize_t(r.poly)))) spec += l.lam + l.mu;
        EXPECT_EQ(spec, lam) << c.algebra;
    }
}

TEST(Scheme, ComparePartial)
{
    auto s = make_scheme("C2", Direction::Forward);
    Monomial m = Monomial::var(0, 0, 0);
    Monomial low = m / s.lowering_root(0, 0, 0);
    EXPECT_EQ(s.compare_partial(low, m).order, Order::Less);
    auto up = s.compare_partial(m, low);
    EXPECT_EQ(up.order, Order::Greater);
    ASSERT_EQ(up.witness.size(), 1u);
    EXPECT_EQ(up.witness[0].node, 0);
    EXPECT_EQ(s.compare_partial(m, m).order, Order::Equal);
    EXPECT_EQ(s.compare_partial(Monomial::var(0, 0, 0), Monomial::var(1, 0, 0)).order, Order::Incomparable);
}

TEST(Scheme, KernelGeneratorsLieInKernel)
{
    for (const char* t : {"C2", "G2", "B3"}) {
        for (Direction d : {Direction::Forward, Direction::Reverse}) {
            auto s = make_scheme(t, d);
            for (int i = 0; i < s.rank(); ++i) {
                auto g = s.kernel_generator(i, {0, 0}, GenKind::Unit);
                EXPECT_EQ(in_kernel_i(s, g, i).verdict, KernelVerdict::Yes) << t << " node " << i;
                if (s.algebra().unit_size(i) > 1) {
                    auto h = s.kernel_generator(i, {0, 0}, GenKind::Iota);
                    EXPECT_EQ(in_kernel_i(s, h, i).verdict, KernelVerdict::Yes) << t << " iota node " << i;
                } else {
                    EXPECT_THROW(s.kernel_generator(i, {0, 0}, GenKind::Iota), std::invalid_argument);
                }
            }
        }
    }
}

TEST(Scheme, Dominance)
{
    auto s = make_scheme("C2", Direction::Forward);
    EXPECT_TRUE(s.is_dominant(Monomial::var(0, 0, 0), Coeff(1)));
    EXPECT_FALSE(s.is_dominant(Monomial::var(0, 0, 0, -1), Coeff(1)));
    Monomial m = Monomial::var(1, 1, 1) * Monomial::var(1, 5, 3, -1);
    EXPECT_FALSE(s.is_dominant(m, Coeff::iota()));
    EXPECT_TRUE(s.is_i_dominant(m, Coeff::iota(), 0));
}
