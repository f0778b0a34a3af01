#include "qtchar/bank.hpp"

#include "oracles.hpp"

#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include <regex>

using namespace qtc;

namespace {

const char* kC2 = R"(algebra=C2
direction=forward
label=sample
locus=long node
source=kr:1:1:0:0
dims=5,4
1 ; Y[1,(0,0)]
1 ; Y[1,(4,2)]^-1 Y[2,(1,1)] Y[2,(3,1)]
0+1*a ; Y[2,(1,1)] Y[2,(5,3)]^-1
1 ; Y[1,(2,2)] Y[2,(3,3)]^-1 Y[2,(5,3)]^-1
1 ; Y[1,(6,4)]^-1
)";

int count_of(const std::string& s, const std::string& needle)
{
    int n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

void expect_parse_error(const std::string& text, const std::string& what)
{
    try {
        parse_fixture_text(text);
        ADD_FAILURE() << "no error for: " << what;
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find(what), std::string::npos) << e.what();
    }
}

}  // namespace

TEST(Fixture, ParsesAndChecks)
{
    auto f = parse_fixture_text(kC2);
    EXPECT_EQ(f.algebra, "C2");
    EXPECT_EQ(f.terms.size(), 5u);
    ASSERT_TRUE(f.dims.has_value());
    EXPECT_EQ(f.dims->first, 5);
    EXPECT_EQ(f.dims->second, 4);
    EXPECT_TRUE(check_fixture(f).pass);
}

TEST(Fixture, CorruptedTermFails)
{
    std::string text = kC2;
    text = std::regex_replace(text, std::regex(R"(Y\[1,\(6,4\)\]\^-1)"), "Y[1,(6,2)]^-1");
    auto f = parse_fixture_text(text);
    EXPECT_FALSE(check_fixture(f).pass);
}

TEST(Fixture, ParseErrors)
{
    expect_parse_error("", "missing algebra");
    expect_parse_error("algebra=C2\n", "no terms");
    expect_parse_error("algebra=C2\n1 ; Y[1,(0,0)]\nlabel=x\n", "header line after term lines");
    expect_parse_error("algebra=C2\n1 ; Y[1,(0,0)]\n1 ; Y[1,(0,0)]\n", "duplicate");
    expect_parse_error("algebra=C2\ndims=2,2\n1 ; Y[1,(0,0)]\n", "disagrees");
    expect_parse_error("algebra=C2\n1 Y[1,(0,0)]\n", "coeff ; monomial");
    expect_parse_error("algebra=C2\n1 ; Z[1,(0,0)]\n", "wrong variable letter");
    expect_parse_error("algebra=C2\n1 ; Y[1,(0,0)]^0\n", "zero exponent");
    expect_parse_error("algebra=C2\n0 ; Y[1,(0,0)]\n", "zero coefficient");
    expect_parse_error("algebra=C2\n1+1*x ; Y[1,(0,0)]\n", "idempotent");
    expect_parse_error("algebra=C2\nring=w\n1 ; Y[1,(0,0)]\n", "ring must be");
    expect_parse_error("algebra=C2\nring=q\n1 ; Y[1,(0,2)]\n", "t = 0");
    expect_parse_error("algebra=Q7\n1 ; Y[1,(0,0)]\n", "");
}

TEST(Fixture, ErrorsCarryLineNumbers)
{
    try {
        parse_fixture_text("algebra=C2\n1 ; Y[1,(0,0)]\nbogus\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 3);
    }
}

TEST(Fixture, TextRoundTrip)
{
    for (const char* t : {"C2", "G2", "C3"}) {
        for (Direction d : {Direction::Forward, Direction::Reverse}) {
            auto s = make_scheme(t, d);
            auto r = fundamental_char(s, 0, {0, 0});
            auto text = export_text(s, r, "round trip");
            auto f = parse_fixture_text(text);
            EXPECT_EQ(f.poly, r.poly) << t;
            EXPECT_EQ(oracle::parse_lines(text).size(), r.poly.terms().size()) << t;
        }
    }
}

TEST(Fixture, MonomialAndCoeffParsing)
{
    auto s = make_scheme("G2", Direction::Reverse);
    const auto& R = *s.ring();
    auto m = parse_monomial("z[1,(0,0)] z[2,(3,1)]^-2", R);
    EXPECT_EQ(m, Monomial::var(0, 0, 0) * Monomial::var(1, 3, 1, -2));
    EXPECT_TRUE(parse_monomial("1", R).is_one());
    EXPECT_EQ(parse_coeff("3-2*bL", R), Coeff(3, -2));
    EXPECT_EQ(render_monomial(m, R), "z[1,(0,0)] z[2,(3,1)]^-2");
}

TEST(Export, JsonSchema)
{
    auto s = make_scheme("C2", Direction::Forward);
    auto r = fundamental_char(s, 0, {0, 0});
    auto j = nlohmann::json::parse(export_json(s, r));
    EXPECT_EQ(j["algebra"], "C2");
    EXPECT_EQ(j["direction"], "forward");
    ASSERT_TRUE(j["terms"].is_array());
    EXPECT_EQ(j["terms"].size(), 5u);
    EXPECT_TRUE(j.contains("highest"));
    EXPECT_EQ(j["dims"]["q"].dump(), "5");
    EXPECT_EQ(j["dims"]["t"].dump(), "4");
}

TEST(Export, DotDiagrams)
{
    auto a1 = make_scheme("A1", Direction::Forward, 2);
    auto da = export_dot(a1, fundamental_char(a1, 0, {0, 0}));
    EXPECT_EQ(count_of(da, "->"), 1);
    EXPECT_NE(da.find("label=\"1, q^2 t^1\""), std::string::npos) << da;

    auto c2 = make_scheme("C2", Direction::Forward);
    auto r = fundamental_char(c2, 0, {0, 0});
    auto d = build_diagram(c2, r.poly);
    EXPECT_EQ(d.nodes.size(), 5u);
    EXPECT_EQ(d.edges.size(), 4u);
    for (const auto& e : d.edges)
        EXPECT_EQ(d.nodes[e.to].m, d.nodes[e.from].m * c2.root(e.root.node, {e.root.a, e.root.b}).inverse());

    auto trivial = CharResult{CharPoly::monomial(c2.ring(), Monomial()), Monomial(), Coeff(1), {}, Provenance::Fixture};
    EXPECT_EQ(count_of(export_dot(c2, trivial), "->"), 0);
}

TEST(Bank, ShippedFixturesPass)
{
    auto rep = verify_paper(QTCHAR_FIXTURE_DIR);
    EXPECT_GE(rep.checks.size(), 30u);
    EXPECT_TRUE(rep.ok()) << rep.render();
}

TEST(Bank, IotaFreePart)
{
    auto s = make_scheme("C2", Direction::Forward);
    auto r = fundamental_char(s, 0, {0, 0});
    auto p = iota_free_part(r.poly);
    EXPECT_EQ(p.dims(), (std::pair<Int, Int>{4, 4}));
    for (const auto& t : p.terms()) EXPECT_EQ(t.c, Coeff(1));
}
