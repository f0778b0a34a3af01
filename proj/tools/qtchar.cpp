#include "qtchar/bank.hpp"
#include "qtchar/props.hpp"

#include "CLI11.hpp"

#include <iostream>

#ifndef QTCHAR_DEFAULT_FIXTURES
#define QTCHAR_DEFAULT_FIXTURES "data/fixtures"
#endif

using namespace qtc;

namespace {

struct SchemeArgs {
    std::string algebra;
    int labels = 0;
    int lacing = 0;
    std::string direction = "forward";
    std::vector<std::string> kr;
    std::string monomial;

    Scheme scheme() const { return make_scheme(algebra, parse_direction(direction), labels, lacing); }

    Monomial input(const Scheme& s) const
    {
        if (!monomial.empty() && !kr.empty()) throw CLI::ValidationError("use either --kr or --monomial");
        if (!monomial.empty()) return parse_monomial(monomial, *s.ring());
        if (kr.empty()) throw CLI::ValidationError("an input is required: --kr i:k:q:t or --monomial <expr>");
        Monomial m;
        for (const auto& k : kr) m *= kr_interp_monomial(s, parse_kr(k));
        return m;
    }
};

void add_scheme_options(CLI::App* cmd, SchemeArgs& a, bool with_input = true)
{
    cmd->add_option("--algebra", a.algebra, "Type id: A1..A3, B2, B3, C2, C3, F4, G2")->required();
    cmd->add_option("--labels", a.labels, "Uniform label multiplier for type A");
    cmd->add_option("--lacing", a.lacing, "Ambient lacing number for type A");
    cmd->add_option("--direction", a.direction, "forward or reverse")
        ->check(CLI::IsMember({"forward", "reverse"}));
    if (with_input) {
        cmd->add_option("--kr", a.kr, "KR data i:k:qexp:texp (node 1-based); repeat for products");
        cmd->add_option("--monomial", a.monomial, "Highest monomial in rendered form");
    }
}

std::string render_dims(const DimsReport& d)
{
    return "dim_q=" + d.dim_q.str() + " dim_t=" + d.dim_t.str() + " iota_free=" + d.iota_free.str();
}

void print_dual(const Scheme& s, const DualPair& p)
{
    const auto& alg = s.algebra();
    std::cout << "source " << (s.forward() ? alg.untwisted_name : alg.twisted_name) << ", dual "
              << (s.forward() ? alg.twisted_name : alg.untwisted_name) << '\n';
    std::cout << render_dims(p.report.dims) << '\n';
    std::cout << "highest outside iota: " << (p.report.highest_outside_iota ? "yes" : "no") << '\n';
    std::cout << "source affine-minuscule: " << (p.report.source_minuscule ? "yes" : "no") << '\n';
    std::cout << "dual affine-minuscule: " << (p.report.dual_minuscule ? "yes" : "no") << '\n';
    std::cout << "dual highest monomial is a KR string: " << (p.report.dual_is_kr ? "yes" : "no") << '\n';
    for (const auto& n : p.report.notes) std::cout << "note: " << n << '\n';
    std::cout << "-- source\n" << render(p.source) << "-- dual\n" << render(p.dual);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Interpolating (q,t)-characters and Langlands dual pairs"};
    app.require_subcommand(1);
    EngineOptions eo;
    app.add_option("--grade-cap", eo.grade_cap, "Bound on peeling depth in partial-order comparisons");
    app.add_option("--term-cap", eo.term_cap, "Bound on worklist size");

    SchemeArgs a;
    auto* c_char = app.add_subcommand("char", "Interpolating character F(m)");
    add_scheme_options(c_char, a);

    std::string side;
    auto* c_spec = app.add_subcommand("specialize", "Specialization at t = 1 (q) or q = eps (t)");
    add_scheme_options(c_spec, a);
    c_spec->add_option("--side", side, "q or t")->required()->check(CLI::IsMember({"q", "t"}));

    auto* c_dims = app.add_subcommand("dims", "Dimensions of both specializations");
    add_scheme_options(c_dims, a);

    bool assume_simple = false;
    auto* c_dual = app.add_subcommand("dual", "Langlands dual pair of a KR module or a product of them");
    add_scheme_options(c_dual, a);
    c_dual->add_flag("--assume-simple", assume_simple, "Treat a product of several KR inputs as simple");

    int tk = 3;
    auto* c_ts = app.add_subcommand("tsystem", "T-system identities for the short node of G2");
    c_ts->add_option("--k", tk, "Largest string length (1..3)");

    std::string suite = "all";
    std::string fixtures = QTCHAR_DEFAULT_FIXTURES;
    std::string one_fixture;
    auto* c_verify = app.add_subcommand("verify", "Run the fixture bank and/or the property suites");
    c_verify->add_option("--suite", suite, "paper, props or all")->check(CLI::IsMember({"paper", "props", "all"}));
    c_verify->add_option("--fixtures", fixtures, "Fixture directory");
    c_verify->add_option("--fixture", one_fixture, "Check a single fixture file");

    std::string format = "text";
    auto* c_export = app.add_subcommand("export", "Export F(m) as JSON, DOT or fixture text");
    add_scheme_options(c_export, a);
    c_export->add_option("--format", format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*c_char || *c_export || *c_spec || *c_dims) {
            Scheme s = a.scheme();
            Monomial m = a.input(s);
            CharResult r = interp_char_F(s, m, Coeff(1), eo);
            if (*c_char) {
                std::cout << export_text(s, r);
            } else if (*c_export) {
                if (format == "json")
                    std::cout << export_json(s, r);
                else if (format == "dot")
                    std::cout << export_dot(s, r);
                else
                    std::cout << export_text(s, r);
            } else if (*c_spec) {
                CharResult v = r;
                v.poly = side == "q" ? s.specialize_q(r.poly) : s.specialize_t(r.poly);
                v.highest = side == "q" ? q_top(s, m) : t_top(s, m);
                std::cout << export_text(s, v);
            } else {
                std::cout << render_dims(dims_report(s, r.poly)) << '\n';
            }
            return 0;
        }
        if (*c_dual) {
            Scheme s = a.scheme();
            if (a.kr.empty()) throw CLI::ValidationError("dual needs at least one --kr");
            if (a.kr.size() > 1 && !assume_simple)
                throw CLI::ValidationError("a product of KR modules needs --assume-simple");
            std::vector<DualPair> pairs;
            for (const auto& k : a.kr) pairs.push_back(dual_pair_for_kr(s, parse_kr(k), eo));
            DualPair p = pairs.size() == 1 ? pairs.front() : tensor_dual(s, pairs);
            print_dual(s, p);
            return p.report.ok() || pairs.size() > 1 ? 0 : 1;
        }
        if (*c_ts) {
            Scheme s = make_scheme("G2", Direction::Forward);
            bool ok = true;
            for (const auto& id : t_system_check(s, tk, eo)) {
                std::cout << (id.pass() ? "PASS " : "FAIL ") << id.name << ": " << id.lhs << " vs " << id.rhs << '\n';
                ok = ok && id.pass();
            }
            return ok ? 0 : 1;
        }
        if (*c_verify) {
            SuiteReport rep;
            if (!one_fixture.empty())
                rep.checks.push_back(check_fixture(parse_fixture(one_fixture), eo));
            else
                rep = verify_suite(suite, fixtures, eo);
            std::cout << rep.render();
            return rep.ok() ? 0 : 1;
        }
    } catch (const ResourceError& e) {
        std::cerr << "resource cap reached: " << e.what() << '\n';
        return 3;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
