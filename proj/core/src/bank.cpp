#include "qtchar/bank.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace qtc {

namespace {

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Int parse_int(const std::string& s, int line)
{
    static const std::regex re("-?[0-9]+");
    if (!std::regex_match(s, re)) throw ParseError("bad integer '" + s + "'", line);
    return Int(s);
}

std::pair<Int, Int> parse_dims(const std::string& v, int line)
{
    auto comma = v.find(',');
    if (comma == std::string::npos) {
        Int d = parse_int(trim(v), line);
        return {d, d};
    }
    return {parse_int(trim(v.substr(0, comma)), line), parse_int(trim(v.substr(comma + 1)), line)};
}

RingPtr fixture_ring(const Scheme& s, FixtureRing r)
{
    switch (r) {
    case FixtureRing::Q: return s.qring();
    case FixtureRing::T: return s.tring();
    default: return s.ring();
    }
}

std::pair<Int, Int> listed_dims(const Scheme& s, const Fixture& f)
{
    if (f.ring != FixtureRing::Interp || f.part == FixturePart::IotaFree) {
        Int n = f.poly.dims().second;
        return {n, n};
    }
    auto d = dims_report(s, f.poly);
    return {d.dim_q, d.dim_t};
}

std::string show_dims(const std::pair<Int, Int>& d)
{
    std::ostringstream os;
    os << d.first << ',' << d.second;
    return os.str();
}

nlohmann::json int_json(const Int& v)
{
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

nlohmann::json term_json(const Term& t)
{
    nlohmann::json exps = nlohmann::json::array();
    for (const auto& f : t.m.factors())
        exps.push_back({{"node", f.v.node + 1}, {"q", f.v.a}, {"t", f.v.b}, {"e", f.e}});
    return {{"lam", int_json(t.c.lam)}, {"mu", int_json(t.c.mu)}, {"exps", exps}};
}

std::vector<std::string> rendered_lines(const CharPoly& p)
{
    std::vector<std::string> out;
    for (const auto& t : p.terms()) out.push_back(render_term(t, *p.ring()));
    return out;
}

std::string line_diff(std::vector<std::string> want, std::vector<std::string> got)
{
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    std::vector<std::string> missing, extra;
    std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(missing));
    std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(extra));
    std::ostringstream os;
    for (const auto& l : missing) os << "\n  - " << l;
    for (const auto& l : extra) os << "\n  + " << l;
    return os.str();
}

}  // namespace

Scheme make_scheme(const std::string& algebra, Direction dir, int labels, int lacing)
{
    BuildOptions o;
    o.label_multiplier = labels;
    o.lacing = lacing;
    o.direction = dir;
    return Scheme(build_algebra(algebra, o));
}

Scheme Fixture::scheme() const { return make_scheme(algebra, direction, labels, lacing); }

Monomial parse_monomial(const std::string& text, const RingContext& ring)
{
    std::string s = trim(text);
    if (s == "1") return Monomial();
    if (s.empty()) throw ParseError("empty monomial", 0);
    static const std::regex re(R"(([YZz])\[([0-9]+),\((-?[0-9]+),(-?[0-9]+)\)\](\^(-?[0-9]+))?)");
    std::istringstream is(s);
    std::string tok;
    std::vector<Factor> fs;
    std::set<std::tuple<int, int, int>> seen;
    while (is >> tok) {
        std::smatch m;
        if (!std::regex_match(tok, m, re)) throw ParseError("malformed factor '" + tok + "'", 0);
        if (m[1].str()[0] != ring.var_letter())
            throw ParseError("factor '" + tok + "' uses the wrong variable letter for this ring", 0);
        int node = std::stoi(m[2]) - 1;
        int a = std::stoi(m[3]);
        int b = std::stoi(m[4]);
        int e = m[6].matched ? std::stoi(m[6]) : 1;
        if (node < 0) throw ParseError("node numbers start at 1", 0);
        if (e == 0) throw ParseError("zero exponent in '" + tok + "'", 0);
        if (ring.kind == RingKind::SpecT && (a < 0 || a >= ring.eps_order()))
            throw ParseError("eps class out of range in '" + tok + "'", 0);
        if (ring.kind == RingKind::SpecQ && b != 0) throw ParseError("q-ring variables carry t = 0", 0);
        if (!seen.insert({node, a, b}).second) throw ParseError("repeated variable in '" + s + "'", 0);
        fs.push_back({Var{node, a, b}, e});
    }
    return Monomial::from_factors(std::move(fs));
}

Coeff parse_coeff(const std::string& text, const RingContext& ring)
{
    static const std::regex re(R"((-?[0-9]+)(([+-])([0-9]+)\*([A-Za-z]+))?)");
    std::smatch m;
    std::string s = trim(text);
    if (!std::regex_match(s, m, re)) throw ParseError("malformed coefficient '" + s + "'", 0);
    Coeff c(Int(m[1].str()));
    if (m[2].matched) {
        if (!ring.interpolating() || m[5].str() != ring.iota_symbol)
            throw ParseError("unknown idempotent symbol '" + m[5].str() + "'", 0);
        Int mu(m[4].str());
        c.mu = m[3].str() == "-" ? Int(-mu) : mu;
    }
    return c;
}

Fixture parse_fixture_text(const std::string& text, const std::string& path)
{
    Fixture f;
    f.path = path;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    bool in_terms = false;
    std::vector<std::pair<int, std::string>> term_lines;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto semi = line.find(';');
        auto eq = line.find('=');
        if (semi == std::string::npos && eq != std::string::npos) {
            if (in_terms) throw ParseError("header line after term lines", lineno);
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (key == "algebra") f.algebra = val;
            else if (key == "labels") f.labels = static_cast<int>(parse_int(val, lineno));
            else if (key == "lacing") f.lacing = static_cast<int>(parse_int(val, lineno));
            else if (key == "direction") {
                try {
                    f.direction = parse_direction(val);
                } catch (const std::exception& e) {
                    throw ParseError(e.what(), lineno);
                }
            } else if (key == "label") f.label = val;
            else if (key == "locus") f.locus = val;
            else if (key == "ring") {
                if (val == "interp") f.ring = FixtureRing::Interp;
                else if (val == "q") f.ring = FixtureRing::Q;
                else if (val == "t") f.ring = FixtureRing::T;
                else throw ParseError("ring must be interp, q or t", lineno);
            } else if (key == "part") {
                if (val == "all") f.part = FixturePart::All;
                else if (val == "iota-free") f.part = FixturePart::IotaFree;
                else throw ParseError("part must be all or iota-free", lineno);
            } else if (key == "source") f.source = val;
            else if (key == "dims") f.dims = parse_dims(val, lineno);
            else if (key == "total_dims") f.total_dims = parse_dims(val, lineno);
            else f.extra[key] = val;
            continue;
        }
        if (semi == std::string::npos) throw ParseError("expected `coeff ; monomial`", lineno);
        in_terms = true;
        term_lines.push_back({lineno, line});
    }
    if (f.algebra.empty()) throw ParseError("missing algebra= header", 0);
    if (term_lines.empty()) throw ParseError("fixture has no terms", 0);
    Scheme s = [&] {
        try {
            return f.scheme();
        } catch (const std::exception& e) {
            throw ParseError(e.what(), 0);
        }
    }();
    RingPtr ring = fixture_ring(s, f.ring);
    if (f.part == FixturePart::IotaFree && f.ring != FixtureRing::Interp)
        throw ParseError("part=iota-free applies to interpolating fixtures", 0);
    f.poly = CharPoly(ring);
    std::set<Monomial> seen;
    for (const auto& [ln, line] : term_lines) {
        auto semi = line.find(';');
        Term t;
        try {
            t.c = parse_coeff(line.substr(0, semi), *ring);
            t.m = parse_monomial(line.substr(semi + 1), *ring);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), ln);
        }
        if (t.c.is_zero()) throw ParseError("zero coefficient", ln);
        if (f.part == FixturePart::IotaFree && t.c.mu != 0)
            throw ParseError("iota-free fixtures list plain integer coefficients", ln);
        if (ring->kind == RingKind::SpecT) t.m = ring->collapse(t.m);
        if (!seen.insert(t.m).second) throw ParseError("duplicate monomial line", ln);
        f.terms.push_back(t);
        f.poly.add_term(t.m, t.c);
    }
    if (f.dims) {
        auto got = listed_dims(s, f);
        if (got != *f.dims)
            throw ParseError("dims header " + show_dims(*f.dims) + " disagrees with the terms (" + show_dims(got) + ")",
                             0);
    }
    return f;
}

Fixture parse_fixture(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_fixture_text(ss.str(), path.string());
    } catch (const ParseError& e) {
        throw ParseError(path.filename().string() + ": " + e.what(), 0);
    }
}

std::vector<Fixture> load_fixtures(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".fix") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<Fixture> out;
    for (const auto& p : files) out.push_back(parse_fixture(p));
    return out;
}

CharPoly iota_free_part(const CharPoly& p)
{
    CharPoly out(p.ring());
    for (const auto& [m, lam] : p.full()) out.add_term(m, Coeff(lam));
    return out;
}

CharPoly fixture_view(const Scheme& s, const Fixture& f, const CharPoly& interp)
{
    switch (f.ring) {
    case FixtureRing::Q: return s.specialize_q(interp);
    case FixtureRing::T: return s.specialize_t(interp);
    default: return f.part == FixturePart::IotaFree ? iota_free_part(interp) : interp;
    }
}

std::string export_text(const Scheme& s, const CharResult& c, const std::string& label)
{
    std::ostringstream os;
    const auto& alg = s.algebra();
    os << "algebra=" << alg.type << '\n';
    if (alg.type[0] == 'A') os << "labels=" << alg.labels[0] << "\nlacing=" << alg.lacing << '\n';
    os << "direction=" << to_string(s.direction()) << '\n';
    if (!label.empty()) os << "label=" << label << '\n';
    const RingKind k = c.poly.ring()->kind;
    os << "ring=" << (k == RingKind::SpecQ ? "q" : k == RingKind::SpecT ? "t" : "interp") << '\n';
    if (c.poly.ring()->interpolating()) {
        auto d = dims_report(s, c.poly);
        os << "dims=" << d.dim_q << ',' << d.dim_t << '\n';
    } else {
        os << "dims=" << c.poly.dims().second << '\n';
    }
    os << render(c.poly);
    return os.str();
}

std::string export_json(const Scheme& s, const CharResult& c)
{
    nlohmann::json j;
    j["algebra"] = s.algebra().type;
    j["direction"] = to_string(s.direction());
    j["highest"] = term_json({c.highest, c.highest_coeff});
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : c.poly.terms()) terms.push_back(term_json(t));
    j["terms"] = terms;
    auto d = dims_report(s, c.poly);
    j["dims"] = {{"q", int_json(d.dim_q)}, {"t", int_json(d.dim_t)}};
    return j.dump(2) + "\n";
}

Diagram build_diagram(const Scheme& s, const CharPoly& p)
{
    Diagram d;
    d.nodes = p.terms();
    if (!p.ring()->interpolating()) return d;
    for (std::size_t x = 0; x < d.nodes.size(); ++x)
        for (std::size_t y = 0; y < d.nodes.size(); ++y) {
            if (x == y) continue;
            const Monomial& hi = d.nodes[x].m;
            const Monomial& lo = d.nodes[y].m;
            Comparison c = s.compare_partial(lo, hi, 1);
            if (c.order != Order::Less || c.witness.size() != 1) continue;
            const PeelStep& st = c.witness.front();
            if (lo != hi * s.root(st.node, {st.a, st.b}).inverse())
                throw ConsistencyError("diagram edge does not reproduce its root monomial");
            d.edges.push_back({x, y, st});
        }
    return d;
}

std::string export_dot(const Scheme& s, const CharResult& c)
{
    Diagram d = build_diagram(s, c.poly);
    const RingContext& ring = *c.poly.ring();
    std::ostringstream os;
    os << "digraph character {\n  node [shape=box];\n";
    for (std::size_t k = 0; k < d.nodes.size(); ++k)
        os << "  n" << k << " [label=\"" << render_term(d.nodes[k], ring) << "\"];\n";
    for (const auto& e : d.edges)
        os << "  n" << e.from << " -> n" << e.to << " [label=\"" << s.render_root_label(e.root) << "\"];\n";
    os << "}\n";
    return os.str();
}

bool SuiteReport::ok() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string SuiteReport::render() const
{
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.locus.empty()) os << " [" << c.locus << "]";
        if (!c.detail.empty()) os << ": " << c.detail;
        os << '\n';
    }
    std::size_t bad = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; });
    os << checks.size() - bad << "/" << checks.size() << " checks passed\n";
    return os.str();
}

CheckResult check_fixture(const Fixture& f, const EngineOptions& opt)
{
    CheckResult r;
    r.name = f.label.empty() ? f.path : f.label;
    r.locus = f.locus;
    if (f.source.empty()) {
        r.pass = true;
        r.detail = "ingested " + std::to_string(f.terms.size()) + " terms";
        return r;
    }
    Scheme s = f.scheme();
    Monomial m0;
    if (f.source.rfind("kr:", 0) == 0) {
        m0 = kr_interp_monomial(s, parse_kr(f.source.substr(3)));
    } else if (f.source.rfind("monomial:", 0) == 0) {
        m0 = parse_monomial(f.source.substr(9), *s.ring());
    } else {
        r.detail = "unknown source '" + f.source + "'";
        return r;
    }
    CharResult c = interp_char_F(s, m0, Coeff(1), opt);
    CharPoly view = fixture_view(s, f, c.poly);
    std::vector<std::string> want;
    for (const auto& t : f.terms) want.push_back(render_term(t, *f.poly.ring()));
    std::vector<std::string> got = rendered_lines(view);
    bool ring_equal = view == f.poly;
    bool exact = true;
    auto match = f.extra.find("match");
    bool need_exact = match == f.extra.end() || match->second != "ring";
    if (need_exact) {
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        exact = want == got;
    }
    r.pass = ring_equal && exact;
    std::ostringstream os;
    os << view.terms().size() << " terms";
    if (!r.pass) os << (ring_equal ? "; presentation differs" : "; characters differ") << line_diff(want, got);
    if (f.total_dims) {
        auto d = dims_report(s, c.poly);
        std::pair<Int, Int> got_d{d.dim_q, d.dim_t};
        os << "; dims " << show_dims(got_d);
        if (got_d != *f.total_dims) {
            r.pass = false;
            os << " (expected " << show_dims(*f.total_dims) << ")";
        }
    }
    r.detail = os.str();
    return r;
}

SuiteReport verify_paper(const std::filesystem::path& fixture_dir, const EngineOptions& opt)
{
    SuiteReport rep;
    for (const auto& f : load_fixtures(fixture_dir)) {
        try {
            rep.checks.push_back(check_fixture(f, opt));
        } catch (const std::exception& e) {
            rep.checks.push_back({f.label, f.locus, false, e.what()});
        }
    }
    return rep;
}

SuiteReport verify_suite(const std::string& name, const std::filesystem::path& fixture_dir, const EngineOptions& opt)
{
    if (name == "paper") return verify_paper(fixture_dir, opt);
    if (name == "props") return verify_props(opt);
    if (name == "all") {
        SuiteReport a = verify_paper(fixture_dir, opt);
        SuiteReport b = verify_props(opt);
        a.checks.insert(a.checks.end(), b.checks.begin(), b.checks.end());
        return a;
    }
    throw std::invalid_argument("unknown suite '" + name + "' (paper, props, all)");
}

}  // namespace qtc
