#pragma once

#include "qtchar/langlands.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtc {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line) : std::runtime_error(format(what, line)), line(line) {}
    int line;

private:
    static std::string format(const std::string& what, int line)
    {
        return line > 0 ? "line " + std::to_string(line) + ": " + what : what;
    }
};

enum class FixtureRing { Interp, Q, T };
enum class FixturePart { All, IotaFree };

// Text fixture: `key=value` header lines, then `coeff ; monomial` term lines.
struct Fixture {
    std::string path;
    std::string algebra;
    int labels = 0;
    int lacing = 0;
    Direction direction = Direction::Forward;
    std::string label;
    std::string locus;
    FixtureRing ring = FixtureRing::Interp;
    FixturePart part = FixturePart::All;
    std::string source;  // "kr:i:k:q:t", "monomial:<expr>" or empty
    std::optional<std::pair<Int, Int>> dims;        // of the listed terms
    std::optional<std::pair<Int, Int>> total_dims;  // of the computed character
    std::map<std::string, std::string> extra;
    std::vector<Term> terms;
    CharPoly poly;

    Scheme scheme() const;
};

Scheme make_scheme(const std::string& algebra, Direction dir, int labels = 0, int lacing = 0);

Fixture parse_fixture_text(const std::string& text, const std::string& path = "<string>");
Fixture parse_fixture(const std::filesystem::path& path);
std::vector<Fixture> load_fixtures(const std::filesystem::path& dir);

// Monomial in rendered form ("1" or `L[i,(a,b)]^e ...` with L the ring letter).
Monomial parse_monomial(const std::string& text, const RingContext& ring);
Coeff parse_coeff(const std::string& text, const RingContext& ring);

// Character that a fixture describes, in the fixture's ring and part.
CharPoly fixture_view(const Scheme& s, const Fixture& f, const CharPoly& interp);
// (1-iota) lifts as a multiset, the iota-free part of an interpolating character.
CharPoly iota_free_part(const CharPoly& p);

std::string export_text(const Scheme& s, const CharResult& c, const std::string& label = "");
std::string export_json(const Scheme& s, const CharResult& c);

struct DiagramEdge {
    std::size_t from;
    std::size_t to;
    PeelStep root;
};

struct Diagram {
    std::vector<Term> nodes;
    std::vector<DiagramEdge> edges;
};

Diagram build_diagram(const Scheme& s, const CharPoly& p);
std::string export_dot(const Scheme& s, const CharResult& c);

struct CheckResult {
    std::string name;
    std::string locus;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::vector<CheckResult> checks;
    bool ok() const;
    std::string render() const;
};

CheckResult check_fixture(const Fixture& f, const EngineOptions& opt = {});
SuiteReport verify_paper(const std::filesystem::path& fixture_dir, const EngineOptions& opt = {});
SuiteReport verify_props(const EngineOptions& opt = {});
SuiteReport verify_suite(const std::string& name, const std::filesystem::path& fixture_dir,
                         const EngineOptions& opt = {});

}  // namespace qtc
