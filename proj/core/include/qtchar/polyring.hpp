#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qtc {

using Int = boost::multiprecision::cpp_int;

// Variable key. For interpolating rings (a,b) = (qExp,tExp); for the q-ring
// (qExp,0); for the twisted ring (eps class mod 2r, tExp).
struct Var {
    int node = 0;
    int a = 0;
    int b = 0;
    friend bool operator==(const Var& x, const Var& y) { return x.node == y.node && x.a == y.a && x.b == y.b; }
    friend bool operator<(const Var& x, const Var& y)
    {
        if (x.node != y.node) return x.node < y.node;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }
};

struct Factor {
    Var v;
    int e = 0;
    friend bool operator==(const Factor& x, const Factor& y) { return x.v == y.v && x.e == y.e; }
};

class Monomial {
public:
    Monomial() = default;
    static Monomial var(int node, int a, int b, int e = 1);
    static Monomial from_factors(std::vector<Factor> f);

    const std::vector<Factor>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int exponent(const Var& v) const;
    int exponent(int node, int a, int b) const { return exponent(Var{node, a, b}); }

    Monomial& operator*=(const Monomial& o);
    friend Monomial operator*(Monomial x, const Monomial& y) { return x *= y; }
    Monomial inverse() const;
    Monomial pow(int k) const;
    Monomial operator/(const Monomial& o) const { return *this * o.inverse(); }
    Monomial shifted(int da, int db) const;
    Monomial node_part(int node) const;
    Monomial without_node(int node) const;
    // Applies a key map; colliding keys are merged.
    Monomial mapped(const std::function<Var(const Var&)>& fn) const;

    std::size_t hash() const;
    friend bool operator==(const Monomial& x, const Monomial& y) { return x.f_ == y.f_; }
    friend bool operator!=(const Monomial& x, const Monomial& y) { return !(x == y); }
    // Canonical order: factor sequences compared lexicographically.
    friend bool operator<(const Monomial& x, const Monomial& y);

private:
    void normalize();
    std::vector<Factor> f_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Coeff {
    Int lam;
    Int mu;
    Coeff() = default;
    Coeff(Int l, Int m = 0) : lam(std::move(l)), mu(std::move(m)) {}
    static Coeff iota() { return Coeff(0, 1); }
    bool is_zero() const { return lam == 0 && mu == 0; }
    Int at_one() const { return lam + mu; }
    Coeff& operator+=(const Coeff& o);
    Coeff& operator-=(const Coeff& o);
    friend Coeff operator+(Coeff x, const Coeff& y) { return x += y; }
    friend Coeff operator-(Coeff x, const Coeff& y) { return x -= y; }
    friend Coeff operator*(const Coeff& x, const Coeff& y);
    Coeff operator-() const { return Coeff(-lam, -mu); }
    friend bool operator==(const Coeff& x, const Coeff& y) { return x.lam == y.lam && x.mu == y.mu; }
    friend bool operator!=(const Coeff& x, const Coeff& y) { return !(x == y); }
};

enum class RingKind { InterpForward, InterpReverse, SpecQ, SpecT };

const char* to_string(RingKind k);

// What a CharPoly needs to know about its ring: collapse rule of the iota
// component, rendering symbols, and the offset scale used by right-negativity.
struct RingContext {
    RingKind kind = RingKind::SpecQ;
    int lacing = 2;
    std::vector<int> period;   // reverse iota collapse: qExp mod period[node]
    std::vector<int> rdual;    // twisted offsets are tExp * lacing / rdual
    std::string iota_symbol;   // a, b, aL, bL
    // Interpolating rings: specialization that the (1-iota) component survives
    // under. Two (1-iota) lifts with the same image are equal in the quotient.
    std::function<Monomial(const Monomial&)> full_image;
    bool interpolating() const { return kind == RingKind::InterpForward || kind == RingKind::InterpReverse; }
    int eps_order() const { return 2 * lacing; }
    char var_letter() const;
    Monomial collapse(const Monomial& m) const;
    Var normalize_var(const Var& v) const;
};

using RingPtr = std::shared_ptr<const RingContext>;
RingPtr make_spec_ring(RingKind kind, int lacing, std::vector<int> rdual);

using TermMap = std::unordered_map<Monomial, Int, MonomialHash>;

struct Term {
    Monomial m;
    Coeff c;
};

class RingMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Element of an interpolating ring stored in the (1-iota)/iota split:
// `full` holds the (1-iota) component keyed by full monomials, `iota` holds the
// iota component keyed by collapsed monomials. Specialized rings use `full` only.
class CharPoly {
public:
    CharPoly() = default;
    explicit CharPoly(RingPtr ring) : ring_(std::move(ring)) {}
    static CharPoly monomial(RingPtr ring, const Monomial& m, const Coeff& c = Coeff(1));

    const RingPtr& ring() const { return ring_; }
    const TermMap& full() const { return full_; }
    const TermMap& iota() const { return iota_; }

    void add_term(const Monomial& m, const Coeff& c);
    void add_full(const Monomial& m, const Int& lam);
    // `m` may be uncollapsed; it is then remembered as the display host of its class.
    void add_iota(const Monomial& m, const Int& nu);

    bool is_zero() const { return full_.empty() && iota_.empty(); }
    CharPoly& operator+=(const CharPoly& o);
    CharPoly& operator-=(const CharPoly& o);
    friend CharPoly operator+(CharPoly x, const CharPoly& y) { return x += y; }
    friend CharPoly operator-(CharPoly x, const CharPoly& y) { return x -= y; }
    friend CharPoly operator*(const CharPoly& x, const CharPoly& y);
    CharPoly scaled(const Coeff& c) const;
    CharPoly shifted(int da, int db) const;
    // Equality in the quotient ring.
    friend bool operator==(const CharPoly& x, const CharPoly& y);
    friend bool operator!=(const CharPoly& x, const CharPoly& y) { return !(x == y); }
    // Equality of the stored split, lifts included.
    friend bool identical(const CharPoly& x, const CharPoly& y);

    // Recombined term view in canonical order (see DESIGN in README).
    std::vector<Term> terms() const;
    std::size_t term_count() const { return terms().size(); }
    // Coefficient sums: first = iota component, second = (1-iota) component.
    std::pair<Int, Int> dims() const;
    // Number of terms with mu = 0 != lam, counted with multiplicity lam.
    Int iota_free_count() const;
    // Coefficient of m when the whole iota mass of its class is carried by m.
    Coeff class_coeff(const Monomial& m) const;

private:
    void check_ring(const CharPoly& o) const;
    void note_host(const Monomial& key, const Monomial& m);
    const Monomial& host_of(const Monomial& key) const;
    RingPtr ring_;
    TermMap full_;
    TermMap iota_;
    // Presentation only: an uncollapsed monomial shown for each iota class.
    std::unordered_map<Monomial, Monomial, MonomialHash> host_;
};

CharPoly normal_form(const RingPtr& ring, const std::vector<Term>& terms);

std::string render_monomial(const Monomial& m, const RingContext& ring);
std::string render_coeff(const Coeff& c, const RingContext& ring);
std::string render_term(const Term& t, const RingContext& ring);
std::string render(const CharPoly& p);

// Right-negativity in a specialized ring (q-offsets, or normalized t-offsets).
bool is_right_negative(const Monomial& m, const RingContext& ring);

// Generic greedy peeling of m_hi / m_lo into root monomials. `top_root` maps a
// positive variable to the root whose top variable it is (or nullopt).
struct PeelStep {
    int node;
    int a;
    int b;
};
std::optional<std::vector<PeelStep>> peel_roots(
    Monomial ratio, const std::function<std::optional<std::pair<PeelStep, Monomial>>(const Factor&)>& top_root,
    int grade_cap);

double alpha_eval(double q, double t);
double beta_eval(double q, double t);

}  // namespace qtc
