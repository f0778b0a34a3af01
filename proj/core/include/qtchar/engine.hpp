#pragma once

#include "qtchar/scheme.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtc {

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotInKernel : public std::runtime_error {
public:
    NotInKernel(const std::string& what, Monomial witness) : std::runtime_error(what), witness(std::move(witness)) {}
    Monomial witness;
};

struct EngineOptions {
    int grade_cap = 64;
    std::size_t term_cap = 1000000;
    std::uint64_t shuffle_seed = 0;  // 0 keeps canonical order within a grade
};

// Positions of node-i variables form an sl2 string structure: a variable at
// p lowers to the inverse variable at p + step.
struct Sl2Frame {
    int modulus = 0;  // applies to the first coordinate; 0 for none
    int step_a = 0;
    int step_b = 0;
};

struct Pos {
    int a = 0;
    int b = 0;
    friend bool operator==(const Pos& x, const Pos& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator<(const Pos& x, const Pos& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; }
};

struct Sl2Term {
    Int coef;
    std::vector<int> n;  // lowering multiplicities per pattern position
};

// F_i(m) for an sl2 pattern {(position, exponent > 0)}, as a polynomial in the
// per-position lowerings. Terms are aligned with the order of `pattern`.
std::vector<Sl2Term> sl2_shape(const Sl2Frame& frame, const std::vector<std::pair<Pos, int>>& pattern);

// One of the rings in which the worklist algorithm runs. Keys are canonical
// monomials; each key carries a representative (a lift) used for lowering.
class Component {
public:
    virtual ~Component() = default;
    virtual int rank() const = 0;
    virtual Monomial key_of(const Monomial& repr) const = 0;
    virtual Sl2Frame frame(int i) const = 0;
    virtual std::vector<Monomial> lowerings(const Monomial& repr, int i, const std::vector<Pos>& positions) const = 0;
    virtual int lowering_grade(int i) const = 0;
    virtual long long height(const Monomial& key) const = 0;
    virtual const char* name() const = 0;
};

std::unique_ptr<Component> iota_component(const Scheme& s);
std::unique_ptr<Component> full_component(const Scheme& s);
std::unique_ptr<Component> plain_q_component(const Scheme& s);
std::unique_ptr<Component> plain_t_component(const Scheme& s);

struct EngineEntry {
    Monomial key;
    Monomial repr;
    Int s;
    std::vector<Monomial> alts;  // distinct representatives that reached the key, sorted
};

std::vector<EngineEntry> run_worklist(const Component& comp, const Monomial& repr0, const EngineOptions& opt = {});

// F_i(m) in a component: entries keyed like the component.
std::vector<EngineEntry> rank1_entries(const Component& comp, const Monomial& repr, int i);

enum class Provenance { Algorithm, Fixture, Product };

struct CharResult {
    CharPoly poly;
    Monomial highest;
    Coeff highest_coeff;
    std::vector<Term> dominant;
    Provenance provenance = Provenance::Algorithm;
};

CharPoly rank1_block(const Scheme& s, int i, const Monomial& m);
CharResult interp_char_F(const Scheme& s, const Monomial& m0, const Coeff& c = Coeff(1), const EngineOptions& opt = {});
CharResult fundamental_char(const Scheme& s, int i, SpectralIndex a, const EngineOptions& opt = {});
CharPoly standard_product_E(const Scheme& s, const std::vector<std::pair<int, SpectralIndex>>& units,
                            const EngineOptions& opt = {});

enum class PlainRing { Q, T };
CharResult plain_fm_char(const Scheme& s, const Monomial& m, PlainRing ring, const EngineOptions& opt = {});

std::vector<Term> dominant_terms(const Scheme& s, const CharPoly& p);

struct KernelStep {
    std::string component;  // "iota" or "full"
    Monomial monomial;      // representative monomial that was eliminated
    Monomial reduced;       // same, with trivial node-i data dropped
    Int coef;
};

enum class KernelVerdict { Yes, No, Undecided };

struct KernelTrace {
    KernelVerdict verdict = KernelVerdict::Undecided;
    std::vector<KernelStep> steps;
    Monomial witness;
};

KernelTrace in_kernel_i(const Scheme& s, const CharPoly& p, int i, std::size_t step_cap = 200000);
// Membership in the specialized kernels of a q-ring or twisted-ring polynomial.
KernelTrace in_plain_kernel_i(const Scheme& s, const CharPoly& p, int i, std::size_t step_cap = 200000);

struct Decomposition {
    std::vector<Term> entries;  // dominant monomial and coefficient, in canonical order
};

Decomposition decompose_K(const Scheme& s, const CharPoly& chi, const EngineOptions& opt = {});

// Dominant monomials of D(m0) reachable in the specialized views, by bounded search.
std::vector<Monomial> dominant_in_D(const Scheme& s, const Monomial& m0, int grade_cap = 8,
                                    std::size_t term_cap = 200000);

}  // namespace qtc
