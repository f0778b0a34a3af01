#pragma once

#include "qtchar/liedata.hpp"
#include "qtchar/polyring.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtc {

class IdentificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SpectralIndex {
    int q = 0;
    int t = 0;
};

enum class GenKind { Unit, Iota };

enum class Order { Equal, Less, Greater, Incomparable };
const char* to_string(Order o);

struct Comparison {
    Order order = Order::Incomparable;
    std::vector<PeelStep> witness;  // roots whose inverses multiply the larger into the smaller
};

// An interpolation scheme: the algebra, its direction, the interpolating ring
// and the two specialized rings it maps onto.
class Scheme {
public:
    explicit Scheme(AlgebraSpec alg) : Scheme(std::move(alg), true) {}

    const AlgebraSpec& algebra() const { return alg_; }
    Direction direction() const { return alg_.direction; }
    bool forward() const { return alg_.direction == Direction::Forward; }
    int rank() const { return alg_.rank; }
    const RingPtr& ring() const { return ring_; }
    const RingPtr& qring() const { return qring_; }
    const RingPtr& tring() const { return tring_; }
    // Ring receiving the (1-iota) component and the iota component.
    const RingPtr& full_target() const { return forward() ? tring_ : qring_; }
    const RingPtr& iota_target() const { return forward() ? qring_ : tring_; }

    // W_{i,a} (forward) or X_{i,a} (reverse).
    Monomial unit(int i, SpectralIndex a) const;
    std::vector<int> unit_offsets(int i) const;
    // Interpolating root monomial with node-i pair at a (q^{r_i} t)^{+-1}.
    Monomial root(int i, SpectralIndex a) const;
    // Root whose lowest node-i variable is v, i.e. the lowering partner of v.
    Monomial lowering_root(int i, int q, int t) const { return root(i, {q + alg_.labels[i], t + 1}); }

    // Specialized-ring roots built from the closed formulas of the target rings.
    Monomial q_root(int i, int q) const;
    Monomial t_root(int i, int e, int t) const;

    // Component images: (1-iota) lifts and collapsed iota monomials.
    Monomial spec_full(const Monomial& lift) const;
    Monomial spec_iota(const Monomial& collapsed) const;

    CharPoly specialize_q(const CharPoly& p) const;
    CharPoly specialize_t(const CharPoly& p) const;

    CharPoly kernel_generator(int i, SpectralIndex a, GenKind kind) const;

    bool is_i_dominant(const Monomial& m, const Coeff& c, int i) const;
    bool is_dominant(const Monomial& m, const Coeff& c) const;

    Comparison compare_partial(const Monomial& m, const Monomial& other, int grade_cap = 64) const;

    // Height of a monomial in a specialized ring; lowering by a root lowers it by `height_unit`.
    long long q_height(const Monomial& m) const;
    long long t_height(const Monomial& m) const;

    std::string render_root_label(const PeelStep& s) const;

private:
    Scheme(AlgebraSpec alg, bool with_image);

    Monomial pi_t_forward(const Monomial& m) const;
    Monomial pi_q_reverse(const Monomial& m) const;
    Monomial pi_t_reverse(const Monomial& m) const;
    Monomial spread(int node, int n, int q, int t, int e) const;

    AlgebraSpec alg_;
    RingPtr ring_;
    RingPtr qring_;
    RingPtr tring_;
    std::vector<long long> qh_;
    std::vector<long long> th_;
};

}  // namespace qtc
