#include "qtchar/polyring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qtc {

Monomial Monomial::var(int node, int a, int b, int e)
{
    Monomial m;
    if (e != 0) m.f_.push_back({Var{node, a, b}, e});
    return m;
}

Monomial Monomial::from_factors(std::vector<Factor> f)
{
    Monomial m;
    m.f_ = std::move(f);
    m.normalize();
    return m;
}

void Monomial::normalize()
{
    std::sort(f_.begin(), f_.end(), [](const Factor& x, const Factor& y) { return x.v < y.v; });
    std::vector<Factor> out;
    out.reserve(f_.size());
    for (const auto& x : f_) {
        if (!out.empty() && out.back().v == x.v)
            out.back().e += x.e;
        else
            out.push_back(x);
    }
    f_.clear();
    for (const auto& x : out)
        if (x.e != 0) f_.push_back(x);
}

int Monomial::exponent(const Var& v) const
{
    auto it = std::lower_bound(f_.begin(), f_.end(), v, [](const Factor& x, const Var& y) { return x.v < y; });
    return (it != f_.end() && it->v == v) ? it->e : 0;
}

Monomial& Monomial::operator*=(const Monomial& o)
{
    if (o.f_.empty()) return *this;
    if (f_.empty()) {
        f_ = o.f_;
        return *this;
    }
    std::vector<Factor> out;
    out.reserve(f_.size() + o.f_.size());
    auto i = f_.begin();
    auto j = o.f_.begin();
    while (i != f_.end() || j != o.f_.end()) {
        if (j == o.f_.end() || (i != f_.end() && i->v < j->v)) {
            out.push_back(*i++);
        } else if (i == f_.end() || j->v < i->v) {
            out.push_back(*j++);
        } else {
            int e = i->e + j->e;
            if (e != 0) out.push_back({i->v, e});
            ++i;
            ++j;
        }
    }
    f_ = std::move(out);
    return *this;
}

Monomial Monomial::inverse() const
{
    Monomial m = *this;
    for (auto& x : m.f_) x.e = -x.e;
    return m;
}

Monomial Monomial::pow(int k) const
{
    if (k == 0) return Monomial();
    Monomial m = *this;
    for (auto& x : m.f_) x.e *= k;
    return m;
}

Monomial Monomial::shifted(int da, int db) const
{
    Monomial m = *this;
    for (auto& x : m.f_) {
        x.v.a += da;
        x.v.b += db;
    }
    return m;
}

Monomial Monomial::node_part(int node) const
{
    Monomial m;
    for (const auto& x : f_)
        if (x.v.node == node) m.f_.push_back(x);
    return m;
}

Monomial Monomial::without_node(int node) const
{
    Monomial m;
    for (const auto& x : f_)
        if (x.v.node != node) m.f_.push_back(x);
    return m;
}

Monomial Monomial::mapped(const std::function<Var(const Var&)>& fn) const
{
    Monomial m;
    m.f_.reserve(f_.size());
    for (const auto& x : f_) m.f_.push_back({fn(x.v), x.e});
    m.normalize();
    return m;
}

std::size_t Monomial::hash() const
{
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& x : f_) {
        std::uint64_t k = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x.v.node)) << 48) ^
                          (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x.v.a)) << 24) ^
                          static_cast<std::uint64_t>(static_cast<std::uint32_t>(x.v.b)) ^
                          (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x.e)) << 56);
        h ^= k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
}

bool operator<(const Monomial& x, const Monomial& y)
{
    const auto& a = x.f_;
    const auto& b = y.f_;
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (!(a[k].v == b[k].v)) return a[k].v < b[k].v;
        if (a[k].e != b[k].e) return a[k].e < b[k].e;
    }
    return a.size() < b.size();
}

Coeff& Coeff::operator+=(const Coeff& o)
{
    lam += o.lam;
    mu += o.mu;
    return *this;
}

Coeff& Coeff::operator-=(const Coeff& o)
{
    lam -= o.lam;
    mu -= o.mu;
    return *this;
}

Coeff operator*(const Coeff& x, const Coeff& y)
{
    return Coeff(x.lam * y.lam, x.lam * y.mu + x.mu * y.lam + x.mu * y.mu);
}

const char* to_string(RingKind k)
{
    switch (k) {
    case RingKind::InterpForward: return "interp-forward";
    case RingKind::InterpReverse: return "interp-reverse";
    case RingKind::SpecQ: return "q";
    case RingKind::SpecT: return "t";
    }
    return "?";
}

char RingContext::var_letter() const
{
    switch (kind) {
    case RingKind::InterpReverse: return 'z';
    case RingKind::SpecT: return 'Z';
    default: return 'Y';
    }
}

static int mod(int x, int m) { return ((x % m) + m) % m; }

Var RingContext::normalize_var(const Var& v) const
{
    if (kind == RingKind::SpecT) return Var{v.node, mod(v.a, eps_order()), v.b};
    return v;
}

Monomial RingContext::collapse(const Monomial& m) const
{
    if (kind == RingKind::InterpForward)
        return m.mapped([](const Var& v) { return Var{v.node, v.a, 0}; });
    if (kind == RingKind::InterpReverse)
        return m.mapped([this](const Var& v) { return Var{v.node, mod(v.a, period[v.node]), v.b}; });
    if (kind == RingKind::SpecT) return m.mapped([this](const Var& v) { return normalize_var(v); });
    return m;
}

RingPtr make_spec_ring(RingKind kind, int lacing, std::vector<int> rdual)
{
    auto r = std::make_shared<RingContext>();
    r->kind = kind;
    r->lacing = lacing;
    r->rdual = std::move(rdual);
    return r;
}

CharPoly CharPoly::monomial(RingPtr ring, const Monomial& m, const Coeff& c)
{
    CharPoly p(std::move(ring));
    p.add_term(m, c);
    return p;
}

static void accumulate(TermMap& map, const Monomial& m, const Int& c)
{
    if (c == 0) return;
    auto [it, inserted] = map.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) map.erase(it);
    }
}

void CharPoly::add_full(const Monomial& m, const Int& lam)
{
    if (ring_->kind == RingKind::SpecT)
        accumulate(full_, ring_->collapse(m), lam);
    else
        accumulate(full_, m, lam);
}

void CharPoly::note_host(const Monomial& key, const Monomial& m)
{
    if (m == key) return;
    auto [it, inserted] = host_.try_emplace(key, m);
    if (!inserted && m < it->second) it->second = m;
}

const Monomial& CharPoly::host_of(const Monomial& key) const
{
    auto it = host_.find(key);
    return it == host_.end() ? key : it->second;
}

void CharPoly::add_iota(const Monomial& m, const Int& nu)
{
    Monomial key = ring_->collapse(m);
    note_host(key, m);
    accumulate(iota_, key, nu);
}

void CharPoly::add_term(const Monomial& m, const Coeff& c)
{
    if (!ring_->interpolating()) {
        if (c.mu != 0) throw RingMismatch("idempotent coefficient in a specialized ring");
        add_full(m, c.lam);
        return;
    }
    add_full(m, c.lam);
    Monomial key = ring_->collapse(m);
    if (c.lam == 0 || c.mu != 0) note_host(key, m);
    accumulate(iota_, key, c.at_one());
}

void CharPoly::check_ring(const CharPoly& o) const
{
    if (!ring_ || !o.ring_) throw RingMismatch("polynomial without ring");
    if (ring_ != o.ring_ && (ring_->kind != o.ring_->kind || ring_->period != o.ring_->period ||
                             ring_->lacing != o.ring_->lacing))
        throw RingMismatch(std::string("ring mismatch: ") + to_string(ring_->kind) + " vs " + to_string(o.ring_->kind));
}

CharPoly& CharPoly::operator+=(const CharPoly& o)
{
    check_ring(o);
    for (const auto& [m, c] : o.full_) accumulate(full_, m, c);
    for (const auto& [m, c] : o.iota_) accumulate(iota_, m, c);
    for (const auto& [k, h] : o.host_) note_host(k, h);
    return *this;
}

CharPoly& CharPoly::operator-=(const CharPoly& o)
{
    check_ring(o);
    for (const auto& [m, c] : o.full_) accumulate(full_, m, -c);
    for (const auto& [m, c] : o.iota_) accumulate(iota_, m, -c);
    for (const auto& [k, h] : o.host_) note_host(k, h);
    return *this;
}

CharPoly operator*(const CharPoly& x, const CharPoly& y)
{
    x.check_ring(y);
    CharPoly out(x.ring_);
    out.full_.reserve(x.full_.size() * y.full_.size());
    for (const auto& [m1, c1] : x.full_)
        for (const auto& [m2, c2] : y.full_) out.add_full(m1 * m2, c1 * c2);
    for (const auto& [m1, c1] : x.iota_)
        for (const auto& [m2, c2] : y.iota_) out.add_iota(x.host_of(m1) * y.host_of(m2), c1 * c2);
    return out;
}

CharPoly CharPoly::scaled(const Coeff& c) const
{
    CharPoly out(ring_);
    if (!ring_->interpolating()) {
        if (c.mu != 0) throw RingMismatch("idempotent coefficient in a specialized ring");
        if (c.lam != 0)
            for (const auto& [m, v] : full_) out.full_.emplace(m, v * c.lam);
        return out;
    }
    Int nu = c.at_one();
    if (c.lam != 0)
        for (const auto& [m, v] : full_) out.full_.emplace(m, v * c.lam);
    if (nu != 0) {
        for (const auto& [m, v] : iota_) out.iota_.emplace(m, v * nu);
        out.host_ = host_;
    }
    return out;
}

CharPoly CharPoly::shifted(int da, int db) const
{
    CharPoly out(ring_);
    for (const auto& [m, c] : full_) out.add_full(m.shifted(da, db), c);
    for (const auto& [m, c] : iota_) out.add_iota(host_of(m).shifted(da, db), c);
    return out;
}

bool identical(const CharPoly& x, const CharPoly& y) { return x.full_ == y.full_ && x.iota_ == y.iota_; }

bool operator==(const CharPoly& x, const CharPoly& y)
{
    if (x.iota_ != y.iota_) return false;
    if (x.full_ == y.full_) return true;
    const RingPtr& ring = x.ring_ ? x.ring_ : y.ring_;
    if (!ring || !ring->full_image) return false;
    // Images and lifts without an image are kept apart.
    auto image = [&](const TermMap& m) {
        std::pair<TermMap, TermMap> out;
        for (const auto& [k, c] : m) {
            try {
                accumulate(out.first, ring->full_image(k), c);
            } catch (const std::exception&) {
                accumulate(out.second, k, c);
            }
        }
        return out;
    };
    return image(x.full_) == image(y.full_);
}

std::vector<Term> CharPoly::terms() const
{
    std::vector<Term> out;
    if (!ring_->interpolating()) {
        for (const auto& [m, c] : full_) out.push_back({m, Coeff(c)});
    } else {
        std::unordered_map<Monomial, std::vector<const std::pair<const Monomial, Int>*>, MonomialHash> classes;
        for (const auto& kv : full_) classes[ring_->collapse(kv.first)].push_back(&kv);
        for (auto& [key, lifts] : classes) {
            std::sort(lifts.begin(), lifts.end(), [](auto* a, auto* b) { return a->first < b->first; });
            auto it = iota_.find(key);
            Int nu = it == iota_.end() ? Int(0) : it->second;
            Int surplus = nu;
            for (const auto* l : lifts) surplus -= l->second;
            // Surplus iota mass is shown on the class host: merged into a lift when
            // the host is one, as a separate term otherwise. A deficit goes on a lift.
            const Monomial& h = host_of(key);
            const auto* host = lifts[0];
            bool separate = surplus > 0;
            for (const auto* l : lifts)
                if (l->first == h) {
                    host = l;
                    separate = false;
                }
            for (const auto* l : lifts)
                out.push_back({l->first, Coeff(l->second, (!separate && l == host) ? surplus : Int(0))});
            if (separate) out.push_back({h, Coeff(0, surplus)});
        }
        for (const auto& [key, nu] : iota_)
            if (!classes.count(key)) out.push_back({host_of(key), Coeff(0, nu)});
    }
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.m < b.m; });
    return out;
}

std::pair<Int, Int> CharPoly::dims() const
{
    Int a = 0, b = 0;
    for (const auto& kv : full_) b += kv.second;
    if (!ring_->interpolating()) return {b, b};
    for (const auto& kv : iota_) a += kv.second;
    return {a, b};
}

Int CharPoly::iota_free_count() const
{
    Int n = 0;
    for (const auto& t : terms())
        if (t.c.mu == 0 && t.c.lam != 0) n += t.c.lam;
    return n;
}

Coeff CharPoly::class_coeff(const Monomial& m) const
{
    auto fit = full_.find(m);
    Int lam = fit == full_.end() ? Int(0) : fit->second;
    if (!ring_->interpolating()) return Coeff(lam);
    Monomial key = ring_->collapse(m);
    auto it = iota_.find(key);
    Int nu = it == iota_.end() ? Int(0) : it->second;
    for (const auto& [x, l] : full_)
        if (ring_->collapse(x) == key) nu -= l;
    return Coeff(lam, nu);
}

CharPoly normal_form(const RingPtr& ring, const std::vector<Term>& terms)
{
    CharPoly p(ring);
    for (const auto& t : terms) p.add_term(t.m, t.c);
    return p;
}

std::string render_monomial(const Monomial& m, const RingContext& ring)
{
    if (m.is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& f : m.factors()) {
        if (!first) os << ' ';
        first = false;
        os << ring.var_letter() << '[' << (f.v.node + 1) << ",(" << f.v.a << ',' << f.v.b << ")]";
        if (f.e != 1) os << '^' << f.e;
    }
    return os.str();
}

std::string render_coeff(const Coeff& c, const RingContext& ring)
{
    std::ostringstream os;
    os << c.lam;
    if (c.mu > 0) os << '+' << c.mu << '*' << ring.iota_symbol;
    if (c.mu < 0) os << '-' << -c.mu << '*' << ring.iota_symbol;
    return os.str();
}

std::string render_term(const Term& t, const RingContext& ring)
{
    return render_coeff(t.c, ring) + " ; " + render_monomial(t.m, ring);
}

std::string render(const CharPoly& p)
{
    std::string out;
    for (const auto& t : p.terms()) {
        out += render_term(t, *p.ring());
        out += '\n';
    }
    return out;
}

bool is_right_negative(const Monomial& m, const RingContext& ring)
{
    if (m.is_one()) throw std::invalid_argument("right-negativity is defined for non-trivial monomials");
    if (ring.interpolating()) throw std::invalid_argument("right-negativity needs a specialized ring");
    auto offset = [&](const Factor& f) -> long long {
        if (ring.kind == RingKind::SpecQ) return f.v.a;
        return static_cast<long long>(f.v.b) * ring.lacing / ring.rdual[f.v.node];
    };
    long long top = offset(m.factors().front());
    for (const auto& f : m.factors()) top = std::max(top, offset(f));
    for (const auto& f : m.factors())
        if (offset(f) == top && f.e > 0) return false;
    return true;
}

std::optional<std::vector<PeelStep>> peel_roots(
    Monomial ratio, const std::function<std::optional<std::pair<PeelStep, Monomial>>(const Factor&)>& top_root,
    int grade_cap)
{
    std::vector<PeelStep> steps;
    while (!ratio.is_one()) {
        if (static_cast<int>(steps.size()) >= grade_cap) return std::nullopt;
        const Factor* best = nullptr;
        for (const auto& f : ratio.factors()) {
            if (f.e <= 0) continue;
            if (!best || f.v.a + f.v.b > best->v.a + best->v.b ||
                (f.v.a + f.v.b == best->v.a + best->v.b && f.v.node > best->v.node))
                best = &f;
        }
        if (!best) return std::nullopt;
        auto r = top_root(*best);
        if (!r) return std::nullopt;
        steps.push_back(r->first);
        ratio = ratio / r->second;
    }
    return steps;
}

double alpha_eval(double q, double t)
{
    return (q + 1 / q) * (q * t - 1 / (q * t)) / (q * q * t - 1 / (q * q * t));
}

double beta_eval(double q, double t)
{
    auto d = [](double x) { return x - 1 / x; };
    double num = d(q * q * q) * d(q / t) * d(std::pow(q, 5) / t) * d(std::pow(q, 4) / (t * t));
    double den = d(q) * d(q * q * q / t) * d(std::pow(q, 4) / t) * d(std::pow(q, 5) / (t * t));
    return num / den;
}

}  // namespace qtc
