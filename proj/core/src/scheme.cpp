#include "qtchar/scheme.hpp"

#include <map>
#include <sstream>

namespace qtc {

namespace {

int mod(int x, int m) { return ((x % m) + m) % m; }

std::string describe(const Monomial& m, char letter)
{
    RingContext tmp;
    tmp.kind = letter == 'z' ? RingKind::InterpReverse : RingKind::InterpForward;
    return render_monomial(m, tmp);
}

}  // namespace

const char* to_string(Order o)
{
    switch (o) {
    case Order::Equal: return "equal";
    case Order::Less: return "less";
    case Order::Greater: return "greater";
    case Order::Incomparable: return "incomparable";
    }
    return "?";
}

Scheme::Scheme(AlgebraSpec alg, bool with_image) : alg_(std::move(alg))
{
    auto r = std::make_shared<RingContext>();
    r->kind = forward() ? RingKind::InterpForward : RingKind::InterpReverse;
    r->lacing = alg_.lacing;
    r->rdual = alg_.rdual;
    if (alg_.lacing == 3)
        r->iota_symbol = forward() ? "b" : "bL";
    else
        r->iota_symbol = forward() ? "a" : "aL";
    r->period.resize(alg_.rank);
    for (int i = 0; i < alg_.rank; ++i) r->period[i] = 2 * alg_.lacing / alg_.rdual[i];
    ring_ = r;
    qring_ = make_spec_ring(RingKind::SpecQ, alg_.lacing, alg_.rdual);
    tring_ = make_spec_ring(RingKind::SpecT, alg_.lacing, alg_.rdual);
    qh_ = height_vector(alg_.cartan);
    th_ = height_vector(transpose(alg_.cartan));
    if (with_image) {
        auto plain = std::shared_ptr<const Scheme>(new Scheme(alg_, false));
        r->full_image = [plain](const Monomial& m) { return plain->spec_full(m); };
    }
}

std::vector<int> Scheme::unit_offsets(int i) const
{
    int n = alg_.unit_size(i);
    std::vector<int> off;
    for (int k = 0; k < n; ++k) off.push_back(-(n - 1) + 2 * k);
    return off;
}

Monomial Scheme::spread(int node, int n, int q, int t, int e) const
{
    std::vector<Factor> f;
    for (int k = 0; k < n; ++k) f.push_back({Var{node, q - (n - 1) + 2 * k, t}, e});
    return Monomial::from_factors(std::move(f));
}

Monomial Scheme::unit(int i, SpectralIndex a) const
{
    return spread(i, alg_.unit_size(i), a.q, a.t, 1);
}

Monomial Scheme::root(int i, SpectralIndex a) const
{
    const int ri = alg_.labels[i];
    std::vector<Factor> f;
    f.push_back({Var{i, a.q - ri, a.t - 1}, 1});
    f.push_back({Var{i, a.q + ri, a.t + 1}, 1});
    Monomial m = Monomial::from_factors(std::move(f));
    for (int j = 0; j < alg_.rank; ++j) {
        if (j == i) continue;
        // Forward roots use C_{j,i}; reverse roots use the transpose.
        int c = forward() ? alg_.cartan[j][i] : alg_.cartan[i][j];
        if (c < 0) m *= spread(j, -c, a.q, a.t, -1);
    }
    return m;
}

Monomial Scheme::q_root(int i, int q) const
{
    const int ri = alg_.labels[i];
    Monomial m = Monomial::var(i, q - ri, 0) * Monomial::var(i, q + ri, 0);
    for (int j = 0; j < alg_.rank; ++j) {
        if (j == i) continue;
        int c = alg_.cartan[j][i];
        if (c < 0) m *= spread(j, -c, q, 0, -1);
    }
    return m;
}

Monomial Scheme::t_root(int i, int e, int t) const
{
    const int n2r = alg_.eps_order();
    const int di = alg_.rdual[i];
    e = mod(e, n2r);
    Monomial m = Monomial::var(i, e, t - di) * Monomial::var(i, e, t + di);
    for (int j = 0; j < alg_.rank; ++j) {
        if (!alg_.adjacent(i, j)) continue;
        const int dj = alg_.rdual[j];
        if (dj == di) {
            m *= Monomial::var(j, e, t, -1);
        } else if (dj > di) {
            int n = dj / di;
            m *= Monomial::var(j, mod(e * n, n2r), t * n, -1);
        } else {
            int n = di / dj;
            if (e % n != 0 || t % n != 0)
                throw IdentificationError("twisted root parameter has no " + std::to_string(n) + "-th root");
            for (int k = 0; k < n; ++k) m *= Monomial::var(j, mod(e / n + k * (n2r / n), n2r), t / n, -1);
        }
    }
    return m;
}

Monomial Scheme::pi_t_forward(const Monomial& m) const
{
    const int r = alg_.lacing;
    const int n2r = 2 * r;
    std::vector<Factor> out;
    std::map<std::pair<int, int>, std::map<int, int>> shortvars;  // (node, t) -> class -> exp
    for (const auto& f : m.factors()) {
        const int i = f.v.node;
        if (alg_.rdual[i] == 1) {
            out.push_back({Var{i, mod(f.v.a + r * alg_.phi[i], n2r), f.v.b}, f.e});
        } else {
            shortvars[{i, f.v.b}][mod(f.v.a, n2r)] += f.e;
        }
    }
    for (const auto& [key, classes] : shortvars) {
        const int i = key.first;
        for (int p = 0; p < 2; ++p) {
            int e0 = 0;
            bool first = true;
            for (int c = p; c < n2r; c += 2) {
                auto it = classes.find(c);
                int e = it == classes.end() ? 0 : it->second;
                if (first) {
                    e0 = e;
                    first = false;
                } else if (e != e0) {
                    throw IdentificationError("short-node variables do not pair into eps-orbits in " +
                                              describe(m, 'Y'));
                }
            }
            if (e0 != 0) out.push_back({Var{i, mod(r * p + r * alg_.phi[i], n2r), r * key.second}, e0});
        }
    }
    return Monomial::from_factors(std::move(out));
}

Monomial Scheme::pi_t_reverse(const Monomial& m) const
{
    const int r = alg_.lacing;
    return m.mapped([&](const Var& v) {
        const int d = alg_.rdual[v.node];
        return Var{v.node, mod(d * v.a + r * (1 + alg_.phi[v.node]), 2 * r), d * v.b};
    });
}

Monomial Scheme::pi_q_reverse(const Monomial& m) const
{
    std::map<int, std::map<int, int>> bynode;
    for (const auto& f : m.factors()) bynode[f.v.node][f.v.a] += f.e;
    std::vector<Factor> out;
    for (auto& [i, exps] : bynode) {
        const int n = alg_.unit_size(i);
        if (n == 1) {
            for (const auto& [q, e] : exps)
                if (e) out.push_back({Var{i, q, 0}, e});
            continue;
        }
        if (exps.empty()) continue;
        int qmax = exps.rbegin()->first;
        while (true) {
            auto it = exps.begin();
            while (it != exps.end() && it->second == 0) it = exps.erase(it);
            if (it == exps.end()) break;
            int q = it->first;
            int e = it->second;
            if (q + 2 * (n - 1) > qmax)
                throw IdentificationError("monomial is not a product of X-units: " + describe(m, 'z'));
            int centre = q + (n - 1);
            out.push_back({Var{i, centre, 0}, e});
            for (int k = 0; k < n; ++k) exps[q + 2 * k] -= e;
        }
    }
    return Monomial::from_factors(std::move(out));
}

Monomial Scheme::spec_full(const Monomial& lift) const
{
    return forward() ? pi_t_forward(lift) : pi_q_reverse(lift);
}

Monomial Scheme::spec_iota(const Monomial& collapsed) const
{
    if (forward()) return ring_->collapse(collapsed);
    return pi_t_reverse(ring_->collapse(collapsed));
}

CharPoly Scheme::specialize_q(const CharPoly& p) const
{
    CharPoly out(qring_);
    if (forward()) {
        for (const auto& [m, c] : p.iota()) out.add_full(m, c);
    } else {
        for (const auto& [m, c] : p.full()) out.add_full(pi_q_reverse(m), c);
    }
    return out;
}

CharPoly Scheme::specialize_t(const CharPoly& p) const
{
    CharPoly out(tring_);
    if (forward()) {
        for (const auto& [m, c] : p.full()) out.add_full(pi_t_forward(m), c);
    } else {
        for (const auto& [m, c] : p.iota()) out.add_full(pi_t_reverse(m), c);
    }
    return out;
}

CharPoly Scheme::kernel_generator(int i, SpectralIndex a, GenKind kind) const
{
    const int n = alg_.unit_size(i);
    const int ri = alg_.labels[i];
    CharPoly g(ring_);
    if (kind == GenKind::Iota) {
        if (n == 1) throw std::invalid_argument("iota generators exist only for nodes with composite units");
        Monomial y = Monomial::var(i, a.q, a.t);
        Monomial low = y / lowering_root(i, a.q, a.t);
        g.add_term(y, Coeff::iota());
        g.add_term(low, Coeff::iota());
        return g;
    }
    Monomial w = unit(i, a);
    std::vector<Monomial> lows;  // R^{-1} for unit variables, bottom to top
    for (int off : unit_offsets(i)) lows.push_back(lowering_root(i, a.q + off, a.t).inverse());
    Monomial all;
    for (const auto& l : lows) all *= l;
    // (1-iota) part: W (1 + prod R^{-1}).
    g.add_term(w, Coeff(1, -1));
    g.add_term(w * all, Coeff(1, -1));
    // iota part: a string from the top (forward) or independent factors (reverse).
    if (forward()) {
        Monomial cur = w;
        g.add_term(cur, Coeff::iota());
        for (int k = n - 1; k >= 0; --k) {
            cur *= lows[k];
            g.add_term(cur, Coeff::iota());
        }
    } else {
        for (int mask = 0; mask < (1 << n); ++mask) {
            Monomial cur = w;
            for (int k = 0; k < n; ++k)
                if (mask & (1 << k)) cur *= lows[k];
            g.add_term(cur, Coeff::iota());
        }
    }
    (void)ri;
    return g;
}

bool Scheme::is_i_dominant(const Monomial& m, const Coeff& c, int i) const
{
    auto nonneg = [i](const Monomial& x) {
        for (const auto& f : x.factors())
            if (f.v.node == i && f.e < 0) return false;
        return true;
    };
    if (c.at_one() != 0 && !nonneg(ring_->collapse(m))) return false;
    if (c.lam != 0 && !nonneg(spec_full(m))) return false;
    return true;
}

bool Scheme::is_dominant(const Monomial& m, const Coeff& c) const
{
    for (int i = 0; i < alg_.rank; ++i)
        if (!is_i_dominant(m, c, i)) return false;
    return true;
}

Comparison Scheme::compare_partial(const Monomial& m, const Monomial& other, int grade_cap) const
{
    Comparison out;
    if (m == other) {
        out.order = Order::Equal;
        return out;
    }
    auto top = [this](const Factor& f) -> std::optional<std::pair<PeelStep, Monomial>> {
        const int i = f.v.node;
        PeelStep s{i, f.v.a - alg_.labels[i], f.v.b - 1};
        return std::make_pair(s, root(i, {s.a, s.b}));
    };
    if (auto w = peel_roots(other / m, top, grade_cap)) {
        out.order = Order::Less;
        out.witness = *w;
    } else if (auto w2 = peel_roots(m / other, top, grade_cap)) {
        out.order = Order::Greater;
        out.witness = *w2;
    }
    return out;
}

long long Scheme::q_height(const Monomial& m) const
{
    long long h = 0;
    for (const auto& f : m.factors()) h += qh_[f.v.node] * f.e;
    return h;
}

long long Scheme::t_height(const Monomial& m) const
{
    long long h = 0;
    for (const auto& f : m.factors()) h += th_[f.v.node] * f.e;
    return h;
}

std::string Scheme::render_root_label(const PeelStep& s) const
{
    std::ostringstream os;
    os << (s.node + 1) << ", q^" << s.a << " t^" << s.b;
    return os.str();
}

}  // namespace qtc
