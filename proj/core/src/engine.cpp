#include "qtchar/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>

namespace qtc {

namespace {

int mod(int x, int m) { return ((x % m) + m) % m; }

constexpr std::size_t kMaxAlts = 32;

Int binom(int n, int k)
{
    Int r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

struct NVecLess {
    bool operator()(const std::vector<int>& x, const std::vector<int>& y) const
    {
        int sx = std::accumulate(x.begin(), x.end(), 0);
        int sy = std::accumulate(y.begin(), y.end(), 0);
        if (sx != sy) return sx < sy;
        return x < y;
    }
};

using Pattern = std::vector<std::pair<Pos, int>>;

Pos add(const Sl2Frame& f, Pos p)
{
    p.a += f.step_a;
    p.b += f.step_b;
    if (f.modulus) p.a = mod(p.a, f.modulus);
    return p;
}

std::string shape_key(const Sl2Frame& f, const Pattern& p)
{
    std::ostringstream os;
    os << f.modulus << ':' << f.step_a << ':' << f.step_b;
    for (const auto& [pos, u] : p) os << '|' << pos.a << ',' << pos.b << ',' << u;
    return os.str();
}

const std::vector<Sl2Term>& normalized_shape(const Sl2Frame& frame, const Pattern& pat);

std::vector<Sl2Term> compute_shape(const Sl2Frame& frame, const Pattern& pat)
{
    const int m = static_cast<int>(pat.size());
    std::vector<int> succ(m, -1);
    for (int k = 0; k < m; ++k) {
        Pos nxt = add(frame, pat[k].first);
        for (int j = 0; j < m; ++j)
            if (pat[j].first == nxt) succ[k] = j;
    }
    std::map<std::vector<int>, Int, NVecLess> acc;
    std::vector<int> n(m, 0);
    // E = prod (1 + X_k)^{u_k}
    while (true) {
        Int c = 1;
        for (int k = 0; k < m; ++k) c *= binom(pat[k].second, n[k]);
        acc.emplace(n, c);
        int k = 0;
        while (k < m && n[k] == pat[k].second) n[k++] = 0;
        if (k == m) break;
        ++n[k];
    }
    for (auto it = acc.begin(); it != acc.end(); ++it) {
        const auto& nv = it->first;
        if (it->second == 0) continue;
        if (std::all_of(nv.begin(), nv.end(), [](int x) { return x == 0; })) continue;
        std::vector<int> ex(m);
        bool dominant = true;
        for (int k = 0; k < m; ++k) ex[k] = pat[k].second - nv[k];
        for (int k = 0; k < m && dominant; ++k) {
            if (nv[k] == 0) continue;
            if (succ[k] < 0)
                dominant = false;
            else
                ex[succ[k]] -= nv[k];
        }
        for (int k = 0; k < m && dominant; ++k)
            if (ex[k] < 0) dominant = false;
        if (!dominant) continue;
        Int coef = it->second;
        Pattern sub;
        std::vector<int> idx;
        for (int k = 0; k < m; ++k)
            if (ex[k] > 0) {
                sub.push_back({pat[k].first, ex[k]});
                idx.push_back(k);
            }
        std::vector<Sl2Term> subshape;
        if (!sub.empty()) subshape = sl2_shape(frame, sub);
        else subshape.push_back({Int(1), {}});
        for (const auto& t : subshape) {
            std::vector<int> tot = nv;
            for (std::size_t j = 0; j < idx.size(); ++j) tot[idx[j]] += t.n[j];
            acc[tot] -= coef * t.coef;
        }
    }
    std::vector<Sl2Term> out;
    for (auto& [nv, c] : acc)
        if (c != 0) out.push_back({c, nv});
    return out;
}

const std::vector<Sl2Term>& normalized_shape(const Sl2Frame& frame, const Pattern& pat)
{
    thread_local std::unordered_map<std::string, std::vector<Sl2Term>> memo;
    std::string key = shape_key(frame, pat);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto shape = compute_shape(frame, pat);
    return memo.emplace(std::move(key), std::move(shape)).first->second;
}

}  // namespace

std::vector<Sl2Term> sl2_shape(const Sl2Frame& frame, const Pattern& pattern)
{
    const int m = static_cast<int>(pattern.size());
    if (m == 0) return {{Int(1), {}}};
    Pos base = pattern[0].first;
    for (const auto& pu : pattern)
        if (pu.first < base) base = pu.first;
    std::vector<std::pair<Pattern::value_type, int>> norm;
    for (int k = 0; k < m; ++k) {
        Pos p = pattern[k].first;
        p.a -= base.a;
        p.b -= base.b;
        if (frame.modulus) p.a = mod(p.a, frame.modulus);
        norm.push_back({{p, pattern[k].second}, k});
    }
    std::sort(norm.begin(), norm.end(), [](const auto& x, const auto& y) { return x.first.first < y.first.first; });
    Pattern np;
    for (const auto& x : norm) np.push_back(x.first);
    const auto& shape = normalized_shape(frame, np);
    std::vector<Sl2Term> out;
    out.reserve(shape.size());
    for (const auto& t : shape) {
        std::vector<int> n(m);
        for (int k = 0; k < m; ++k) n[norm[k].second] = t.n[k];
        out.push_back({t.coef, std::move(n)});
    }
    return out;
}

namespace {

bool node_positions(const Monomial& key, int i, std::vector<std::pair<Pos, int>>& out)
{
    out.clear();
    for (const auto& f : key.factors()) {
        if (f.v.node != i) continue;
        if (f.e < 0) return false;
        out.push_back({Pos{f.v.a, f.v.b}, f.e});
    }
    return true;
}

class IotaComponent : public Component {
public:
    explicit IotaComponent(const Scheme& s) : s_(s) {}
    int rank() const override { return s_.rank(); }
    Monomial key_of(const Monomial& repr) const override { return s_.ring()->collapse(repr); }
    Sl2Frame frame(int i) const override
    {
        const int ri = s_.algebra().labels[i];
        if (s_.forward()) return {0, 2 * ri, 0};
        const int p = s_.ring()->period[i];
        return {p, mod(2 * ri, p), 2};
    }
    // The representative stays uncollapsed when an honest variable is
    // available, so that it doubles as a lift candidate for the other component.
    std::vector<Monomial> lowerings(const Monomial& repr, int i, const std::vector<Pos>& pos) const override
    {
        const RingContext& ring = *s_.ring();
        std::vector<Monomial> out;
        for (const auto& p : pos) {
            Monomial flat = ring.collapse(s_.lowering_root(i, p.a, p.b).inverse());
            const Factor* best = nullptr;
            for (const auto& f : repr.factors()) {
                if (f.v.node != i || f.e <= 0) continue;
                Var c = ring.collapse(Monomial::var(i, f.v.a, f.v.b)).factors().front().v;
                if (c.a != p.a || c.b != p.b) continue;
                if (!best || f.e > best->e) best = &f;
            }
            if (best) {
                Monomial honest = s_.lowering_root(i, best->v.a, best->v.b).inverse();
                if (ring.collapse(honest) == flat) {
                    out.push_back(honest);
                    continue;
                }
            }
            out.push_back(flat);
        }
        return out;
    }
    int lowering_grade(int) const override { return 1; }
    long long height(const Monomial& key) const override
    {
        return s_.forward() ? s_.q_height(key) : s_.t_height(key);
    }
    const char* name() const override { return "iota"; }

private:
    const Scheme& s_;
};

class FullComponent : public Component {
public:
    explicit FullComponent(const Scheme& s) : s_(s) {}
    int rank() const override { return s_.rank(); }
    Monomial key_of(const Monomial& repr) const override { return s_.spec_full(repr); }
    Sl2Frame frame(int i) const override
    {
        if (s_.forward()) return {s_.algebra().eps_order(), 0, 2 * s_.algebra().rdual[i]};
        return {0, 2 * s_.algebra().labels[i], 0};
    }
    std::vector<Monomial> lowerings(const Monomial& repr, int i, const std::vector<Pos>& pos) const override
    {
        std::vector<Monomial> out;
        for (const auto& p : pos) {
            SpectralIndex a = choose_unit(repr, i, p);
            Monomial x;
            for (int off : s_.unit_offsets(i)) x *= s_.lowering_root(i, a.q + off, a.t).inverse();
            out.push_back(x);
        }
        return out;
    }
    int lowering_grade(int i) const override { return s_.algebra().unit_size(i); }
    long long height(const Monomial& key) const override
    {
        return s_.forward() ? s_.t_height(key) : s_.q_height(key);
    }
    const char* name() const override { return "full"; }

private:
    bool unit_matches(int i, SpectralIndex a, const Pos& p) const
    {
        Monomial img = s_.spec_full(s_.unit(i, a));
        return img == Monomial::var(i, p.a, p.b);
    }

    // Lift of the specialized node-i variable at p, preferring units that are
    // visibly present in the representative.
    SpectralIndex choose_unit(const Monomial& repr, int i, const Pos& p) const
    {
        const auto offs = s_.unit_offsets(i);
        bool found = false;
        int best_score = -1;
        SpectralIndex best;
        for (const auto& f : repr.factors()) {
            if (f.v.node != i || f.e <= 0) continue;
            for (int off : offs) {
                SpectralIndex a{f.v.a - off, f.v.b};
                if (!unit_matches(i, a, p)) continue;
                int score = 0;
                for (int o2 : offs)
                    if (repr.exponent(i, a.q + o2, a.t) > 0) ++score;
                if (!found || score > best_score ||
                    (score == best_score && (a.q < best.q || (a.q == best.q && a.t < best.t)))) {
                    found = true;
                    best_score = score;
                    best = a;
                }
            }
        }
        if (found) return best;
        const int r = s_.algebra().lacing;
        std::vector<int> tcands{p.b};
        if (s_.forward() && p.b % s_.algebra().rdual[i] == 0) tcands.push_back(p.b / s_.algebra().rdual[i]);
        for (int t : tcands)
            for (int q = -2 * r; q <= 2 * r; ++q) {
                SpectralIndex a{s_.forward() ? q : p.a, s_.forward() ? t : 0};
                if (unit_matches(i, a, p)) return a;
            }
        throw IdentificationError("no unit lift for a specialized variable");
    }

    const Scheme& s_;
};

class PlainQComponent : public Component {
public:
    explicit PlainQComponent(const Scheme& s) : s_(s) {}
    int rank() const override { return s_.rank(); }
    Monomial key_of(const Monomial& repr) const override { return repr; }
    Sl2Frame frame(int i) const override { return {0, 2 * s_.algebra().labels[i], 0}; }
    std::vector<Monomial> lowerings(const Monomial&, int i, const std::vector<Pos>& pos) const override
    {
        std::vector<Monomial> out;
        for (const auto& p : pos) out.push_back(s_.q_root(i, p.a + s_.algebra().labels[i]).inverse());
        return out;
    }
    int lowering_grade(int) const override { return 1; }
    long long height(const Monomial& key) const override { return s_.q_height(key); }
    const char* name() const override { return "q"; }

private:
    const Scheme& s_;
};

class PlainTComponent : public Component {
public:
    explicit PlainTComponent(const Scheme& s) : s_(s) {}
    int rank() const override { return s_.rank(); }
    Monomial key_of(const Monomial& repr) const override { return s_.tring()->collapse(repr); }
    Sl2Frame frame(int i) const override { return {s_.algebra().eps_order(), 0, 2 * s_.algebra().rdual[i]}; }
    std::vector<Monomial> lowerings(const Monomial&, int i, const std::vector<Pos>& pos) const override
    {
        std::vector<Monomial> out;
        for (const auto& p : pos) out.push_back(s_.t_root(i, p.a, p.b + s_.algebra().rdual[i]).inverse());
        return out;
    }
    int lowering_grade(int) const override { return 1; }
    long long height(const Monomial& key) const override { return s_.t_height(key); }
    const char* name() const override { return "t"; }

private:
    const Scheme& s_;
};

std::string show(const Monomial& m)
{
    RingContext ctx;
    ctx.kind = RingKind::InterpForward;
    return render_monomial(m, ctx);
}

}  // namespace

std::unique_ptr<Component> iota_component(const Scheme& s) { return std::make_unique<IotaComponent>(s); }
std::unique_ptr<Component> full_component(const Scheme& s) { return std::make_unique<FullComponent>(s); }
std::unique_ptr<Component> plain_q_component(const Scheme& s) { return std::make_unique<PlainQComponent>(s); }
std::unique_ptr<Component> plain_t_component(const Scheme& s) { return std::make_unique<PlainTComponent>(s); }

std::vector<EngineEntry> rank1_entries(const Component& comp, const Monomial& repr, int i)
{
    Monomial key = comp.key_of(repr);
    std::vector<std::pair<Pos, int>> pat;
    if (!node_positions(key, i, pat)) throw std::invalid_argument("rank-1 block needs an i-dominant monomial");
    std::vector<EngineEntry> out;
    if (pat.empty()) {
        out.push_back({key, repr, Int(1), {}});
        return out;
    }
    std::vector<Pos> pos;
    for (const auto& pu : pat) pos.push_back(pu.first);
    auto shape = sl2_shape(comp.frame(i), pat);
    auto lows = comp.lowerings(repr, i, pos);
    for (const auto& t : shape) {
        Monomial r = repr;
        for (std::size_t k = 0; k < lows.size(); ++k)
            if (t.n[k]) r *= lows[k].pow(t.n[k]);
        out.push_back({comp.key_of(r), r, t.coef, {}});
    }
    return out;
}

std::vector<EngineEntry> run_worklist(const Component& comp, const Monomial& repr0, const EngineOptions& opt)
{
    const int n = comp.rank();
    struct Node {
        Monomial key;
        Monomial repr;
        int grade;
        std::vector<Int> si;
        Int s;
        std::vector<Monomial> alts;
    };
    std::deque<Node> nodes;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    std::vector<std::vector<std::size_t>> buckets(1);

    Monomial key0 = comp.key_of(repr0);
    nodes.push_back({key0, repr0, 0, std::vector<Int>(n), Int(0), {repr0}});
    index.emplace(key0, 0);
    buckets[0].push_back(0);

    std::mt19937_64 rng(opt.shuffle_seed);
    std::vector<std::pair<Pos, int>> pat;
    std::vector<Pos> pos;

    for (std::size_t g = 0; g < buckets.size(); ++g) {
        std::vector<std::size_t> order = buckets[g];
        if (opt.shuffle_seed)
            std::shuffle(order.begin(), order.end(), rng);
        else
            std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return nodes[x].key < nodes[y].key; });
        for (std::size_t id : order) {
            // Copy out: later insertions may not move deque elements, but keep it simple.
            const Monomial key = nodes[id].key;
            const Monomial repr = nodes[id].repr;
            std::vector<bool> dom(n);
            bool all_dom = true;
            for (int i = 0; i < n; ++i) {
                dom[i] = node_positions(key, i, pat);
                all_dom = all_dom && dom[i];
            }
            Int s;
            if (id == 0) {
                s = 1;
            } else if (all_dom) {
                s = 0;
            } else {
                bool first = true;
                for (int i = 0; i < n; ++i) {
                    if (dom[i]) continue;
                    if (first) {
                        s = nodes[id].si[i];
                        first = false;
                    } else if (nodes[id].si[i] != s) {
                        throw ConsistencyError(std::string("inconsistent s_J values at ") + show(key) + " in " +
                                               comp.name() + " component");
                    }
                }
            }
            nodes[id].s = s;
            for (int i = 0; i < n; ++i) {
                if (!dom[i]) continue;
                Int mu = s - nodes[id].si[i];
                if (mu == 0) continue;
                node_positions(key, i, pat);
                if (pat.empty()) continue;
                pos.clear();
                for (const auto& pu : pat) pos.push_back(pu.first);
                auto shape = sl2_shape(comp.frame(i), pat);
                auto lows = comp.lowerings(repr, i, pos);
                for (const auto& t : shape) {
                    int dg = 0;
                    Monomial r = repr;
                    for (std::size_t k = 0; k < lows.size(); ++k)
                        if (t.n[k]) {
                            r *= lows[k].pow(t.n[k]);
                            dg += t.n[k] * comp.lowering_grade(i);
                        }
                    if (dg == 0) continue;
                    int ng = static_cast<int>(g) + dg;
                    if (ng > opt.grade_cap) throw ResourceError("grade cap exceeded");
                    Monomial k2 = comp.key_of(r);
                    auto it = index.find(k2);
                    std::size_t tid;
                    if (it == index.end()) {
                        if (nodes.size() >= opt.term_cap) throw ResourceError("term cap exceeded");
                        tid = nodes.size();
                        nodes.push_back({k2, r, ng, std::vector<Int>(n), Int(0), {r}});
                        index.emplace(k2, tid);
                        if (buckets.size() <= static_cast<std::size_t>(ng)) buckets.resize(ng + 1);
                        buckets[ng].push_back(tid);
                    } else {
                        tid = it->second;
                        if (nodes[tid].grade != ng)
                            throw ConsistencyError("monomial reached at two different grades: " + show(k2));
                        if (r < nodes[tid].repr) nodes[tid].repr = r;
                        auto& alts = nodes[tid].alts;
                        if (alts.size() < kMaxAlts && std::find(alts.begin(), alts.end(), r) == alts.end())
                            alts.push_back(r);
                    }
                    nodes[tid].si[i] += mu * t.coef;
                }
            }
        }
    }
    std::vector<EngineEntry> out;
    for (const auto& nd : nodes)
        if (nd.s != 0) {
            EngineEntry e{nd.key, nd.repr, nd.s, nd.alts};
            std::sort(e.alts.begin(), e.alts.end());
            out.push_back(std::move(e));
        }
    std::sort(out.begin(), out.end(), [](const EngineEntry& x, const EngineEntry& y) { return x.key < y.key; });
    return out;
}

CharPoly rank1_block(const Scheme& s, int i, const Monomial& m)
{
    CharPoly p(s.ring());
    auto fc = full_component(s);
    for (const auto& e : rank1_entries(*fc, m, i)) p.add_full(e.repr, e.s);
    auto ic = iota_component(s);
    for (const auto& e : rank1_entries(*ic, m, i)) p.add_iota(e.repr, e.s);
    return p;
}

std::vector<Term> dominant_terms(const Scheme& s, const CharPoly& p)
{
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        bool dom;
        if (p.ring()->interpolating()) {
            dom = s.is_dominant(t.m, t.c);
        } else {
            dom = std::all_of(t.m.factors().begin(), t.m.factors().end(), [](const Factor& f) { return f.e > 0; });
        }
        if (dom) out.push_back(t);
    }
    return out;
}

namespace {

// Picks one representative per (1-iota) key. Any representative gives the same
// ring element; preferring those whose collapse still has iota mass left keeps
// the recombined coefficients free of negative iota parts.
std::vector<std::pair<Monomial, Int>> assign_lifts(const RingContext& ring, const std::vector<EngineEntry>& entries,
                                                   std::unordered_map<Monomial, Int, MonomialHash>& budget)
{
    std::vector<std::size_t> order(entries.size());
    std::iota(order.begin(), order.end(), 0);
    auto feasible = [&](const EngineEntry& e) {
        std::size_t n = 0;
        for (const auto& a : e.alts) {
            auto it = budget.find(ring.collapse(a));
            if (it != budget.end() && it->second >= e.s) ++n;
        }
        return n;
    };
    std::vector<std::size_t> nfeas(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) nfeas[k] = feasible(entries[k]);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return nfeas[x] < nfeas[y]; });
    std::vector<std::pair<Monomial, Int>> out;
    for (std::size_t k : order) {
        const auto& e = entries[k];
        const Monomial* pick = nullptr;
        Int best = 0;
        if (e.s > 0)
            for (const auto& a : e.alts) {
                auto it = budget.find(ring.collapse(a));
                if (it == budget.end() || it->second < e.s) continue;
                if (!pick || it->second > best) {
                    pick = &a;
                    best = it->second;
                }
            }
        if (!pick) pick = &e.repr;
        budget[ring.collapse(*pick)] -= e.s;
        out.push_back({*pick, e.s});
    }
    return out;
}

}  // namespace

CharResult interp_char_F(const Scheme& s, const Monomial& m0, const Coeff& c, const EngineOptions& opt)
{
    if (!s.is_dominant(m0, c)) throw std::invalid_argument("interp_char_F needs a dominant monomial");
    CharResult res;
    res.poly = CharPoly(s.ring());
    Int nu = c.at_one();
    std::unordered_map<Monomial, Int, MonomialHash> budget;
    std::vector<Monomial> shadows;
    std::vector<EngineEntry> iota_entries;
    if (nu != 0) {
        auto ic = iota_component(s);
        iota_entries = run_worklist(*ic, m0, opt);
        for (auto& e : iota_entries) {
            e.s *= nu;
            budget[e.key] += e.s;
            shadows.insert(shadows.end(), e.alts.begin(), e.alts.end());
        }
    }
    if (c.lam != 0) {
        auto fc = full_component(s);
        auto entries = run_worklist(*fc, m0, opt);
        std::unordered_map<Monomial, std::size_t, MonomialHash> where;
        for (std::size_t k = 0; k < entries.size(); ++k) {
            entries[k].s *= c.lam;
            where.emplace(entries[k].key, k);
        }
        for (const auto& sh : shadows) {
            Monomial k;
            try {
                k = fc->key_of(sh);
            } catch (const IdentificationError&) {
                continue;
            }
            auto it = where.find(k);
            if (it == where.end()) continue;
            auto& alts = entries[it->second].alts;
            if (std::find(alts.begin(), alts.end(), sh) == alts.end()) alts.push_back(sh);
        }
        for (const auto& [lift, lam] : assign_lifts(*s.ring(), entries, budget)) res.poly.add_full(lift, lam);
    }
    for (const auto& e : iota_entries) res.poly.add_iota(e.repr, e.s);
    res.highest = m0;
    res.highest_coeff = c;
    res.dominant = dominant_terms(s, res.poly);
    res.provenance = Provenance::Algorithm;
    return res;
}

CharResult fundamental_char(const Scheme& s, int i, SpectralIndex a, const EngineOptions& opt)
{
    return interp_char_F(s, s.unit(i, a), Coeff(1), opt);
}

CharPoly standard_product_E(const Scheme& s, const std::vector<std::pair<int, SpectralIndex>>& units,
                            const EngineOptions& opt)
{
    CharPoly out = CharPoly::monomial(s.ring(), Monomial());
    std::map<int, CharPoly> base;
    for (const auto& [i, a] : units) {
        auto it = base.find(i);
        if (it == base.end()) it = base.emplace(i, fundamental_char(s, i, {0, 0}, opt).poly).first;
        out = out * it->second.shifted(a.q, a.t);
    }
    return out;
}

CharResult plain_fm_char(const Scheme& s, const Monomial& m, PlainRing ring, const EngineOptions& opt)
{
    CharResult res;
    auto comp = ring == PlainRing::Q ? plain_q_component(s) : plain_t_component(s);
    const RingPtr& rp = ring == PlainRing::Q ? s.qring() : s.tring();
    Monomial m0 = comp->key_of(m);
    for (const auto& f : m0.factors())
        if (f.e < 0) throw std::invalid_argument("plain_fm_char needs a dominant monomial");
    res.poly = CharPoly(rp);
    for (const auto& e : run_worklist(*comp, m0, opt)) res.poly.add_full(e.key, e.s);
    res.highest = m0;
    res.highest_coeff = Coeff(1);
    res.dominant = dominant_terms(s, res.poly);
    return res;
}

namespace {

struct Slot {
    Int coef;
    Monomial repr;
};

using SlotMap = std::unordered_map<Monomial, Slot, MonomialHash>;

void bump(SlotMap& map, const Monomial& key, const Monomial& repr, const Int& c)
{
    auto [it, inserted] = map.try_emplace(key, Slot{c, repr});
    if (!inserted) {
        it->second.coef += c;
        if (repr < it->second.repr) it->second.repr = repr;
    }
}

struct HeapItem {
    long long h;
    Monomial key;
    friend bool operator<(const HeapItem& x, const HeapItem& y)
    {
        if (x.h != y.h) return x.h < y.h;
        return y.key < x.key;
    }
};

KernelVerdict eliminate(const Component& comp, SlotMap map, int i, std::size_t cap, std::vector<KernelStep>& steps,
                        Monomial& witness)
{
    std::priority_queue<HeapItem> heap;
    for (const auto& [k, v] : map) heap.push({comp.height(k), k});
    std::vector<std::pair<Pos, int>> pat;
    std::size_t done = 0;
    while (!heap.empty()) {
        HeapItem top = heap.top();
        heap.pop();
        auto it = map.find(top.key);
        if (it == map.end() || it->second.coef == 0) continue;
        if (!node_positions(top.key, i, pat)) continue;
        if (++done > cap) return KernelVerdict::Undecided;
        Slot slot = it->second;
        KernelStep st;
        st.component = comp.name();
        st.monomial = slot.repr;
        st.reduced = pat.empty() ? slot.repr.without_node(i) : slot.repr;
        st.coef = slot.coef;
        steps.push_back(st);
        for (const auto& e : rank1_entries(comp, slot.repr, i)) {
            bool fresh = !map.count(e.key);
            bump(map, e.key, e.repr, -slot.coef * e.s);
            if (fresh) heap.push({comp.height(e.key), e.key});
        }
    }
    bool empty = true;
    long long best = 0;
    for (const auto& [k, v] : map)
        if (v.coef != 0) {
            long long h = comp.height(k);
            if (empty || h > best || (h == best && k < witness)) {
                witness = k;
                best = h;
            }
            empty = false;
        }
    return empty ? KernelVerdict::Yes : KernelVerdict::No;
}

KernelVerdict combine(KernelVerdict a, KernelVerdict b)
{
    if (a == KernelVerdict::No || b == KernelVerdict::No) return KernelVerdict::No;
    if (a == KernelVerdict::Undecided || b == KernelVerdict::Undecided) return KernelVerdict::Undecided;
    return KernelVerdict::Yes;
}

}  // namespace

KernelTrace in_kernel_i(const Scheme& s, const CharPoly& p, int i, std::size_t step_cap)
{
    if (!p.ring()->interpolating()) return in_plain_kernel_i(s, p, i, step_cap);
    KernelTrace tr;
    auto ic = iota_component(s);
    auto fc = full_component(s);
    SlotMap im, fm;
    for (const auto& [m, c] : p.iota()) bump(im, m, m, c);
    for (const auto& [m, c] : p.full()) bump(fm, fc->key_of(m), m, c);
    Monomial w1, w2;
    auto v1 = eliminate(*ic, im, i, step_cap, tr.steps, w1);
    auto v2 = eliminate(*fc, fm, i, step_cap, tr.steps, w2);
    tr.verdict = combine(v1, v2);
    tr.witness = v1 == KernelVerdict::No ? w1 : w2;
    return tr;
}

KernelTrace in_plain_kernel_i(const Scheme& s, const CharPoly& p, int i, std::size_t step_cap)
{
    KernelTrace tr;
    auto comp = p.ring()->kind == RingKind::SpecQ ? plain_q_component(s) : plain_t_component(s);
    SlotMap m;
    for (const auto& [k, c] : p.full()) bump(m, k, k, c);
    tr.verdict = eliminate(*comp, m, i, step_cap, tr.steps, tr.witness);
    return tr;
}

namespace {

std::vector<std::pair<Monomial, Int>> decompose_component(const Component& comp, SlotMap map, const EngineOptions& opt)
{
    std::vector<std::pair<Monomial, Int>> out;
    std::priority_queue<HeapItem> heap;
    for (const auto& [k, v] : map) heap.push({comp.height(k), k});
    const int n = comp.rank();
    std::vector<std::pair<Pos, int>> pat;
    while (!heap.empty()) {
        HeapItem top = heap.top();
        heap.pop();
        auto it = map.find(top.key);
        if (it == map.end() || it->second.coef == 0) continue;
        bool dom = true;
        for (int i = 0; i < n && dom; ++i) dom = node_positions(top.key, i, pat);
        if (!dom) continue;
        Slot slot = it->second;
        out.push_back({slot.repr, slot.coef});
        for (const auto& e : run_worklist(comp, slot.repr, opt)) {
            bool fresh = !map.count(e.key);
            bump(map, e.key, e.repr, -slot.coef * e.s);
            if (fresh) heap.push({comp.height(e.key), e.key});
        }
    }
    for (const auto& [k, v] : map)
        if (v.coef != 0) throw NotInKernel("remainder without dominant monomial", k);
    return out;
}

}  // namespace

Decomposition decompose_K(const Scheme& s, const CharPoly& chi, const EngineOptions& opt)
{
    for (int i = 0; i < s.rank(); ++i) {
        auto tr = in_kernel_i(s, chi, i);
        if (tr.verdict != KernelVerdict::Yes)
            throw NotInKernel("polynomial is not in the kernel of node " + std::to_string(i + 1), tr.witness);
    }
    Decomposition d;
    if (!chi.ring()->interpolating()) {
        auto comp = chi.ring()->kind == RingKind::SpecQ ? plain_q_component(s) : plain_t_component(s);
        SlotMap m;
        for (const auto& [k, c] : chi.full()) bump(m, k, k, c);
        for (auto& [mono, c] : decompose_component(*comp, m, opt)) d.entries.push_back({mono, Coeff(c)});
    } else {
        auto ic = iota_component(s);
        auto fc = full_component(s);
        SlotMap im, fm;
        for (const auto& [m, c] : chi.iota()) bump(im, m, m, c);
        for (const auto& [m, c] : chi.full()) bump(fm, fc->key_of(m), m, c);
        CharPoly acc(s.ring());
        for (auto& [mono, c] : decompose_component(*fc, fm, opt)) acc.add_full(mono, c);
        for (auto& [mono, c] : decompose_component(*ic, im, opt)) acc.add_iota(mono, c);
        d.entries = acc.terms();
    }
    std::sort(d.entries.begin(), d.entries.end(), [](const Term& x, const Term& y) { return x.m < y.m; });
    return d;
}

std::vector<Monomial> dominant_in_D(const Scheme& s, const Monomial& m0, int grade_cap, std::size_t term_cap)
{
    auto spec_ok = [&](const Monomial& m, Monomial& spec) {
        try {
            spec = s.spec_full(m);
            return true;
        } catch (const IdentificationError&) {
            return false;
        }
    };
    auto both_right_negative = [&](const Monomial& m) {
        Monomial sf;
        if (!spec_ok(m, sf) || sf.is_one()) return false;
        Monomial si = s.spec_iota(s.ring()->collapse(m));
        if (si.is_one()) return false;
        const RingContext& rf = *s.full_target();
        const RingContext& ri = *s.iota_target();
        return is_right_negative(sf, rf) && is_right_negative(si, ri);
    };
    std::vector<Monomial> out;
    std::unordered_map<Monomial, int, MonomialHash> seen;
    std::vector<Monomial> layer{m0};
    seen.emplace(m0, 0);
    for (int g = 0; g <= grade_cap && !layer.empty(); ++g) {
        std::vector<Monomial> next;
        for (const auto& m : layer) {
            Monomial sf;
            bool full_dom = spec_ok(m, sf) && s.is_dominant(m, Coeff(1));
            bool iota_dom = s.is_dominant(m, Coeff(0, 1));
            if (full_dom || iota_dom) out.push_back(m);
            if (g == grade_cap) continue;
            if (m != m0 && both_right_negative(m)) continue;
            for (const auto& f : m.factors()) {
                if (f.e <= 0) continue;
                Monomial child = m / s.lowering_root(f.v.node, f.v.a, f.v.b);
                if (seen.emplace(child, g + 1).second) {
                    if (seen.size() > term_cap) throw ResourceError("term cap exceeded in D(m) search");
                    next.push_back(child);
                }
            }
        }
        layer = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace qtc
