#include "qtchar/langlands.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qtc {

namespace {

Weight weight_of(const Monomial& m, int rank)
{
    Weight w(rank, 0);
    for (const auto& f : m.factors()) w[f.v.node] += f.e;
    return w;
}

std::size_t count_dominant(const CharPoly& p)
{
    std::size_t n = 0;
    for (const auto& t : p.terms())
        if (std::all_of(t.m.factors().begin(), t.m.factors().end(), [](const Factor& f) { return f.e > 0; })) ++n;
    return n;
}

bool uniform_steps(std::vector<int> v, int step)
{
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
    if (v.size() < 2) return true;
    int d = v[1] - v[0];
    if (step != 0 && d != step) return false;
    for (std::size_t k = 1; k < v.size(); ++k)
        if (v[k] - v[k - 1] != d) return false;
    return true;
}

}  // namespace

KRSpec parse_kr(const std::string& text)
{
    KRSpec s;
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad KR field '" + item + "' in '" + text + "'");
        }
    }
    if (parts.size() != 4) throw std::invalid_argument("KR spec must be i:k:qexp:texp, got '" + text + "'");
    if (parts[0] < 1) throw std::invalid_argument("KR node must be >= 1");
    if (parts[1] < 1) throw std::invalid_argument("KR length must be >= 1");
    s.node = parts[0] - 1;
    s.k = parts[1];
    s.a = {parts[2], parts[3]};
    return s;
}

Monomial kr_interp_monomial(const Scheme& s, const KRSpec& spec)
{
    const auto& alg = s.algebra();
    if (spec.node < 0 || spec.node >= alg.rank) throw std::invalid_argument("KR node out of range");
    if (spec.k < 1) throw std::invalid_argument("KR length must be >= 1");
    const int dq = s.forward() ? 2 * alg.lacing : 2 * alg.labels[spec.node];
    Monomial m;
    for (int j = 0; j < spec.k; ++j) m *= s.unit(spec.node, {spec.a.q + j * dq, spec.a.t + 2 * j});
    return m;
}

DimsReport dims_report(const Scheme& s, const CharPoly& p)
{
    DimsReport d;
    auto [iota, full] = p.dims();
    if (!p.ring()->interpolating()) {
        d.dim_q = d.dim_t = full;
    } else if (s.forward()) {
        d.dim_q = iota;
        d.dim_t = full;
    } else {
        d.dim_q = full;
        d.dim_t = iota;
    }
    d.iota_free = p.ring()->interpolating() ? p.iota_free_count() : full;
    return d;
}

bool is_kr_string(const Monomial& m, const RingContext& ring, int step)
{
    if (m.is_one()) return false;
    const int node = m.factors().front().v.node;
    for (const auto& f : m.factors())
        if (f.v.node != node || f.e <= 0) return false;
    if (ring.kind == RingKind::SpecQ) {
        std::vector<int> qs;
        for (const auto& f : m.factors()) {
            for (int k = 0; k < f.e; ++k) qs.push_back(f.v.a);
        }
        return uniform_steps(qs, step);
    }
    std::map<int, std::vector<int>> classes;
    for (const auto& f : m.factors())
        for (int k = 0; k < f.e; ++k) classes[f.v.a].push_back(f.v.b);
    const auto& first = classes.begin()->second;
    for (auto& [c, ts] : classes) {
        std::sort(ts.begin(), ts.end());
        if (ts != first || !uniform_steps(ts, step)) return false;
    }
    return true;
}

DualPair make_pair_from(const Scheme& s, CharResult interp)
{
    DualPair p;
    CharPoly q = s.specialize_q(interp.poly);
    CharPoly t = s.specialize_t(interp.poly);
    p.source = s.forward() ? q : t;
    p.dual = s.forward() ? t : q;
    p.report.highest_outside_iota = interp.highest_coeff.lam != 0;
    p.report.source_minuscule = count_dominant(p.source) == 1;
    p.report.dual_minuscule = count_dominant(p.dual) == 1;
    p.report.dims = dims_report(s, interp.poly);
    p.interp = std::move(interp);
    return p;
}

DualPair dual_pair_for_kr(const Scheme& s, const KRSpec& spec, const EngineOptions& opt)
{
    Monomial m = kr_interp_monomial(s, spec);
    DualPair p = make_pair_from(s, interp_char_F(s, m, Coeff(1), opt));
    // Both sides of the dual pair share Pi(m) as highest monomial.
    Monomial dual_top = s.spec_full(m);
    const RingContext& dual_ring = *p.dual.ring();
    const int step = dual_ring.kind == RingKind::SpecQ ? 2 * s.algebra().labels[spec.node] : 0;
    p.report.dual_is_kr = is_kr_string(dual_top, dual_ring, step);
    if (!p.report.source_minuscule) p.report.notes.push_back("source specialization has several dominant monomials");
    if (!p.report.dual_minuscule) p.report.notes.push_back("dual specialization has several dominant monomials");
    if (!p.report.dual_is_kr) p.report.notes.push_back("dual highest monomial is not a KR string");
    return p;
}

DualPair tensor_dual(const Scheme& s, const std::vector<DualPair>& pairs)
{
    CharResult r;
    r.poly = CharPoly::monomial(s.ring(), Monomial());
    r.highest_coeff = Coeff(1);
    bool kr = true;
    for (const auto& p : pairs) {
        if (p.interp.poly.ring() != s.ring()) throw RingMismatch("tensor_dual needs pairs from one scheme");
        r.poly = r.poly * p.interp.poly;
        r.highest *= p.interp.highest;
        r.highest_coeff = r.highest_coeff * p.interp.highest_coeff;
        kr = kr && p.report.dual_is_kr;
    }
    r.dominant = dominant_terms(s, r.poly);
    r.provenance = Provenance::Product;
    DualPair out = make_pair_from(s, std::move(r));
    out.report.dual_is_kr = kr;
    out.report.notes.push_back("product of " + std::to_string(pairs.size()) + " pairs; simplicity assumed by caller");
    return out;
}

std::vector<Identity> t_system_check(const Scheme& s, int up_to_k, const EngineOptions& opt)
{
    if (s.algebra().type != "G2" || !s.forward())
        throw std::invalid_argument("the T-system check is implemented for forward G2 only");
    if (up_to_k < 1 || up_to_k > 3) throw std::invalid_argument("T-system check supports k in 1..3");
    auto dim_of = [&](const Monomial& m) { return plain_fm_char(s, m, PlainRing::Q, opt).poly.dims().second; };
    Int t11 = dim_of(Monomial::var(0, 0, 0));
    std::vector<Int> t2;
    Monomial str;
    for (int k = 1; k <= up_to_k; ++k) {
        str *= Monomial::var(1, 2 * (k - 1), 0);
        t2.push_back(dim_of(str));
    }
    std::vector<Identity> out;
    out.push_back({"T1(1) = 15", t11, 15});
    out.push_back({"T1(2) = 7", t2[0], 7});
    if (up_to_k == 1) out.push_back({"T1(2) = T1(2)", t2[0], t2[0]});
    if (up_to_k >= 2) out.push_back({"T2(2) = T1(2)^2 - T1(1)", t2[1], t2[0] * t2[0] - t11});
    if (up_to_k >= 3) {
        out.push_back({"T3(2) T1(2) = T2(2)^2 - T1(1)^2", t2[2] * t2[0], t2[1] * t2[1] - t11 * t11});
        auto F = interp_char_F(s, s.unit(1, {2, 0}), Coeff(1), opt);
        out.push_back({"T3(2) = dim of the q-side of F(W2)", dims_report(s, F.poly).dim_q, t2[2]});
    }
    return out;
}

WeightChar ordinary_character(const Scheme& s, const CharPoly& p)
{
    if (p.ring()->interpolating()) throw std::invalid_argument("ordinary_character needs a specialized polynomial");
    WeightChar out;
    for (const auto& [m, c] : p.full()) {
        auto& slot = out[weight_of(m, s.rank())];
        slot += c;
        if (slot == 0) out.erase(weight_of(m, s.rank()));
    }
    return out;
}

OrdinaryReport ordinary_duality_check(const Scheme& s, const DualPair& pair)
{
    if (!s.forward()) throw std::invalid_argument("ordinary duality is checked for forward pairs");
    OrdinaryReport r;
    for (const auto& [w, c] : ordinary_character(s, pair.source)) {
        auto pw = project_weight(s.algebra(), w);
        if (!pw) continue;
        r.projected[*pw] += c;
    }
    r.dual = ordinary_character(s, pair.dual);
    r.surplus = r.projected;
    for (const auto& [w, c] : r.dual) r.surplus[w] -= c;
    r.nonnegative = true;
    for (auto it = r.surplus.begin(); it != r.surplus.end();) {
        if (it->second < 0) r.nonnegative = false;
        if (it->second == 0)
            it = r.surplus.erase(it);
        else
            ++it;
    }
    const Monomial& m = pair.interp.highest;
    Weight hs = weight_of(s.spec_iota(s.ring()->collapse(m)), s.rank());
    Weight hd = weight_of(s.spec_full(m), s.rank());
    auto ph = project_weight(s.algebra(), hs);
    r.highest_match = ph && *ph == hd;
    return r;
}

}  // namespace qtc
