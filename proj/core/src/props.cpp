#include "qtchar/props.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace qtc {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

CheckResult make_check(const std::string& name, const std::string& locus, bool pass, const std::string& detail)
{
    return {name, locus, pass, detail};
}

struct KRRun {
    Monomial m;
    bool skipped = false;
    std::string why;
    DualPair pair;
};

std::string kr_name(const PropCase& c, const KRSpec& k)
{
    std::ostringstream os;
    os << c.name() << " kr " << k.node + 1 << ':' << k.k << ':' << k.a.q << ':' << k.a.t;
    return os.str();
}

// KR runs are shared between suites; the cache is keyed by case and spec.
const KRRun& kr_run(const PropCase& c, const KRSpec& k, const PropOptions& opt)
{
    static std::mutex mu;
    static std::map<std::string, KRRun> cache;
    const std::string key = kr_name(c, k) + " cap " + std::to_string(opt.reverse_term_cap);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    KRRun r;
    Scheme s = c.scheme();
    r.m = kr_interp_monomial(s, k);
    EngineOptions eo = opt.engine;
    if (!s.forward()) eo.term_cap = std::min(eo.term_cap, opt.reverse_term_cap);
    try {
        r.pair = dual_pair_for_kr(s, k, eo);
    } catch (const ResourceError& e) {
        r.skipped = true;
        r.why = e.what();
    }
    return cache.emplace(key, std::move(r)).first->second;
}

std::vector<KRSpec> kr_specs(const Scheme& s, int max_k)
{
    std::vector<KRSpec> out;
    for (int i = 0; i < s.rank(); ++i)
        for (int k = 1; k <= max_k; ++k) out.push_back({i, k, {0, 0}});
    return out;
}

// Random products of one or two units, kept small enough for quick runs.
std::vector<Monomial> random_dominant(const Scheme& s, int count, const PropOptions& opt, Rng& rng)
{
    std::vector<long long> fund(s.rank());
    for (int i = 0; i < s.rank(); ++i) {
        auto d = interp_char_F(s, s.unit(i, {0, 0}), Coeff(1), opt.engine).poly.dims();
        fund[i] = static_cast<long long>(std::max(d.first, d.second));
    }
    std::vector<Monomial> out;
    while (static_cast<int>(out.size()) < count) {
        const int n = uniform(rng, 1, 2);
        Monomial m;
        long long size = 1;
        for (int j = 0; j < n; ++j) {
            int i = uniform(rng, 0, s.rank() - 1);
            m *= s.unit(i, {uniform(rng, 0, 8), uniform(rng, 0, 4)});
            size *= fund[i];
        }
        if (size <= opt.random_size_cap) out.push_back(m);
    }
    return out;
}

std::string short_render(const Monomial& m, const RingContext& ring)
{
    std::string r = render_monomial(m, ring);
    return r.size() > 120 ? r.substr(0, 117) + "..." : r;
}

long long height_in(const Scheme& s, const RingContext& ring, const Monomial& m)
{
    return ring.kind == RingKind::SpecQ ? s.q_height(m) : s.t_height(m);
}

bool right_negative_below_top(const CharPoly& p, const Monomial& top, std::string& bad)
{
    for (const auto& [m, c] : p.full()) {
        if (m == top) continue;
        if (m.is_one() || !is_right_negative(m, *p.ring())) {
            bad = render_monomial(m, *p.ring());
            return false;
        }
    }
    return true;
}

}  // namespace

std::string PropCase::name() const
{
    return scheme().algebra().name() + " " + to_string(direction);
}

std::vector<PropCase> prop_cases()
{
    const auto F = Direction::Forward;
    const auto R = Direction::Reverse;
    return {
        {"A1", F, 1, 0}, {"A1", F, 2, 0}, {"A2", F, 1, 0}, {"A2", F, 2, 0}, {"A3", F, 0, 0},
        {"B2", F, 0, 0}, {"B3", F, 0, 0}, {"C2", F, 0, 0}, {"C3", F, 0, 0}, {"G2", F, 0, 0},
        {"A2", R, 1, 0}, {"A2", R, 2, 0}, {"C2", R, 0, 0}, {"B3", R, 0, 0}, {"C3", R, 0, 0},
        {"G2", R, 0, 0},
    };
}

Monomial q_top(const Scheme& s, const Monomial& m)
{
    return s.forward() ? s.spec_iota(s.ring()->collapse(m)) : s.spec_full(m);
}

Monomial t_top(const Scheme& s, const Monomial& m)
{
    return s.forward() ? s.spec_full(m) : s.spec_iota(s.ring()->collapse(m));
}

std::vector<CheckResult> prop_unique_dominant(const PropOptions& opt)
{
    std::vector<CheckResult> out;
    Rng rng(opt.seed);
    for (const auto& c : prop_cases()) {
        Scheme s = c.scheme();
        int good = 0;
        std::string detail;
        for (const auto& m : random_dominant(s, opt.random_monomials, opt, rng)) {
            auto F = interp_char_F(s, m, Coeff(1), opt.engine);
            auto dom = dominant_terms(s, F.poly);
            if (dom.size() == 1 && dom[0].m == m && dom[0].c == Coeff(1))
                ++good;
            else if (detail.empty())
                detail = "F(" + short_render(m, *s.ring()) + ") has " + std::to_string(dom.size()) + " dominant terms";
        }
        if (detail.empty()) detail = std::to_string(good) + " random dominant monomials";
        out.push_back(make_check("unique dominant monomial: " + c.name(), "uniqueness of F(m)",
                                 good == opt.random_monomials, detail));
    }
    return out;
}

std::vector<CheckResult> prop_specialization_oracle(const PropOptions& opt)
{
    std::vector<CheckResult> out;
    for (const auto& c : prop_cases()) {
        Scheme s = c.scheme();
        int checked = 0, skipped = 0;
        std::string detail;
        for (const auto& k : kr_specs(s, opt.max_k)) {
            const KRRun& run = kr_run(c, k, opt);
            if (run.skipped) {
                ++skipped;
                continue;
            }
            CharPoly pq = s.specialize_q(run.pair.interp.poly);
            CharPoly pt = s.specialize_t(run.pair.interp.poly);
            EngineOptions eo = opt.engine;
            CharPoly oq = plain_fm_char(s, q_top(s, run.m), PlainRing::Q, eo).poly;
            CharPoly ot = plain_fm_char(s, t_top(s, run.m), PlainRing::T, eo).poly;
            ++checked;
            if (pq != oq && detail.empty()) detail = kr_name(c, k) + ": q-specialization differs from plain FM";
            if (pt != ot && detail.empty()) detail = kr_name(c, k) + ": t-specialization differs from twisted FM";
        }
        bool pass = detail.empty();
        if (pass) {
            detail = std::to_string(checked) + " KR specs";
            if (skipped) detail += ", " + std::to_string(skipped) + " skipped over the term cap";
        }
        out.push_back(make_check("specialization oracle: " + c.name(), "specializations of F agree with FM", pass,
                                 detail));
    }
    return out;
}

std::vector<CheckResult> prop_kernel_membership(const PropOptions& opt)
{
    std::vector<CheckResult> out;
    Rng rng(opt.seed + 1);
    for (const auto& c : prop_cases()) {
        Scheme s = c.scheme();
        std::vector<Monomial> ms = random_dominant(s, std::max(1, opt.random_monomials / 4), opt, rng);
        for (const auto& k : kr_specs(s, std::min(opt.max_k, 2))) ms.push_back(kr_interp_monomial(s, k));
        std::string detail;
        for (const auto& m : ms) {
            auto F = interp_char_F(s, m, Coeff(1), opt.engine);
            for (int i = 0; i < s.rank() && detail.empty(); ++i) {
                auto tr = in_kernel_i(s, F.poly, i);
                if (tr.verdict != KernelVerdict::Yes)
                    detail = "F(" + short_render(m, *s.ring()) + ") fails node " + std::to_string(i + 1);
            }
        }
        bool pass = detail.empty();
        if (pass) detail = std::to_string(ms.size()) + " characters, every node";
        out.push_back(make_check("kernel membership: " + c.name(), "F lies in every K_i", pass, detail));
    }
    return out;
}

std::vector<CheckResult> prop_quotient_oracle(const PropOptions& opt)
{
    std::vector<CheckResult> out;
    Rng rng(opt.seed + 2);
    for (const auto& c : prop_cases()) {
        Scheme s = c.scheme();
        const auto& alg = s.algebra();
        const RingPtr& ring = s.ring();
        const Coeff iota = Coeff::iota();
        const Coeff co_iota(1, -1);
        auto rand_unit_mono = [&](int max_units) {
            Monomial m;
            int n = uniform(rng, 0, max_units);
            for (int j = 0; j < n; ++j)
                m *= s.unit(uniform(rng, 0, s.rank() - 1), {uniform(rng, -4, 8), uniform(rng, -2, 4)});
            return m;
        };
        auto rand_coeff = [&]() {
            Coeff k(uniform(rng, -3, 3), uniform(rng, -3, 3));
            return k.is_zero() ? Coeff(1) : k;
        };
        // Pairs identified by the iota component and by the (1-iota) component.
        auto iota_pair = [&](int i, SpectralIndex a) {
            return s.forward() ? std::pair{s.unit(i, a), s.unit(i, {a.q, a.t + 2})}
                               : std::pair{s.unit(i, a), s.unit(i, {a.q + 2 * alg.lacing, a.t})};
        };
        auto full_pair = [&](int i, SpectralIndex a) {
            return s.forward() ? std::pair{s.unit(i, a), s.unit(i, {a.q + 2 * alg.lacing, a.t})}
                               : std::pair{s.unit(i, a), s.unit(i, {a.q, a.t + 2})};
        };
        auto rand_index = [&]() { return SpectralIndex{uniform(rng, -4, 8), uniform(rng, -2, 4)}; };
        auto add_generator = [&](std::vector<Term>& ts) {
            Monomial M = rand_unit_mono(1);
            Coeff k = rand_coeff();
            int i = uniform(rng, 0, s.rank() - 1);
            switch (uniform(rng, 0, 3)) {
            case 0:  // iota (iota - 1)
                ts.push_back({M, k * iota * Coeff(-1, 1)});
                break;
            case 1: {  // iota (Y_a - Y_a') on single variables
                SpectralIndex a = rand_index();
                Var v{i, a.q, a.t};
                Var w = s.forward() ? Var{i, a.q, a.t + 1} : Var{i, a.q + 2 * alg.lacing, a.t};
                ts.push_back({M * Monomial::var(v.node, v.a, v.b), k * iota});
                ts.push_back({M * Monomial::var(w.node, w.a, w.b), -(k * iota)});
                break;
            }
            case 2: {  // (1 - iota) (U_a - U_a')
                auto [u, u2] = full_pair(i, rand_index());
                ts.push_back({M * u, k * co_iota});
                ts.push_back({M * u2, -(k * co_iota)});
                break;
            }
            default: {  // (U_a - U_a')(U_b - U_b'), one factor per component
                auto [u, u2] = iota_pair(i, rand_index());
                auto [v, v2] = full_pair(uniform(rng, 0, s.rank() - 1), rand_index());
                ts.push_back({M * u * v, k});
                ts.push_back({M * u * v2, -k});
                ts.push_back({M * u2 * v, -k});
                ts.push_back({M * u2 * v2, k});
                break;
            }
            }
        };
        auto add_perturbation = [&](std::vector<Term>& ts) {
            Monomial M = rand_unit_mono(1);
            Coeff k = Coeff(uniform(rng, 1, 3));
            int i = uniform(rng, 0, s.rank() - 1);
            switch (uniform(rng, 0, 2)) {
            case 0: {
                auto [u, u2] = full_pair(i, rand_index());
                ts.push_back({M * u, k * iota});
                ts.push_back({M * u2, -(k * iota)});
                break;
            }
            case 1: {
                auto [u, u2] = iota_pair(i, rand_index());
                ts.push_back({M * u, k * co_iota});
                ts.push_back({M * u2, -(k * co_iota)});
                break;
            }
            default:
                ts.push_back({M * s.unit(i, rand_index()), k});
            }
        };
        int agree = 0, equal_cases = 0;
        std::string detail;
        for (int n = 0; n < opt.normal_form_samples; ++n) {
            std::vector<Term> base;
            for (int j = uniform(rng, 1, 4); j > 0; --j) base.push_back({rand_unit_mono(2), rand_coeff()});
            std::vector<Term> ts = base;
            for (int j = uniform(rng, 1, 3); j > 0; --j) add_generator(ts);
            const bool perturbed = n % 2 == 1;
            if (perturbed) add_perturbation(ts);
            std::shuffle(ts.begin(), ts.end(), rng);
            CharPoly p = normal_form(ring, ts);
            CharPoly b = normal_form(ring, base);
            const bool eq = p == b;
            const bool oracle = s.specialize_q(p) == s.specialize_q(b) && s.specialize_t(p) == s.specialize_t(b);
            if (!perturbed && !oracle && detail.empty())
                detail = "sample " + std::to_string(n) + ": generator combination is not in both kernels";
            if (eq == oracle)
                ++agree;
            else if (detail.empty())
                detail = "sample " + std::to_string(n) + ": normal form says " + (eq ? "equal" : "different") +
                         ", specializations say " + (oracle ? "equal" : "different");
            if (oracle) ++equal_cases;
        }
        bool pass = detail.empty();
        if (pass)
            detail = std::to_string(agree) + " samples agree (" + std::to_string(equal_cases) + " equal in the quotient)";
        out.push_back(make_check("quotient equality oracle: " + c.name(), "quotient relations of the interpolating ring",
                                 pass, detail));
    }
    return out;
}

std::vector<CheckResult> prop_unitriangular(const PropOptions& opt)
{
    std::vector<CheckResult> out;
    Rng rng(opt.seed + 3);
    for (const auto& c : prop_cases()) {
        Scheme s = c.scheme();
        const RingContext& rf = *s.full_target();
        const RingContext& ri = *s.iota_target();
        std::string detail;
        int done = 0;
        while (done < opt.product_samples) {
            std::vector<std::pair<int, SpectralIndex>> units;
            Monomial m;
            for (int j = 0; j < 2; ++j) {
                int i = uniform(rng, 0, s.rank() - 1);
                SpectralIndex a{uniform(rng, 0, 8), uniform(rng, 0, 4)};
                units.push_back({i, a});
                m *= s.unit(i, a);
            }
            CharPoly E = standard_product_E(s, units, opt.engine);
            if (E.term_count() > static_cast<std::size_t>(opt.random_size_cap) * 4) continue;
            ++done;
            auto d = decompose_K(s, E, opt.engine);
            bool lead = false;
            const long long hf = height_in(s, rf, s.spec_full(m));
            const long long hi = height_in(s, ri, s.spec_iota(s.ring()->collapse(m)));
            for (const auto& e : d.entries) {
                if (e.m == m) {
                    lead = e.c == Coeff(1);
                    continue;
                }
                bool lower = true;
                if (e.c.lam != 0) {
                    lower = s.compare_partial(e.m, m).order == Order::Less &&
                            height_in(s, rf, s.spec_full(e.m)) < hf;
                }
                if (e.c.lam + e.c.mu != 0)
                    lower = lower && height_in(s, ri, s.spec_iota(s.ring()->collapse(e.m))) < hi;
                if (!lower && detail.empty())
                    detail = "E(" + short_render(m, *s.ring()) + ") has entry " + short_render(e.m, *s.ring()) +
                             " not below the top";
            }
            if (!lead && detail.empty()) detail = "E(" + short_render(m, *s.ring()) + ") leading coefficient is not 1";
        }
        bool pass = detail.empty();
        if (pass) detail = std::to_string(done) + " two-factor products";
        out.push_back(make_check("unitriangular E/F decomposition: " + c.name(), "triangularity of E(m) in the F-basis",
                                 pass, detail));
    }
    return out;
}

std::vector<CheckResult> prop_order_independence(const PropOptions& opt)
{
    std::vector<CheckResult> out;
    Rng rng(opt.seed + 4);
    for (const auto& c : prop_cases()) {
        Scheme s = c.scheme();
        std::vector<Monomial> ms = random_dominant(s, 3, opt, rng);
        for (const auto& k : kr_specs(s, std::min(opt.max_k, 2))) ms.push_back(kr_interp_monomial(s, k));
        std::string detail;
        for (const auto& m : ms) {
            EngineOptions eo = opt.engine;
            eo.shuffle_seed = 0;
            CharPoly ref = interp_char_F(s, m, Coeff(1), eo).poly;
            for (int seed = 1; seed <= opt.shuffle_seeds && detail.empty(); ++seed) {
                eo.shuffle_seed = opt.seed + static_cast<std::uint64_t>(seed);
                if (!identical(interp_char_F(s, m, Coeff(1), eo).poly, ref))
                    detail = "F(" + short_render(m, *s.ring()) + ") depends on tie-breaking (seed " +
                             std::to_string(seed) + ")";
            }
        }
        bool pass = detail.empty();
        if (pass) detail = std::to_string(ms.size()) + " inputs x " + std::to_string(opt.shuffle_seeds) + " seeds";
        out.push_back(make_check("order independence: " + c.name(), "worklist tie-breaking", pass, detail));
    }
    return out;
}

std::vector<CheckResult> prop_affine_minuscule(const PropOptions& opt)
{
    std::vector<CheckResult> out;
    for (const auto& c : prop_cases()) {
        Scheme s = c.scheme();
        int checked = 0, skipped = 0;
        std::string detail;
        for (const auto& k : kr_specs(s, opt.max_k)) {
            const KRRun& run = kr_run(c, k, opt);
            if (run.skipped) {
                ++skipped;
                continue;
            }
            ++checked;
            const auto& rep = run.pair.report;
            std::string bad;
            if (!rep.ok() && detail.empty()) {
                detail = kr_name(c, k) + ":";
                for (const auto& n : rep.notes) detail += " " + n + ";";
                if (!rep.highest_outside_iota) detail += " highest monomial carries a pure iota coefficient;";
            }
            CharPoly pq = s.specialize_q(run.pair.interp.poly);
            CharPoly pt = s.specialize_t(run.pair.interp.poly);
            if (!right_negative_below_top(pq, q_top(s, run.m), bad) && detail.empty())
                detail = kr_name(c, k) + ": q-side monomial " + bad + " is not right-negative";
            if (!right_negative_below_top(pt, t_top(s, run.m), bad) && detail.empty())
                detail = kr_name(c, k) + ": t-side monomial " + bad + " is not right-negative";
        }
        bool pass = detail.empty();
        if (pass) {
            detail = std::to_string(checked) + " KR pairs";
            if (skipped) detail += ", " + std::to_string(skipped) + " skipped over the term cap";
        }
        out.push_back(make_check("affine-minuscule and right-negative: " + c.name(), "specializations of KR characters",
                                 pass, detail));
    }
    return out;
}

std::vector<CheckResult> prop_ordinary_duality(const PropOptions& opt)
{
    std::vector<CheckResult> out;
    for (const auto& c : prop_cases()) {
        if (c.direction != Direction::Forward) continue;
        Scheme s = c.scheme();
        int checked = 0;
        std::string detail;
        for (const auto& k : kr_specs(s, opt.max_k)) {
            const KRRun& run = kr_run(c, k, opt);
            if (run.skipped) continue;
            ++checked;
            auto r = ordinary_duality_check(s, run.pair);
            if (!r.nonnegative && detail.empty()) detail = kr_name(c, k) + ": negative surplus";
            if (!r.highest_match && detail.empty()) detail = kr_name(c, k) + ": highest weights differ";
        }
        bool pass = detail.empty();
        if (pass) detail = std::to_string(checked) + " KR pairs";
        out.push_back(make_check("ordinary duality: " + c.name(), "projected character dominates the dual", pass,
                                 detail));
    }
    return out;
}

SuiteReport run_props(const PropOptions& opt)
{
    SuiteReport rep;
    auto add = [&](std::vector<CheckResult> v) {
        for (auto& c : v) rep.checks.push_back(std::move(c));
    };
    add(prop_unique_dominant(opt));
    add(prop_specialization_oracle(opt));
    add(prop_kernel_membership(opt));
    add(prop_quotient_oracle(opt));
    add(prop_unitriangular(opt));
    add(prop_order_independence(opt));
    add(prop_affine_minuscule(opt));
    add(prop_ordinary_duality(opt));
    return rep;
}

SuiteReport verify_props(const EngineOptions& opt)
{
    PropOptions p;
    p.engine = opt;
    return run_props(p);
}

}  // namespace qtc
