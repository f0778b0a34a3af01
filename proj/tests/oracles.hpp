#pragma once

// Test-side reference computations. Nothing here calls into the library
// beyond plain data types, so the tests compare two independent routes.

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<int>>;
using Vec = std::vector<int>;

inline Matrix cartan_of(const std::string& type)
{
    const char f = type[0];
    const int n = std::stoi(type.substr(1));
    Matrix c(n, Vec(n, 0));
    for (int i = 0; i < n; ++i) c[i][i] = 2;
    for (int i = 0; i + 1 < n; ++i) c[i][i + 1] = c[i + 1][i] = -1;
    // C_2 is taken with node 1 long, C_n (n > 2) with node n long
    if (f == 'B' || (f == 'C' && n == 2)) c[n - 1][n - 2] = -2;
    if (f == 'C' && n > 2) c[n - 2][n - 1] = -2;
    if (f == 'G') c[1][0] = -3;
    return c;
}

inline Matrix transposed(const Matrix& m)
{
    Matrix t(m.size(), Vec(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) t[i][j] = m[j][i];
    return t;
}

// Positive roots in simple-root coordinates for C[i][j] = <a_i^vee, a_j>.
inline std::vector<Vec> positive_roots(const Matrix& c)
{
    const int n = static_cast<int>(c.size());
    std::set<Vec> seen;
    std::vector<Vec> layer;
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        layer.push_back(e);
        seen.insert(e);
    }
    std::vector<Vec> all = layer;
    while (!layer.empty()) {
        std::vector<Vec> next;
        for (const auto& r : layer) {
            for (int i = 0; i < n; ++i) {
                // p = how far down the i-string goes, <a_i^vee, r> = sum_j c[i][j] r_j
                int p = 0;
                Vec d = r;
                while (true) {
                    d[i] -= 1;
                    if (d[i] < 0 || !seen.count(d)) break;
                    ++p;
                }
                int pairing = 0;
                for (int j = 0; j < n; ++j) pairing += c[i][j] * r[j];
                if (p - pairing > 0) {
                    Vec up = r;
                    up[i] += 1;
                    if (seen.insert(up).second) next.push_back(up);
                }
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return all;
}

// Weyl dimension of the irreducible module with highest weight lambda given in
// fundamental-weight coordinates.
inline long long weyl_dim(const Matrix& c, const Vec& lambda)
{
    // coroots are the roots of the transposed matrix, in simple-coroot coordinates
    auto coroots = positive_roots(transposed(c));
    long long num = 1, den = 1;
    for (const auto& a : coroots) {
        long long x = 0, y = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            x += static_cast<long long>(a[i]) * (lambda[i] + 1);
            y += a[i];
        }
        num *= x;
        den *= y;
        long long g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    return num / den;
}

// Weyl group orbit of a weight (fundamental-weight coordinates).
inline std::set<Vec> weyl_orbit(const Matrix& c, const Vec& lambda)
{
    const int n = static_cast<int>(c.size());
    std::set<Vec> orbit{lambda};
    std::vector<Vec> todo{lambda};
    while (!todo.empty()) {
        Vec w = todo.back();
        todo.pop_back();
        for (int i = 0; i < n; ++i) {
            if (w[i] == 0) continue;
            // s_i(w) = w - w_i a_i, and a_i has coordinates c[j][i] on omega_j
            Vec s = w;
            for (int j = 0; j < n; ++j) s[j] -= w[i] * c[j][i];
            if (orbit.insert(s).second) todo.push_back(s);
        }
    }
    return orbit;
}

struct Line {
    long long lam = 0;
    long long mu = 0;
    std::map<std::tuple<int, int, int>, int> exps;  // (node, a, b) -> exponent
};

// Parses rendered `coeff ; monomial` lines with its own grammar.
inline std::vector<Line> parse_lines(const std::string& text)
{
    static const std::regex coeff(R"(^\s*(-?\d+)(?:([+-])(\d+)\*[A-Za-z]+)?\s*$)");
    static const std::regex var(R"([YZz]\[(\d+),\((-?\d+),(-?\d+)\)\](?:\^(-?\d+))?)");
    std::vector<Line> out;
    std::istringstream is(text);
    std::string raw;
    while (std::getline(is, raw)) {
        auto semi = raw.find(';');
        if (semi == std::string::npos) continue;
        std::smatch m;
        std::string cs = raw.substr(0, semi);
        if (!std::regex_match(cs, m, coeff)) continue;
        Line l;
        l.lam = std::stoll(m[1]);
        if (m[2].matched) l.mu = (m[2] == "-" ? -1 : 1) * std::stoll(m[3]);
        std::string ms = raw.substr(semi + 1);
        for (auto it = std::sregex_iterator(ms.begin(), ms.end(), var); it != std::sregex_iterator(); ++it) {
            const auto& v = *it;
            int e = v[4].matched ? std::stoi(v[4]) : 1;
            l.exps[{std::stoi(v[1]), std::stoi(v[2]), std::stoi(v[3])}] += e;
        }
        out.push_back(l);
    }
    return out;
}

// t = 1 on a forward interpolating character: drop t exponents, iota -> 1.
inline std::map<std::map<std::pair<int, int>, int>, long long> forward_at_t1(const std::vector<Line>& lines)
{
    std::map<std::map<std::pair<int, int>, int>, long long> out;
    for (const auto& l : lines) {
        std::map<std::pair<int, int>, int> m;
        for (const auto& [k, e] : l.exps) {
            auto& slot = m[{std::get<0>(k), std::get<1>(k)}];
            slot += e;
            if (slot == 0) m.erase({std::get<0>(k), std::get<1>(k)});
        }
        out[m] += l.lam + l.mu;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

// Weight multiset of a specialized character, 1-based node indices.
inline std::map<Vec, long long> weights(const std::vector<Line>& lines, int rank)
{
    std::map<Vec, long long> out;
    for (const auto& l : lines) {
        Vec w(rank, 0);
        for (const auto& [k, e] : l.exps) w[std::get<0>(k) - 1] += e;
        out[w] += l.lam + l.mu;
    }
    return out;
}

}  // namespace oracle
