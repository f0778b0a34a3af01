#include "qtchar/liedata.hpp"

#include <boost/rational.hpp>

#include <numeric>

namespace qtc {

const char* to_string(Direction d) { return d == Direction::Forward ? "forward" : "reverse"; }

Direction parse_direction(const std::string& s)
{
    if (s == "forward") return Direction::Forward;
    if (s == "reverse") return Direction::Reverse;
    throw AlgebraError("unknown direction '" + s + "'");
}

std::string AlgebraSpec::name() const
{
    std::string out = type;
    if (type[0] == 'A') out += " labels=" + std::to_string(labels[0]) + " r=" + std::to_string(lacing);
    return out;
}

namespace {

std::vector<std::vector<int>> type_a(int n)
{
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        c[i][i] = 2;
        if (i + 1 < n) c[i][i + 1] = c[i + 1][i] = -1;
    }
    return c;
}

void check_symmetrizable(const AlgebraSpec& s)
{
    for (int i = 0; i < s.rank; ++i) {
        if (s.cartan[i][i] != 2) throw AlgebraError("diagonal Cartan entry is not 2");
        for (int j = 0; j < s.rank; ++j) {
            if (i != j && s.cartan[i][j] > 0) throw AlgebraError("positive off-diagonal Cartan entry");
            if (s.labels[i] * s.cartan[i][j] != s.labels[j] * s.cartan[j][i])
                throw AlgebraError("labels do not symmetrize the Cartan matrix");
        }
    }
}

}  // namespace

std::vector<int> phi_coloring(const std::vector<std::vector<int>>& c)
{
    const int n = static_cast<int>(c.size());
    std::vector<int> phi(n, -1);
    std::vector<int> stack;
    auto propagate = [&](int start) {
        stack.push_back(start);
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (j == i || c[i][j] == 0) continue;
                int want = 1 - phi[i];
                if (phi[j] == -1) {
                    phi[j] = want;
                    stack.push_back(j);
                } else if (phi[j] != want) {
                    throw AlgebraError("phi constraints are unsatisfiable");
                }
            }
        }
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && c[i][j] == -2) {
                if (phi[i] == 0) throw AlgebraError("phi constraints are unsatisfiable");
                if (phi[i] == -1) {
                    phi[i] = 1;
                    propagate(i);
                }
            }
    for (int i = 0; i < n; ++i)
        if (phi[i] == -1) {
            phi[i] = 0;
            propagate(i);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && c[i][j] == -2 && phi[i] != 1) throw AlgebraError("phi constraints are unsatisfiable");
    return phi;
}

AlgebraSpec build_algebra(const std::string& type_id, const BuildOptions& opt)
{
    if (type_id.size() < 2) throw AlgebraError("bad type id '" + type_id + "'");
    char fam = type_id[0];
    int n = 0;
    try {
        n = std::stoi(type_id.substr(1));
    } catch (const std::exception&) {
        throw AlgebraError("bad type id '" + type_id + "'");
    }
    if (n < 1 || n > 8) throw AlgebraError("rank must be between 1 and 8");

    AlgebraSpec s;
    s.type = type_id;
    s.rank = n;
    s.direction = opt.direction;
    s.cartan = type_a(n);

    switch (fam) {
    case 'A': {
        int k = opt.label_multiplier ? opt.label_multiplier : 1;
        int r = opt.lacing ? opt.lacing : std::max(k, 2);
        if (k < 1 || k > 3) throw AlgebraError("labels must lie in {1,2,3}");
        if (r < 2 || r > 3) throw AlgebraError("lacing must be 2 or 3");
        if (k != 1 && k != r) throw AlgebraError("uniform labels must be 1 or equal to the lacing");
        s.labels.assign(n, k);
        s.lacing = r;
        s.untwisted_name = "A_" + std::to_string(n) + "^(1)";
        s.twisted_name = s.untwisted_name;
        break;
    }
    case 'B':
    case 'C': {
        if (n < 2) throw AlgebraError("B_n and C_n need rank >= 2");
        s.lacing = 2;
        if (fam == 'B' || n == 2) {
            // B_n; C_2 is taken with node 1 long.
            s.cartan[n - 1][n - 2] = -2;
            s.labels.assign(n, 2);
            s.labels[n - 1] = 1;
        } else {
            s.cartan[n - 2][n - 1] = -2;
            s.labels.assign(n, 1);
            s.labels[n - 1] = 2;
        }
        if (fam == 'B') {
            s.untwisted_name = "B_" + std::to_string(n) + "^(1)";
            s.twisted_name = "A_" + std::to_string(2 * n - 1) + "^(2)";
        } else {
            s.untwisted_name = "C_" + std::to_string(n) + "^(1)";
            s.twisted_name = "D_" + std::to_string(n + 1) + "^(2)";
            if (n == 2) s.twisted_name = "A_3^(2)";
        }
        break;
    }
    case 'F': {
        if (n != 4) throw AlgebraError("F_n exists only for n = 4");
        s.lacing = 2;
        s.cartan[2][1] = -2;
        s.labels = {2, 2, 1, 1};
        s.untwisted_name = "F_4^(1)";
        s.twisted_name = "E_6^(2)";
        break;
    }
    case 'G': {
        if (n != 2) throw AlgebraError("G_n exists only for n = 2");
        s.lacing = 3;
        s.cartan[1][0] = -3;
        s.labels = {3, 1};
        s.untwisted_name = "G_2^(1)";
        s.twisted_name = "D_4^(3)";
        break;
    }
    case 'D':
    case 'E':
        throw AlgebraError("simply-laced type " + type_id + " has no twisted dual in scope");
    default:
        throw AlgebraError("unknown type id '" + type_id + "'");
    }
    if (fam != 'A' && opt.label_multiplier > 1) throw AlgebraError("label multipliers apply to A_n only");

    check_symmetrizable(s);
    s.phi = phi_coloring(s.cartan);
    s.rdual.resize(n);
    for (int i = 0; i < n; ++i) s.rdual[i] = 1 + s.lacing - s.labels[i];
    return s;
}

std::optional<Weight> project_weight(const AlgebraSpec& spec, const Weight& lambda)
{
    Weight out(lambda.size());
    for (size_t i = 0; i < lambda.size(); ++i) {
        if (lambda[i] % spec.rdual[i] != 0) return std::nullopt;
        out[i] = lambda[i] / spec.rdual[i];
    }
    return out;
}

std::vector<std::vector<int>> transpose(const std::vector<std::vector<int>>& m)
{
    std::vector<std::vector<int>> t(m.size(), std::vector<int>(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) t[j][i] = m[i][j];
    return t;
}

std::vector<long long> height_vector(const std::vector<std::vector<int>>& m)
{
    // Solve x^T M = (1,...,1) over Q, then clear denominators.
    using Q = boost::rational<long long>;
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<Q>> a(n, std::vector<Q>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = m[j][i];
        a[i][n] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (a[piv][col] == Q(0)) ++piv;
        std::swap(a[piv], a[col]);
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == Q(0)) continue;
            Q f = a[r][col] / a[col][col];
            for (int c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    long long den = 1;
    std::vector<Q> x(n);
    for (int i = 0; i < n; ++i) {
        x[i] = a[i][n] / a[i][i];
        den = std::lcm(den, x[i].denominator());
    }
    std::vector<long long> h(n);
    for (int i = 0; i < n; ++i) h[i] = x[i].numerator() * (den / x[i].denominator());
    return h;
}

}  // namespace qtc
