#include "qtchar/props.hpp"

#include <benchmark/benchmark.h>

using namespace qtc;

namespace {

void BM_KRChar(benchmark::State& st, const char* algebra, Direction dir, const char* kr)
{
    Scheme s = make_scheme(algebra, dir);
    Monomial m = kr_interp_monomial(s, parse_kr(kr));
    for (auto _ : st) {
        auto r = interp_char_F(s, m);
        benchmark::DoNotOptimize(r.poly);
    }
}

void BM_PlainQ(benchmark::State& st, const char* algebra, const char* kr)
{
    Scheme s = make_scheme(algebra, Direction::Forward);
    Monomial m = q_top(s, kr_interp_monomial(s, parse_kr(kr)));
    for (auto _ : st) {
        auto r = plain_fm_char(s, m, PlainRing::Q);
        benchmark::DoNotOptimize(r.poly);
    }
}

void BM_Product(benchmark::State& st)
{
    Scheme s = make_scheme("G2", Direction::Forward);
    CharPoly a = fundamental_char(s, 0, {0, 0}).poly;
    CharPoly b = fundamental_char(s, 1, {9, 5}).poly;
    for (auto _ : st) benchmark::DoNotOptimize(a * b);
}

void BM_Kernel(benchmark::State& st)
{
    Scheme s = make_scheme("C3", Direction::Forward);
    CharPoly p = interp_char_F(s, kr_interp_monomial(s, parse_kr("3:2:0:0"))).poly;
    for (auto _ : st) benchmark::DoNotOptimize(in_kernel_i(s, p, 2));
}

void BM_Equality(benchmark::State& st)
{
    Scheme s = make_scheme("G2", Direction::Reverse);
    CharPoly a = interp_char_F(s, kr_interp_monomial(s, parse_kr("2:1:0:0"))).poly;
    CharPoly b = normal_form(s.ring(), a.terms());
    for (auto _ : st) benchmark::DoNotOptimize(a == b);
}

}  // namespace

BENCHMARK_CAPTURE(BM_KRChar, C2_node1, "C2", Direction::Forward, "1:1:0:0");
BENCHMARK_CAPTURE(BM_KRChar, C3_node3, "C3", Direction::Forward, "3:1:0:0");
BENCHMARK_CAPTURE(BM_KRChar, G2_node1, "G2", Direction::Forward, "1:1:0:0");
BENCHMARK_CAPTURE(BM_KRChar, G2_node2_k2, "G2", Direction::Forward, "2:2:0:0");
BENCHMARK_CAPTURE(BM_KRChar, G2_rev_node2, "G2", Direction::Reverse, "2:1:0:0");
BENCHMARK_CAPTURE(BM_KRChar, B3_node2_k2, "B3", Direction::Forward, "2:2:0:0");
BENCHMARK_CAPTURE(BM_PlainQ, G2_node1, "G2", "1:1:0:0");
BENCHMARK_CAPTURE(BM_PlainQ, B3_node2_k2, "B3", "2:2:0:0");
BENCHMARK(BM_Product);
BENCHMARK(BM_Kernel);
BENCHMARK(BM_Equality);
BENCHMARK_MAIN();
