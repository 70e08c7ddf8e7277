#include <benchmark/benchmark.h>

#include "rootclust/solver.hpp"

namespace {

using namespace rootclust;

void BM_SolveWellSeparated(benchmark::State& state) {
    std::vector<RootSpec> roots = {
        {ComplexRational(mpq_class(1, 3), mpq_class(0)), 1},
        {ComplexRational(mpq_class(-4, 3), mpq_class(1, 7)), 2},
        {ComplexRational(mpq_class(5, 7), mpq_class(-6, 5)), 1},
    };
    OraclePolynomial F = OraclePolynomial::from_roots(roots, 1);
    ComplexDyadic center(Dyadic(0), Dyadic(0));
    Dyadic eps = Dyadic::pow2(-static_cast<long>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(F, center, Dyadic(4), eps));
    }
}
BENCHMARK(BM_SolveWellSeparated)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_SolveClusteredPair(benchmark::State& state) {
    std::vector<RootSpec> roots = {
        {ComplexRational(mpq_class(1), mpq_class(0)), 3},
        {ComplexRational(mpq_class(1) + mpq_class(1, 1 << 20), mpq_class(0)), 2},
    };
    OraclePolynomial F = OraclePolynomial::from_roots(roots, 1);
    ComplexDyadic center(Dyadic(0), Dyadic(0));
    Dyadic eps = Dyadic::pow2(-static_cast<long>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(F, center, Dyadic(4), eps));
    }
}
BENCHMARK(BM_SolveClusteredPair)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace
