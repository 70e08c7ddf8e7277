#include <benchmark/benchmark.h>

#include "rootclust/predicates.hpp"

namespace {

using namespace rootclust;

OraclePolynomial make_poly(int degree) {
    std::vector<RootSpec> roots;
    for (int i = 0; i < degree; ++i) {
        roots.push_back({ComplexRational(mpq_class(2 * i - degree, 3),
                                         mpq_class(i % 3 - 1, 7)),
                         1});
    }
    return OraclePolynomial::from_roots(roots, 1);
}

void BM_GraeffePelletStar(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    OraclePolynomial F = make_poly(n);
    Disc disc(ComplexDyadic(Dyadic(1, -2), Dyadic(0)), Dyadic(1, -1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(graeffe_pellet_star(F, disc, n));
    }
}
BENCHMARK(BM_GraeffePelletStar)->Arg(4)->Arg(8)->Arg(12);

void BM_ExclusionTest(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    OraclePolynomial F = make_poly(n);
    Frame frame = Frame::from_query_box(ComplexDyadic(Dyadic(0), Dyadic(0)), Dyadic(4));
    Box b{3, 1, 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(exclusion_test(F, frame, b));
    }
}
BENCHMARK(BM_ExclusionTest)->Arg(4)->Arg(8)->Arg(12);

void BM_GraeffeIterate(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    OraclePolynomial F = make_poly(n);
    LocalPolynomial local =
        localize(F, ComplexDyadic(Dyadic(0), Dyadic(0)), Dyadic(1), 128);
    int iters = graeffe_default_iterations(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(graeffe_iterate(local, iters));
    }
}
BENCHMARK(BM_GraeffeIterate)->Arg(4)->Arg(8)->Arg(12);

}  // namespace
