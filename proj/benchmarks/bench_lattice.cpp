#include <benchmark/benchmark.h>

#include "reflab/algebra.hpp"
#include "reflab/orbit.hpp"
#include "reflab/quasilattice.hpp"
#include "reflab/rational.hpp"

using namespace reflab;

namespace {

AlgebraicContext golden() { return build_context(validate_min_poly({BigInt(-1), BigInt(-1)})); }
AlgebraicContext quartic() {
    return build_context(
        validate_min_poly({BigInt(-1), BigInt(0), BigInt(0), BigInt(-1)}));
}

} // namespace

static void BM_WindowGolden(benchmark::State& state) {
    AlgebraicContext ctx = golden();
    AdmissibleVector sigma = make_admissible(ctx, {0.0, 1.0});
    double L = static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto w = enumerate_window(ctx, sigma, L);
        benchmark::DoNotOptimize(w.points.size());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WindowGolden)->Arg(100)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_WindowQuartic(benchmark::State& state) {
    AlgebraicContext ctx = quartic();
    AdmissibleVector sigma = make_admissible(ctx, {0.0, 0.9, 0.9, 0.9});
    double L = static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto w = enumerate_window(ctx, sigma, L);
        benchmark::DoNotOptimize(w.points.size());
    }
}
BENCHMARK(BM_WindowQuartic)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_TorusOrbit(benchmark::State& state) {
    AlgebraicContext ctx = golden();
    // denominator controls the reachable state count and so the cycle hunt
    std::vector<Rational> q = {Rational(1, state.range(0)), Rational(0)};
    for (auto _ : state) benchmark::DoNotOptimize(torus_orbit(ctx, q));
}
BENCHMARK(BM_TorusOrbit)->Arg(7)->Arg(1009)->Arg(65537);

static void BM_CycleMean(benchmark::State& state) {
    auto ctx = std::make_shared<AlgebraicContext>(golden());
    TrigPolynomial P = to_trig_poly(bernoulli_filter(ctx));
    OrbitResult orb = torus_orbit(*ctx, {Rational(1, 10007), Rational(0)});
    for (auto _ : state) benchmark::DoNotOptimize(cycle_mean_log(P, orb));
}
BENCHMARK(BM_CycleMean)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
