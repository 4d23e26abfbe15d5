#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "reflab/algebra.hpp"
#include "reflab/filter.hpp"
#include "reflab/mahler.hpp"
#include "reflab/refinable.hpp"

using namespace reflab;

namespace {

Filter box() {
    return make_filter(2.0, {Complex(1, 0), Complex(1, 0)},
                       {Translation::real(0), Translation::real(1)});
}

std::shared_ptr<const AlgebraicContext> golden_ctx() {
    return std::make_shared<AlgebraicContext>(
        build_context(validate_min_poly({BigInt(-1), BigInt(-1)})));
}

} // namespace

static void BM_EvalFhatBox(benchmark::State& state) {
    RefinableEvaluator e = make_evaluator(box());
    double y = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(eval_fhat(e, y + 0.37));
}
BENCHMARK(BM_EvalFhatBox)->Arg(1)->Arg(100)->Arg(10000);

static void BM_EvalFhatBernoulli(benchmark::State& state) {
    RefinableEvaluator e = make_evaluator(bernoulli_filter(golden_ctx()));
    double y = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(eval_fhat(e, y + 0.37));
}
BENCHMARK(BM_EvalFhatBernoulli)->Arg(1)->Arg(100)->Arg(10000);

static void BM_LineMean(benchmark::State& state) {
    Filter f = box();
    double L = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bohr_mean_log_modulus(f, {L / 2, L}));
}
BENCHMARK(BM_LineMean)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_TorusMean(benchmark::State& state) {
    TrigPolynomial P;
    P.basis = {1.0, std::sqrt(2.0)};
    P.terms = {{Complex(1.0 / 3, 0), {0, 0}},
               {Complex(1.0 / 3, 0), {1, 0}},
               {Complex(1.0 / 3, 0), {0, 1}}};
    auto n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(mahler_torus_mean(P, n, 1e-8, 1));
}
BENCHMARK(BM_TorusMean)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

static void BM_JensenLehmer(benchmark::State& state) {
    std::vector<Complex> lehmer = {{1, 0},  {1, 0},  {0, 0}, {-1, 0}, {-1, 0}, {-1, 0},
                                   {-1, 0}, {-1, 0}, {0, 0}, {1, 0},  {1, 0}};
    for (auto _ : state) benchmark::DoNotOptimize(mahler_jensen(lehmer));
}
BENCHMARK(BM_JensenLehmer);

BENCHMARK_MAIN();
