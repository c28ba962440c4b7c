#include <benchmark/benchmark.h>

#include "qlambert/builders.hpp"
#include "qlambert/catalog.hpp"
#include "qlambert/verifier.hpp"

using namespace qlambert;

static void BM_SeriesMultiply(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    std::vector<Rational> c;
    for (std::size_t k = 0; k <= d; ++k) {
        c.emplace_back(static_cast<std::int64_t>(k % 7) - 3, static_cast<std::int64_t>(k % 5) + 1);
    }
    const Series a(d, c);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * a);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeriesMultiply)->RangeMultiplier(2)->Range(16, 256)->Complexity();

static void BM_BuildA_ExponentZero(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    const Param<Rational> x{Rational(1, 2), 0}, y{Rational(-2, 3), 0}, z{Rational(1, 3), 1}, w{Rational(3, 4), 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_A<Rational>(x, y, z, w, Base{1}, d));
    }
}
BENCHMARK(BM_BuildA_ExponentZero)->Arg(20)->Arg(40)->Arg(60);

static void BM_BuildLstar(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_Lstar<Rational>({Rational(1, 2), 0}, {Rational(1, 3), 0}, Base{1}, d));
    }
}
BENCHMARK(BM_BuildLstar)->Arg(30)->Arg(60);

static void BM_SpecialY(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_special<Rational>(Special::Y, d));
    }
}
BENCHMARK(BM_SpecialY)->Arg(60)->Arg(120);

static void BM_DualBuildA(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    const Param<Dual> x{Dual(1, 1), 1}, y{Dual(1), 1}, z{Dual(1), 2}, w{Dual(1), 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_A<Dual>(x, y, z, w, Base{1}, d));
    }
}
BENCHMARK(BM_DualBuildA)->Arg(50);

static void BM_VerifyRecord(benchmark::State& state, const char* id)
{
    const auto* r = find_record(builtin_catalog(), id);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify(*r, {}));
    }
}
BENCHMARK_CAPTURE(BM_VerifyRecord, prop3, "prop3")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyRecord, adsy_eqid, "adsy-eqid")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VerifyRecord, f1_derivative, "f1-eq-f3-derivative")->Unit(benchmark::kMillisecond);

static void BM_VerifyCatalog(benchmark::State& state)
{
    VerifyOptions o;
    o.jobs = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_all(builtin_catalog(), o));
    }
}
BENCHMARK(BM_VerifyCatalog)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
