#include <benchmark/benchmark.h>

#include <cstddef>
#include <map>

#include "invop/apply_plan.hpp"
#include "invop/bench.hpp"
#include "invop/dense.hpp"
#include "invop/grid.hpp"
#include "invop/iterative.hpp"
#include "invop/quant.hpp"

namespace {

using namespace invop;

struct Fixture {
    Grid2D grid;
    DenseMatrix inverse;
    std::vector<double> rhs;
};

const Fixture& fixture(std::size_t n) {
    static std::map<std::size_t, Fixture> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        const Grid2D g = Grid2D::square(n);
        it = cache.emplace(n, Fixture{g, compute_inverse(g), assemble_rhs(g, test_problem(g))}).first;
    }
    return it->second;
}

void set_counters(benchmark::State& state, const OpCounters& c) {
    state.counters["mult"] = static_cast<double>(c.multiplications);
    state.counters["add"] = static_cast<double>(c.additions);
}

void BM_ApplyDense(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    ApplyResult r;
    for (auto _ : state) {
        r = apply_dense(f.inverse, f.rhs);
        benchmark::DoNotOptimize(r.values.data());
    }
    set_counters(state, r.counters);
}

void BM_ApplyNaiveQuantized(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    const auto q = quantize(f.inverse, static_cast<int>(state.range(1)));
    ApplyResult r;
    for (auto _ : state) {
        r = apply_naive_quantized(q, f.rhs);
        benchmark::DoNotOptimize(r.values.data());
    }
    set_counters(state, r.counters);
}

void BM_ApplyPlan(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    const auto plan = build_plan(quantize(f.inverse, static_cast<int>(state.range(1))));
    ApplyResult r;
    for (auto _ : state) {
        r = invop::apply(plan, f.rhs);
        benchmark::DoNotOptimize(r.values.data());
    }
    set_counters(state, r.counters);
}

void BM_BuildPlan(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    const auto q = quantize(f.inverse, static_cast<int>(state.range(1)));
    for (auto _ : state) {
        auto plan = build_plan(q);
        benchmark::DoNotOptimize(plan);
    }
}

void BM_GaussSeidel(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    IterativeReport r;
    for (auto _ : state) {
        r = gauss_seidel_solve(f.grid, f.rhs, 1e-6, 10'000'000);
        benchmark::DoNotOptimize(r.solution.data());
    }
    state.counters["operations"] = static_cast<double>(r.operations);
}

void BM_Invert(benchmark::State& state) {
    const auto op = build_uniform(Grid2D::square(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        auto inv = invert(op);
        benchmark::DoNotOptimize(inv);
    }
}

void quantized_args(benchmark::internal::Benchmark* b) {
    for (const int n : {11, 21, 41}) {
        for (const int m : {2, 4, 6}) b->Args({n, m});
    }
}

}  // namespace

BENCHMARK(BM_ApplyDense)->Arg(11)->Arg(21)->Arg(41);
BENCHMARK(BM_ApplyNaiveQuantized)->Apply(quantized_args);
BENCHMARK(BM_ApplyPlan)->Apply(quantized_args);
BENCHMARK(BM_BuildPlan)->Apply(quantized_args);
BENCHMARK(BM_GaussSeidel)->Arg(11)->Arg(21)->Arg(41);
BENCHMARK(BM_Invert)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
