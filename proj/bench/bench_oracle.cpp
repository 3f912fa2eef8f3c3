// Grid oracle: serial reference vs the OpenMP kernel, plus the optimizer it checks.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "autocam/planner/grid_oracle.hpp"
#include "autocam/planner/planner.hpp"
#include "planner_fixtures.hpp"

namespace {

using namespace autocam;

std::vector<PlanningContext> contexts(const PlannerConfig& cfg, int n) {
    std::mt19937_64 rng(20240611);
    std::vector<PlanningContext> out;
    for (int i = 0; i < n; ++i) out.push_back(fixtures::random_context(rng, cfg));
    return out;
}

// Arg = grid step in centimetres / degrees.
GridResolution resolution(std::int64_t step) {
    const double s = static_cast<double>(step);
    return {s * std::numbers::pi / 180.0, s * std::numbers::pi / 180.0, s * 0.01};
}

void BM_OracleSerial(benchmark::State& state) {
    const PlannerConfig cfg;
    const auto ctxs = contexts(cfg, 8);
    const GridResolution res = resolution(state.range(0));
    std::size_t i = 0, points = 0;
    for (auto _ : state) {
        const GridResult r = grid_oracle_serial(ctxs[i++ % ctxs.size()], cfg, res);
        points += r.points;
        benchmark::DoNotOptimize(r.cost.total);
    }
    state.counters["points/s"] = benchmark::Counter(static_cast<double>(points), benchmark::Counter::kIsRate);
}

void BM_OracleOpenMP(benchmark::State& state) {
    const PlannerConfig cfg;
    const auto ctxs = contexts(cfg, 8);
    const GridResolution res = resolution(state.range(0));
    std::size_t i = 0, points = 0;
    for (auto _ : state) {
        const GridResult r = grid_oracle(ctxs[i++ % ctxs.size()], cfg, res);
        points += r.points;
        benchmark::DoNotOptimize(r.cost.total);
    }
    state.counters["points/s"] = benchmark::Counter(static_cast<double>(points), benchmark::Counter::kIsRate);
    state.counters["threads"] = omp_get_max_threads();
}

void BM_Planner(benchmark::State& state) {
    const PlannerConfig cfg;
    const auto ctxs = contexts(cfg, 64);
    std::size_t i = 0;
    for (auto _ : state) {
        const PlanResult r = plan_next_position(ctxs[i++ % ctxs.size()], cfg);
        benchmark::DoNotOptimize(r);
    }
}

} // namespace

BENCHMARK(BM_OracleSerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleOpenMP)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Planner)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
