#include <benchmark/benchmark.h>

#include "mss/gametheory.hpp"

namespace {

namespace game = mss::game;

void BM_Simulate(benchmark::State& state) {
    auto s = game::default_scenario();
    auto schedule = game::uniform_schedule(s);
    auto policy = game::default_policy();
    for (auto _ : state) {
        benchmark::DoNotOptimize(game::simulate(s, schedule, policy));
    }
}
BENCHMARK(BM_Simulate);

void BM_ShooterBestResponse(benchmark::State& state) {
    auto s = game::default_scenario();
    game::ScheduleGridSpec spec;
    spec.blocks = static_cast<int>(state.range(0));
    auto grid = game::schedule_grid(s, spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(game::shooter_best_response(s, game::default_policy(), grid));
    }
    state.counters["grid"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_ShooterBestResponse)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_DefenderBestResponse(benchmark::State& state) {
    auto s = game::default_scenario();
    auto schedule = game::uniform_schedule(s);
    auto grid = game::defender_grid({}, {});
    for (auto _ : state) {
        benchmark::DoNotOptimize(game::defender_best_response(s, schedule, grid));
    }
}
BENCHMARK(BM_DefenderBestResponse)->Unit(benchmark::kMicrosecond);

void BM_Calibrate(benchmark::State& state) {
    auto s = game::default_scenario();
    auto schedule = game::uniform_schedule(s);
    for (auto _ : state) {
        benchmark::DoNotOptimize(game::calibrate(s, schedule, game::default_policy(), 0.639));
    }
}
BENCHMARK(BM_Calibrate);

} // namespace
