#include <benchmark/benchmark.h>

#include "mss/corpus_files.hpp"
#include "mss/forecast.hpp"

namespace {

const std::vector<mss::Incident>& incidents() {
    static const auto all = mss::load_corpus(mss::default_data_dir()).incidents;
    return all;
}

std::vector<double> centered_years(int n) {
    std::vector<double> x;
    for (int i = 0; i < n; ++i) {
        x.push_back(i - (n - 1) / 2.0);
    }
    return x;
}

void BM_Harness(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(mss::run_harness(incidents()));
    }
}
BENCHMARK(BM_Harness)->Unit(benchmark::kMillisecond);

void BM_FitZip(benchmark::State& state) {
    auto series = mss::yearly_series(incidents(), mss::SeriesLabel::Events);
    mss::YearEncoding enc;
    std::vector<double> x;
    for (int y = series.start_year; y <= series.end_year(); ++y) {
        x.push_back(enc.zip(y));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(mss::fit_zip(x, series.values));
    }
}
BENCHMARK(BM_FitZip);

void BM_FitSvr(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto x = centered_years(n);
    std::vector<double> y;
    for (int i = 0; i < n; ++i) {
        y.push_back((i * 7919) % 13 * 0.5);
    }
    mss::SvrParams params;
    params.kernel = state.range(1) == 0 ? mss::SvrKernel::Linear : mss::SvrKernel::Rbf;
    params.gamma = 12.0 / (n * n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mss::fit_svr(x, y, params));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_FitSvr)->ArgsProduct({{26, 52, 104}, {0, 1}});

} // namespace
