#include <benchmark/benchmark.h>

// The packaged benchmark_main archive is LTO-only; keep main local.
BENCHMARK_MAIN();
