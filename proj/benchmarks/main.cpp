#include <benchmark/benchmark.h>

// benchmark_main ships as an LTO archive from a different compiler release.
BENCHMARK_MAIN();
