#include <benchmark/benchmark.h>

#include <random>

#include "mmph/diagram.hpp"

namespace {

mmph::PersistenceDiagram random_pd(int points, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    mmph::PersistenceDiagram pd;
    for (int i = 0; i < points; ++i) {
        const double birth = static_cast<double>(rng() % 64);
        const double death = birth + 1.0 + static_cast<double>(rng() % 32);
        pd.intervals.push_back({static_cast<int>(rng() % 2), birth, death});
    }
    pd.canonicalize();
    return pd;
}

void BM_bottleneck(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto a = random_pd(n, 1);
    const auto b = random_pd(n, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmph::bottleneck(a, b));
    }
}
BENCHMARK(BM_bottleneck)->Arg(16)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
