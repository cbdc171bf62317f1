#include <benchmark/benchmark.h>

#include <random>

#include "mmph/cubical.hpp"
#include "mmph/filtration.hpp"
#include "mmph/persistence.hpp"

namespace {

mmph::EntryTimeGrid random_grid(int side, int levels, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> times(static_cast<std::size_t>(side) * side);
    for (int& t : times) {
        t = rng() % 100 < 25 ? mmph::EntryTimeGrid::never
                             : static_cast<int>(rng() % (levels + 1));
    }
    return mmph::EntryTimeGrid(side, side, std::move(times), levels, 0);
}

void BM_build_complex(benchmark::State& state) {
    const auto grid = random_grid(static_cast<int>(state.range(0)), 8, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmph::build_complex(grid));
    }
}
BENCHMARK(BM_build_complex)->Arg(128)->Arg(256);

void BM_compute_persistence(benchmark::State& state) {
    const auto grid = random_grid(static_cast<int>(state.range(0)), 8, 1);
    const auto complex = mmph::build_complex(grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmph::compute_persistence(complex));
    }
}
BENCHMARK(BM_compute_persistence)->Arg(128)->Arg(256);

void BM_betti_oracle(benchmark::State& state) {
    const auto grid = random_grid(static_cast<int>(state.range(0)), 8, 1);
    const auto level = grid.level_set(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmph::betti_oracle(level));
    }
}
BENCHMARK(BM_betti_oracle)->Arg(256);

}  // namespace
