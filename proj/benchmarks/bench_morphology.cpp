#include <benchmark/benchmark.h>

#include <random>

#include "mmph/image.hpp"
#include "mmph/morphology.hpp"

namespace {

mmph::GrayscaleImage random_image(int side, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<int> values(static_cast<std::size_t>(side) * side);
    for (int& v : values) v = static_cast<int>(rng() % 256);
    return mmph::GrayscaleImage(side, side, std::move(values), 255);
}

void BM_erode_square(benchmark::State& state) {
    const auto img = random_image(static_cast<int>(state.range(0)), 1);
    const auto se = mmph::square_se(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmph::erode(img, se));
    }
}
BENCHMARK(BM_erode_square)->Args({256, 5})->Args({256, 15})->Args({512, 15});

void BM_erode_reference_square(benchmark::State& state) {
    const auto img = random_image(static_cast<int>(state.range(0)), 1);
    const auto se = mmph::square_se(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmph::erode_reference(img, se));
    }
}
BENCHMARK(BM_erode_reference_square)->Args({256, 5})->Args({256, 15});

void BM_dilate_square(benchmark::State& state) {
    const auto img = random_image(static_cast<int>(state.range(0)), 2);
    const auto se = mmph::square_se(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmph::dilate(img, se));
    }
}
BENCHMARK(BM_dilate_square)->Args({256, 15})->Args({512, 15});

void BM_open_binary(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const int side = static_cast<int>(state.range(0));
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(side) * side);
    for (auto& b : bits) b = rng() % 100 < 55 ? 0 : 1;
    const mmph::BinaryImage img(side, side, std::move(bits));
    const auto se = mmph::square_se(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mmph::open(img, se));
    }
}
BENCHMARK(BM_open_binary)->Args({512, 5});

}  // namespace
