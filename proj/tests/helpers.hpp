// Shared fixtures and independent reference implementations for the test
// suites. The references here deliberately avoid the library's internal
// shortcuts: reference_reduction is the textbook full boundary-matrix
// reduction and brute_bottleneck enumerates every partial matching.
#pragma once

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "mmph/cubical.hpp"
#include "mmph/diagram.hpp"
#include "mmph/filtration.hpp"
#include "mmph/image.hpp"
#include "mmph/morphology.hpp"
#include "mmph/persistence.hpp"

namespace mmph_test {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline mmph::BinaryImage random_binary(std::mt19937_64& rng, int w, int h,
                                       int black_percent) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(w) * h);
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(rng() % 100 < static_cast<std::uint64_t>(black_percent) ? 0 : 1);
    }
    return mmph::BinaryImage(w, h, std::move(bits));
}

inline mmph::GrayscaleImage random_grayscale(std::mt19937_64& rng, int w, int h,
                                             int max_value) {
    std::vector<int> values(static_cast<std::size_t>(w) * h);
    for (auto& v : values) v = static_cast<int>(rng() % (max_value + 1));
    return mmph::GrayscaleImage(w, h, std::move(values), max_value);
}

/// Random entry-time grid with `levels + 1` stages (times 0..levels), some
/// pixels never entering.
inline mmph::EntryTimeGrid random_grid(std::mt19937_64& rng, int w, int h, int levels,
                                       int never_percent = 25) {
    std::vector<int> times(static_cast<std::size_t>(w) * h);
    for (auto& t : times) {
        if (rng() % 100 < static_cast<std::uint64_t>(never_percent)) {
            t = mmph::EntryTimeGrid::never;
        } else {
            t = static_cast<int>(rng() % (levels + 1));
        }
    }
    return mmph::EntryTimeGrid(w, h, std::move(times), levels, 0);
}

inline mmph::StructuringElement random_se(std::mt19937_64& rng, int max_offset,
                                          int extra_points) {
    std::vector<mmph::StructuringElement::Offset> offsets{{0, 0}};
    const int span = 2 * max_offset + 1;
    for (int k = 0; k < extra_points; ++k) {
        offsets.push_back({static_cast<int>(rng() % span) - max_offset,
                           static_cast<int>(rng() % span) - max_offset});
    }
    return mmph::StructuringElement(std::move(offsets));
}

inline mmph::StructuringElement reflect(const mmph::StructuringElement& se) {
    std::vector<mmph::StructuringElement::Offset> offsets;
    for (const auto& [dx, dy] : se.offsets()) offsets.push_back({-dx, -dy});
    return mmph::StructuringElement(std::move(offsets));
}

// ------------------------------------------------------------------------
// 5x5 grayscale fixture with values 1..4 whose sublevel filtration walks
// the Betti sequence (2,1) -> (1,4) -> (1,2) -> (1,0):
//   dim 0: (1,2) and (1,inf)
//   dim 1: (1,4), (2,3), (2,3), (2,4)
inline mmph::GrayscaleImage fixture5x5() {
    return mmph::GrayscaleImage(5, 5,
                                {1, 1, 1, 2, 4,
                                 1, 4, 1, 3, 2,
                                 1, 1, 1, 2, 4,
                                 2, 4, 2, 3, 2,
                                 4, 2, 4, 2, 1},
                                4);
}

inline mmph::PersistenceDiagram fixture5x5_pd() {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    mmph::PersistenceDiagram pd;
    pd.intervals = {{0, 1, 2}, {0, 1, kInf}, {1, 1, 4}, {1, 2, 3}, {1, 2, 3}, {1, 2, 4}};
    pd.canonicalize();
    return pd;
}

// ------------------------------------------------------------------------
// Textbook persistence: full left-to-right boundary-matrix reduction over
// every cell, no union-find, no low-class shortcuts.
inline std::vector<std::int32_t> test_sym_diff(const std::vector<std::int32_t>& a,
                                               const std::vector<std::int32_t>& b) {
    std::vector<std::int32_t> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

inline mmph::PersistenceDiagram reference_reduction(
    const mmph::FilteredCubicalComplex& cx) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const auto& cells = cx.cells();
    const std::size_t n = cells.size();
    std::vector<std::vector<std::int32_t>> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (int k = 0; k < 2 * cells[j].dim; ++k) {
            cols[j].push_back(cells[j].boundary[static_cast<std::size_t>(k)]);
        }
        std::sort(cols[j].begin(), cols[j].end());
    }
    std::vector<std::int32_t> owner(n, -1);  // row -> column with that low
    mmph::PersistenceDiagram pd;
    for (std::size_t j = 0; j < n; ++j) {
        while (!cols[j].empty() && owner[static_cast<std::size_t>(cols[j].back())] >= 0) {
            cols[j] = test_sym_diff(
                cols[j], cols[static_cast<std::size_t>(
                             owner[static_cast<std::size_t>(cols[j].back())])]);
        }
        if (!cols[j].empty()) {
            const std::int32_t low = cols[j].back();
            owner[static_cast<std::size_t>(low)] = static_cast<std::int32_t>(j);
            if (cells[static_cast<std::size_t>(low)].value != cells[j].value) {
                pd.intervals.push_back({cells[static_cast<std::size_t>(low)].dim,
                                        double(cells[static_cast<std::size_t>(low)].value),
                                        double(cells[j].value)});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (cols[i].empty() && owner[i] < 0) {
            pd.intervals.push_back({cells[i].dim, double(cells[i].value), kInf});
        }
    }
    pd.canonicalize();
    return pd;
}

// ------------------------------------------------------------------------
// Exhaustive bottleneck for small diagrams: tries every injective partial
// matching per dimension, diagonal for the rest.
inline double brute_bottleneck(const mmph::PersistenceDiagram& A,
                               const mmph::PersistenceDiagram& B) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (int dim = 0; dim <= 1; ++dim) {
        std::vector<mmph::Interval> a;
        std::vector<mmph::Interval> b;
        for (const auto& iv : A.intervals) {
            if (iv.dim == dim) a.push_back(iv);
        }
        for (const auto& iv : B.intervals) {
            if (iv.dim == dim) b.push_back(iv);
        }
        const auto pair_cost = [&](const mmph::Interval& p, const mmph::Interval& q) {
            if (p.essential() != q.essential()) return kInf;
            if (p.essential()) return std::abs(p.birth - q.birth);
            return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
        };
        const auto diag = [&](const mmph::Interval& p) {
            return p.essential() ? kInf : (p.death - p.birth) / 2.0;
        };
        double best = kInf;
        std::vector<bool> used(b.size(), false);
        const auto dfs = [&](auto&& self, std::size_t i, double current) -> void {
            if (current >= best) return;
            if (i == a.size()) {
                double cost = current;
                for (std::size_t j = 0; j < b.size(); ++j) {
                    if (!used[j]) cost = std::max(cost, diag(b[j]));
                }
                best = std::min(best, cost);
                return;
            }
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (used[j]) continue;
                used[j] = true;
                self(self, i + 1, std::max(current, pair_cost(a[i], b[j])));
                used[j] = false;
            }
            self(self, i + 1, std::max(current, diag(a[i])));
        };
        dfs(dfs, 0, 0.0);
        total = std::max(total, best);
    }
    return total;
}

}  // namespace mmph_test
