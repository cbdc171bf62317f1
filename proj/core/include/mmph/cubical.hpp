#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mmph/error.hpp"
#include "mmph/filtration.hpp"

namespace mmph {

/// One cell of a filtered cubical complex. `boundary` holds the complex
/// indices of the 2*dim codimension-one faces in ascending order; unused
/// slots are -1. `lattice` is the cell's position within its dimension
/// class and fixes the order of cells sharing (value, dim).
struct Cell {
    std::int32_t value;
    std::int8_t dim;
    std::uint32_t lattice;
    std::array<std::int32_t, 4> boundary;
};

class FilteredCubicalComplex;
FilteredCubicalComplex build_complex(const EntryTimeGrid& grid);

/// Filtered complex of the V-construction: each black pixel contributes a
/// closed unit square (one 2-cell, four edges, four vertices), and a cell
/// enters at the minimum entry time over the pixels containing it. Cells
/// are sorted by (value, dim, lattice), so faces always precede cofaces.
class FilteredCubicalComplex {
public:
    /// Wraps an explicit cell list without any checking; consumers such as
    /// compute_persistence revalidate structure themselves. Exists so
    /// complexes can come from places other than build_complex.
    static FilteredCubicalComplex from_cells(std::vector<Cell> cells, int max_level);

    const std::vector<Cell>& cells() const noexcept { return cells_; }
    std::size_t size() const noexcept { return cells_.size(); }
    int max_level() const noexcept { return max_level_; }

    std::size_t count(int dim) const;

    /// One line per cell in filtration order: "dim value face-indices...".
    /// Deterministic; intended for golden-file comparisons.
    std::string debug_dump() const;

private:
    friend FilteredCubicalComplex build_complex(const EntryTimeGrid& grid);
    std::vector<Cell> cells_;
    int max_level_ = 0;
};

struct BettiNumbers {
    long long b0;
    long long b1;
    bool operator==(const BettiNumbers&) const = default;
};

/// Betti numbers of one binary image, computed without the persistence
/// machinery: black components under 8-adjacency for b0, then b1 recovered
/// from the Euler characteristic V - E + F of the V-construction. Serves
/// as an independent cross-check of the reduction.
BettiNumbers betti_oracle(const BinaryImage& image);

}  // namespace mmph
