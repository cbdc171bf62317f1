#include "mmph/cubical.hpp"

#include <algorithm>
#include <numeric>

namespace mmph {

namespace {

constexpr int kNever = EntryTimeGrid::never;

void take_min(int& slot, int value) {
    if (value < slot) slot = value;
}

}  // namespace

FilteredCubicalComplex FilteredCubicalComplex::from_cells(std::vector<Cell> cells,
                                                          int max_level) {
    FilteredCubicalComplex complex;
    complex.cells_ = std::move(cells);
    complex.max_level_ = max_level;
    return complex;
}

std::size_t FilteredCubicalComplex::count(int dim) const {
    std::size_t n = 0;
    for (const Cell& c : cells_) {
        if (c.dim == dim) ++n;
    }
    return n;
}

std::string FilteredCubicalComplex::debug_dump() const {
    std::string out;
    for (const Cell& c : cells_) {
        out += std::to_string(int(c.dim));
        out += ' ';
        out += std::to_string(c.value);
        for (int k = 0; k < 2 * c.dim; ++k) {
            out += ' ';
            out += std::to_string(c.boundary[static_cast<std::size_t>(k)]);
        }
        out += '\n';
    }
    return out;
}

FilteredCubicalComplex build_complex(const EntryTimeGrid& grid) {
    const int W = grid.width();
    const int H = grid.height();

    // Lattice slot layout. Vertices live on the (W+1) x (H+1) corner grid.
    // Edge ids put all horizontal edges first, then the vertical ones, so a
    // single array addresses every edge.
    const std::size_t n_vertices = static_cast<std::size_t>(W + 1) * (H + 1);
    const std::size_t n_hedges = static_cast<std::size_t>(W) * (H + 1);
    const std::size_t n_vedges = static_cast<std::size_t>(W + 1) * H;
    const std::size_t n_squares = static_cast<std::size_t>(W) * H;
    const auto vertex_id = [W](int vx, int vy) {
        return static_cast<std::size_t>(vy) * (W + 1) + vx;
    };
    const auto hedge_id = [W](int ex, int ey) {
        return static_cast<std::size_t>(ey) * W + ex;
    };
    const auto vedge_id = [W, n_hedges](int ex, int ey) {
        return n_hedges + static_cast<std::size_t>(ey) * (W + 1) + ex;
    };

    std::vector<int> vval(n_vertices, kNever);
    std::vector<int> eval(n_hedges + n_vedges, kNever);

    // Every cell enters with the first pixel whose closed square contains
    // it, i.e. at the minimum entry time over incident pixels.
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            const int t = grid.at(x, y);
            if (t == kNever) continue;
            take_min(vval[vertex_id(x, y)], t);
            take_min(vval[vertex_id(x + 1, y)], t);
            take_min(vval[vertex_id(x, y + 1)], t);
            take_min(vval[vertex_id(x + 1, y + 1)], t);
            take_min(eval[hedge_id(x, y)], t);
            take_min(eval[hedge_id(x, y + 1)], t);
            take_min(eval[vedge_id(x, y)], t);
            take_min(eval[vedge_id(x + 1, y)], t);
        }
    }

    struct Slot {
        int value;
        std::int8_t dim;
        std::uint32_t lattice;
    };
    std::vector<Slot> slots;
    slots.reserve(n_vertices + n_hedges + n_vedges + n_squares);
    for (std::size_t i = 0; i < n_vertices; ++i) {
        if (vval[i] != kNever) {
            slots.push_back({vval[i], 0, static_cast<std::uint32_t>(i)});
        }
    }
    for (std::size_t i = 0; i < n_hedges + n_vedges; ++i) {
        if (eval[i] != kNever) {
            slots.push_back({eval[i], 1, static_cast<std::uint32_t>(i)});
        }
    }
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            const int t = grid.at(x, y);
            if (t != kNever) {
                slots.push_back({t, 2, static_cast<std::uint32_t>(
                                           static_cast<std::size_t>(y) * W + x)});
            }
        }
    }
    std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.lattice < b.lattice;
    });

    // Face lookups by lattice id, filled as cells receive final indices.
    std::vector<std::int32_t> vindex(n_vertices, -1);
    std::vector<std::int32_t> eindex(n_hedges + n_vedges, -1);

    FilteredCubicalComplex complex;
    complex.max_level_ = grid.max_level();
    complex.cells_.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const Slot& s = slots[i];
        Cell cell{};
        cell.value = s.value;
        cell.dim = s.dim;
        cell.lattice = s.lattice;
        cell.boundary = {-1, -1, -1, -1};
        if (s.dim == 0) {
            vindex[s.lattice] = static_cast<std::int32_t>(i);
        } else if (s.dim == 1) {
            eindex[s.lattice] = static_cast<std::int32_t>(i);
            int vx0, vy0, vx1, vy1;
            if (s.lattice < n_hedges) {
                const int ex = static_cast<int>(s.lattice % W);
                const int ey = static_cast<int>(s.lattice / W);
                vx0 = ex; vy0 = ey; vx1 = ex + 1; vy1 = ey;
            } else {
                const std::size_t v = s.lattice - n_hedges;
                const int ex = static_cast<int>(v % (W + 1));
                const int ey = static_cast<int>(v / (W + 1));
                vx0 = ex; vy0 = ey; vx1 = ex; vy1 = ey + 1;
            }
            cell.boundary[0] = vindex[vertex_id(vx0, vy0)];
            cell.boundary[1] = vindex[vertex_id(vx1, vy1)];
            std::sort(cell.boundary.begin(), cell.boundary.begin() + 2);
        } else {
            const int x = static_cast<int>(s.lattice % W);
            const int y = static_cast<int>(s.lattice / W);
            cell.boundary[0] = eindex[hedge_id(x, y)];
            cell.boundary[1] = eindex[hedge_id(x, y + 1)];
            cell.boundary[2] = eindex[vedge_id(x, y)];
            cell.boundary[3] = eindex[vedge_id(x + 1, y)];
            std::sort(cell.boundary.begin(), cell.boundary.end());
        }
        for (int k = 0; k < 2 * cell.dim; ++k) {
            if (cell.boundary[static_cast<std::size_t>(k)] < 0) {
                throw MalformedComplex("face missing for cell " + std::to_string(i));
            }
        }
        complex.cells_.push_back(cell);
    }
    return complex;
}

BettiNumbers betti_oracle(const BinaryImage& image) {
    const int W = image.width();
    const int H = image.height();

    // b0: black components under 8-adjacency (closed squares touching even
    // at a corner are connected).
    std::vector<std::int32_t> parent(image.pixel_count());
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&parent](std::int32_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    const auto unite = [&](std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    long long black_count = 0;
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            if (!image.black(x, y)) continue;
            ++black_count;
            const std::int32_t p = y * W + x;
            static constexpr int kDx[4] = {-1, 0, 1, -1};
            static constexpr int kDy[4] = {-1, -1, -1, 0};
            for (int k = 0; k < 4; ++k) {
                const int nx = x + kDx[k];
                const int ny = y + kDy[k];
                if (nx < 0 || nx >= W || ny < 0 || ny >= H) continue;
                if (image.black(nx, ny)) unite(p, ny * W + nx);
            }
        }
    }
    long long b0 = 0;
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            if (image.black(x, y) && find(y * W + x) == y * W + x) ++b0;
        }
    }

    // b1 = b0 - (V - E + F): the complex is two-dimensional and planar, so
    // there are no 2-cycles and the Euler characteristic closes the count.
    long long V = 0;
    long long E = 0;
    const auto black_at = [&](int x, int y) {
        return x >= 0 && x < W && y >= 0 && y < H && image.black(x, y);
    };
    for (int vy = 0; vy <= H; ++vy) {
        for (int vx = 0; vx <= W; ++vx) {
            if (black_at(vx, vy) || black_at(vx - 1, vy) || black_at(vx, vy - 1) ||
                black_at(vx - 1, vy - 1)) {
                ++V;
            }
        }
    }
    for (int ey = 0; ey <= H; ++ey) {
        for (int ex = 0; ex < W; ++ex) {
            if (black_at(ex, ey) || black_at(ex, ey - 1)) ++E;
        }
    }
    for (int ey = 0; ey < H; ++ey) {
        for (int ex = 0; ex <= W; ++ex) {
            if (black_at(ex, ey) || black_at(ex - 1, ey)) ++E;
        }
    }
    const long long euler = V - E + black_count;
    return BettiNumbers{b0, b0 - euler};
}

}  // namespace mmph
