#include "mmph/persistence.hpp"

#include <algorithm>

namespace mmph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_complex(const std::vector<Cell>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell& c = cells[i];
        if (c.dim < 0 || c.dim > 2) {
            throw MalformedComplex("cell " + std::to_string(i) + " has dimension " +
                                   std::to_string(int(c.dim)));
        }
        if (i > 0) {
            const Cell& p = cells[i - 1];
            const auto key = [](const Cell& x) {
                return std::tuple<int, int, std::uint32_t>(x.value, x.dim, x.lattice);
            };
            if (!(key(p) < key(c))) {
                throw MalformedComplex("cells " + std::to_string(i - 1) + " and " +
                                       std::to_string(i) + " violate filtration order");
            }
        }
        std::int32_t prev_face = -1;
        for (int k = 0; k < 2 * c.dim; ++k) {
            const std::int32_t f = c.boundary[static_cast<std::size_t>(k)];
            if (f < 0 || static_cast<std::size_t>(f) >= i) {
                throw MalformedComplex("cell " + std::to_string(i) +
                                       " references face " + std::to_string(f) +
                                       " that does not precede it");
            }
            if (f <= prev_face) {
                throw MalformedComplex("cell " + std::to_string(i) +
                                       " has unsorted or repeated faces");
            }
            prev_face = f;
            if (cells[static_cast<std::size_t>(f)].dim != c.dim - 1) {
                throw MalformedComplex("cell " + std::to_string(i) +
                                       " has a face of the wrong dimension");
            }
            if (cells[static_cast<std::size_t>(f)].value > c.value) {
                throw MalformedComplex("cell " + std::to_string(i) +
                                       " enters before its face " + std::to_string(f));
            }
        }
    }
}

/// Symmetric difference of two ascending index lists (F_2 column addition).
std::vector<std::int32_t> sym_diff(const std::vector<std::int32_t>& a,
                                   const std::vector<std::int32_t>& b) {
    std::vector<std::int32_t> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) out.push_back(a[i++]);
        else if (b[j] < a[i]) out.push_back(b[j++]);
        else { ++i; ++j; }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

}  // namespace

void PersistenceDiagram::canonicalize() {
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
}

std::size_t PersistenceDiagram::count(int dim) const {
    std::size_t n = 0;
    for (const Interval& iv : intervals) {
        if (iv.dim == dim) ++n;
    }
    return n;
}

PersistenceDiagram compute_persistence(const FilteredCubicalComplex& complex) {
    const std::vector<Cell>& cells = complex.cells();
    validate_complex(cells);

    const std::size_t n = cells.size();
    PersistenceDiagram pd;

    // Union-find over vertex cells. creator[root] is the earliest vertex of
    // the component; merging kills the later creator (elder rule, the cell
    // index order is exactly the filtration order).
    std::vector<std::int32_t> parent(n, -1);
    std::vector<std::int32_t> creator(n, -1);
    std::vector<std::int32_t> size(n, 0);
    const auto find = [&parent](std::int32_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };

    // Dimension-1 reduction state: owner[e] is the stored square column
    // whose pivot (largest face index) is edge e.
    std::vector<std::int32_t> owner(n, -1);
    std::vector<std::vector<std::int32_t>> stored;
    std::vector<std::uint8_t> edge_positive(n, 0);
    std::vector<std::uint8_t> edge_killed(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        const Cell& c = cells[i];
        const std::int32_t idx = static_cast<std::int32_t>(i);
        if (c.dim == 0) {
            parent[i] = idx;
            creator[i] = idx;
            size[i] = 1;
        } else if (c.dim == 1) {
            std::int32_t ru = find(c.boundary[0]);
            std::int32_t rv = find(c.boundary[1]);
            if (ru == rv) {
                edge_positive[i] = 1;
                continue;
            }
            const std::int32_t young = std::max(creator[ru], creator[rv]);
            const std::int32_t old = std::min(creator[ru], creator[rv]);
            if (size[ru] < size[rv]) std::swap(ru, rv);
            parent[rv] = ru;
            size[ru] += size[rv];
            creator[ru] = old;
            if (cells[static_cast<std::size_t>(young)].value != c.value) {
                pd.intervals.push_back(
                    {0, double(cells[static_cast<std::size_t>(young)].value), double(c.value)});
            }
        } else {
            std::vector<std::int32_t> col(c.boundary.begin(), c.boundary.end());
            while (true) {
                if (col.empty()) {
                    // A square with empty reduced boundary would be a 2-cycle,
                    // impossible in a planar complex.
                    throw MalformedComplex("2-cell " + std::to_string(i) +
                                           " reduced to an empty column");
                }
                const std::int32_t low = col.back();
                if (owner[static_cast<std::size_t>(low)] < 0) {
                    if (!edge_positive[static_cast<std::size_t>(low)]) {
                        // The pivot of a reduced 2-column is the top edge of a
                        // 1-cycle, and the top edge of a cycle is positive.
                        throw MalformedComplex("reduction paired a negative edge");
                    }
                    owner[static_cast<std::size_t>(low)] =
                        static_cast<std::int32_t>(stored.size());
                    stored.push_back(col);
                    edge_killed[static_cast<std::size_t>(low)] = 1;
                    if (cells[static_cast<std::size_t>(low)].value != c.value) {
                        pd.intervals.push_back({1,
                                                double(cells[static_cast<std::size_t>(low)].value),
                                                double(c.value)});
                    }
                    break;
                }
                col = sym_diff(col, stored[static_cast<std::size_t>(
                                        owner[static_cast<std::size_t>(low)])]);
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (cells[i].dim == 0 && find(static_cast<std::int32_t>(i)) ==
                                     static_cast<std::int32_t>(i)) {
            pd.intervals.push_back(
                {0, double(cells[static_cast<std::size_t>(creator[i])].value), kInf});
        } else if (cells[i].dim == 1 && edge_positive[i] && !edge_killed[i]) {
            pd.intervals.push_back({1, double(cells[i].value), kInf});
        }
    }

    pd.canonicalize();
    return pd;
}

long long betti_at(const PersistenceDiagram& pd, int dim, double t) {
    if (pd.scale != 1.0) {
        throw ScaleMismatch("betti_at needs a raw diagram (scale 1), got scale " +
                            std::to_string(pd.scale));
    }
    long long alive = 0;
    for (const Interval& iv : pd.intervals) {
        if (iv.dim == dim && iv.birth <= t && t < iv.death) ++alive;
    }
    return alive;
}

}  // namespace mmph
