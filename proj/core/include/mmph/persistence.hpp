#pragma once

#include <limits>
#include <vector>

#include "mmph/cubical.hpp"
#include "mmph/error.hpp"

namespace mmph {

/// Persistence interval [birth, death) in homological dimension dim; death
/// is +infinity for classes that survive the whole filtration. Stored as
/// doubles so normalized diagrams reuse the type; raw diagrams hold exact
/// small integers.
struct Interval {
    int dim;
    double birth;
    double death;

    bool essential() const {
        return death == std::numeric_limits<double>::infinity();
    }
    double lifespan() const { return death - birth; }

    bool operator==(const Interval&) const = default;
};

/// Multiset of intervals plus the cumulative normalization scale (1 for raw
/// filtration values). Intervals are kept sorted by (dim, birth, death), so
/// equal multisets compare equal with operator==.
struct PersistenceDiagram {
    std::vector<Interval> intervals;
    double scale = 1.0;

    void canonicalize();
    std::size_t count(int dim) const;

    bool operator==(const PersistenceDiagram&) const = default;
};

/// Persistent homology of the filtered complex with F_2 coefficients.
///
/// Dimension 0 runs a union-find sweep over the edges: an edge joining two
/// components kills the class whose creating vertex entered later (elder
/// rule, ties broken by cell index). Dimension 1 reduces the square columns
/// against each other; in a planar 2-complex every square column ends at a
/// positive edge, so each reduction step either pairs an edge or the input
/// was malformed. Zero-length pairs (birth == death) are dropped.
///
/// The complex is revalidated here (ordering, face arity, face values)
/// rather than trusted; a broken complex throws MalformedComplex.
PersistenceDiagram compute_persistence(const FilteredCubicalComplex& complex);

/// Number of dimension-dim classes alive at time t (birth <= t < death).
/// Only meaningful on raw diagrams; throws ScaleMismatch when scale != 1.
long long betti_at(const PersistenceDiagram& pd, int dim, double t);

}  // namespace mmph
