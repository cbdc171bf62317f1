#pragma once

#include <string>
#include <vector>

#include "mmph/error.hpp"
#include "mmph/persistence.hpp"

namespace mmph {

/// Divides every coordinate by divisor and folds infinite deaths to exactly
/// 1.0 (an essential class is treated as dying at the divisor level). The
/// result's scale is pd.scale * divisor, so scales compose. Every finite
/// coordinate must already lie in [0, divisor]; the normalized diagram then
/// lives in the unit square.
PersistenceDiagram normalize(const PersistenceDiagram& pd, double divisor);

struct DeathHistogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<long long> counts;
    long long inf_count = 0;  // essential intervals, counted outside the bins

    bool operator==(const DeathHistogram&) const = default;
};

/// Equal-width histogram of death values of dimension-dim intervals over
/// [lo, hi]. Bin k is [lo + k*w, lo + (k+1)*w), with hi closing the last
/// bin. Finite deaths outside [lo, hi] are an error, not a silent clamp.
DeathHistogram death_histogram(const PersistenceDiagram& pd, int dim,
                               int bin_count, double lo, double hi);

/// One pair of an optimal bottleneck matching; indices refer to positions
/// in the canonicalized interval lists, -1 stands for the diagonal.
struct MatchedPair {
    int index_a;
    int index_b;

    bool operator==(const MatchedPair&) const = default;
};

struct BottleneckResult {
    double distance = 0.0;
    std::vector<MatchedPair> matching;
};

/// Exact bottleneck distance between two diagrams of equal scale.
///
/// Points match only within their homological dimension. Essential points
/// must match essential points: if the per-dimension counts differ the
/// distance is +infinity (every point is reported against the diagonal in
/// that degenerate witness); otherwise the sorted-by-birth pairing is used
/// and contributes its largest |birth difference|. Finite points contribute
/// the classic geometric bottleneck: the optimum is located by a binary
/// search over the finitely many candidate values (pairwise L-infinity
/// distances and half-lifespans), deciding each epsilon with bipartite
/// matchings, and the returned matching achieves the reported distance.
BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Canonical JSON encoding:
///   {
///     "scale": <number>,
///     "intervals": [
///       {"dim": 0, "birth": 1, "death": 2},
///       {"dim": 1, "birth": 2, "death": "inf"}
///     ]
///   }
/// Numbers print in shortest round-trip form; output is byte-deterministic
/// and ends with a newline. parse_pd accepts any JSON with this shape,
/// validates it (dim in {0, 1}, birth >= 0, death > birth or "inf",
/// scale > 0) and returns the canonicalized diagram.
std::string serialize_pd(const PersistenceDiagram& pd);
PersistenceDiagram parse_pd(const std::string& bytes);

}  // namespace mmph
