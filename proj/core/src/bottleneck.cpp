#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "mmph/diagram.hpp"

namespace mmph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Hopcroft-Karp maximum matching. Vertex and adjacency order are fixed by
/// the caller, so repeated runs produce identical matchings.
class BipartiteMatcher {
public:
    BipartiteMatcher(int nl, int nr)
        : nl_(nl), nr_(nr), adj_(static_cast<std::size_t>(nl)) {}

    void add_edge(int l, int r) { adj_[static_cast<std::size_t>(l)].push_back(r); }

    int max_matching() {
        match_l_.assign(static_cast<std::size_t>(nl_), -1);
        match_r_.assign(static_cast<std::size_t>(nr_), -1);
        int total = 0;
        while (bfs()) {
            for (int u = 0; u < nl_; ++u) {
                if (match_l_[static_cast<std::size_t>(u)] < 0 && dfs(u)) ++total;
            }
        }
        return total;
    }

    const std::vector<int>& left_match() const noexcept { return match_l_; }
    const std::vector<int>& right_match() const noexcept { return match_r_; }

private:
    bool bfs() {
        std::queue<int> q;
        dist_.assign(static_cast<std::size_t>(nl_), -1);
        for (int u = 0; u < nl_; ++u) {
            if (match_l_[static_cast<std::size_t>(u)] < 0) {
                dist_[static_cast<std::size_t>(u)] = 0;
                q.push(u);
            }
        }
        bool reachable = false;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : adj_[static_cast<std::size_t>(u)]) {
                const int w = match_r_[static_cast<std::size_t>(v)];
                if (w < 0) {
                    reachable = true;
                } else if (dist_[static_cast<std::size_t>(w)] < 0) {
                    dist_[static_cast<std::size_t>(w)] =
                        dist_[static_cast<std::size_t>(u)] + 1;
                    q.push(w);
                }
            }
        }
        return reachable;
    }

    bool dfs(int u) {
        for (int v : adj_[static_cast<std::size_t>(u)]) {
            const int w = match_r_[static_cast<std::size_t>(v)];
            if (w < 0 || (dist_[static_cast<std::size_t>(w)] ==
                              dist_[static_cast<std::size_t>(u)] + 1 &&
                          dfs(w))) {
                match_l_[static_cast<std::size_t>(u)] = v;
                match_r_[static_cast<std::size_t>(v)] = u;
                return true;
            }
        }
        dist_[static_cast<std::size_t>(u)] = -1;
        return false;
    }

    int nl_;
    int nr_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_l_;
    std::vector<int> match_r_;
    std::vector<int> dist_;
};

struct Pt {
    double birth;
    double death;
    int index;  // position in the canonicalized interval list
};

double diag_cost(const Pt& p) { return (p.death - p.birth) / 2.0; }

double linf(const Pt& p, const Pt& q) {
    return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

/// One half of the covering test: every `from` point too far from the
/// diagonal must be matchable into `to` within eps. By the
/// Mendelsohn-Dulmage theorem, separate coverings of the two sides can be
/// merged into one matching, so testing the sides independently decides
/// joint feasibility exactly.
bool side_feasible(const std::vector<Pt>& from, const std::vector<Pt>& to, double eps) {
    std::vector<int> required;
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (diag_cost(from[i]) > eps) required.push_back(static_cast<int>(i));
    }
    if (required.empty()) return true;
    if (to.empty()) return false;
    BipartiteMatcher matcher(static_cast<int>(required.size()),
                             static_cast<int>(to.size()));
    for (std::size_t k = 0; k < required.size(); ++k) {
        const Pt& p = from[static_cast<std::size_t>(required[k])];
        for (std::size_t j = 0; j < to.size(); ++j) {
            if (linf(p, to[j]) <= eps) {
                matcher.add_edge(static_cast<int>(k), static_cast<int>(j));
            }
        }
    }
    return matcher.max_matching() == static_cast<int>(required.size());
}

bool feasible(const std::vector<Pt>& a, const std::vector<Pt>& b, double eps) {
    return side_feasible(a, b, eps) && side_feasible(b, a, eps);
}

/// Extracts a concrete matching achieving eps. Each side gets one dummy per
/// opposite point: a real point pairs with its own dummy exactly when its
/// diagonal cost fits in eps, and dummy-dummy edges are free, so a perfect
/// matching exists precisely at feasible eps.
void append_witness(const std::vector<Pt>& a, const std::vector<Pt>& b, double eps,
                    std::vector<MatchedPair>& out) {
    const int na = static_cast<int>(a.size());
    const int nb = static_cast<int>(b.size());
    if (na + nb == 0) return;
    BipartiteMatcher matcher(na + nb, nb + na);
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
            if (linf(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)]) <= eps) {
                matcher.add_edge(i, j);
            }
        }
        if (diag_cost(a[static_cast<std::size_t>(i)]) <= eps) {
            matcher.add_edge(i, nb + i);
        }
    }
    for (int j = 0; j < nb; ++j) {
        if (diag_cost(b[static_cast<std::size_t>(j)]) <= eps) {
            matcher.add_edge(na + j, j);
        }
        for (int i = 0; i < na; ++i) {
            matcher.add_edge(na + j, nb + i);
        }
    }
    if (matcher.max_matching() != na + nb) {
        throw Error("internal: no perfect matching at the optimal epsilon");
    }
    for (int i = 0; i < na; ++i) {
        const int v = matcher.left_match()[static_cast<std::size_t>(i)];
        out.push_back({a[static_cast<std::size_t>(i)].index,
                       v < nb ? b[static_cast<std::size_t>(v)].index : -1});
    }
    for (int j = 0; j < nb; ++j) {
        if (matcher.right_match()[static_cast<std::size_t>(j)] >= na) {
            out.push_back({-1, b[static_cast<std::size_t>(j)].index});
        }
    }
}

}  // namespace

BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    if (a.scale != b.scale) {
        throw ScaleMismatch("bottleneck needs diagrams of equal scale");
    }
    BottleneckResult res;

    for (int dim = 0; dim <= 1; ++dim) {
        std::size_t ess_a = 0;
        std::size_t ess_b = 0;
        for (const Interval& iv : a.intervals) {
            if (iv.dim == dim && iv.essential()) ++ess_a;
        }
        for (const Interval& iv : b.intervals) {
            if (iv.dim == dim && iv.essential()) ++ess_b;
        }
        if (ess_a != ess_b) {
            // No finite-cost matching exists. Report the degenerate witness:
            // everything against the diagonal.
            res.distance = kInf;
            res.matching.clear();
            for (std::size_t i = 0; i < a.intervals.size(); ++i) {
                res.matching.push_back({static_cast<int>(i), -1});
            }
            for (std::size_t j = 0; j < b.intervals.size(); ++j) {
                res.matching.push_back({-1, static_cast<int>(j)});
            }
            return res;
        }
    }

    double dist = 0.0;
    for (int dim = 0; dim <= 1; ++dim) {
        std::vector<Pt> fin_a;
        std::vector<Pt> fin_b;
        std::vector<std::pair<double, int>> inf_a;
        std::vector<std::pair<double, int>> inf_b;
        for (std::size_t i = 0; i < a.intervals.size(); ++i) {
            const Interval& iv = a.intervals[i];
            if (iv.dim != dim) continue;
            if (iv.essential()) inf_a.push_back({iv.birth, static_cast<int>(i)});
            else fin_a.push_back({iv.birth, iv.death, static_cast<int>(i)});
        }
        for (std::size_t j = 0; j < b.intervals.size(); ++j) {
            const Interval& iv = b.intervals[j];
            if (iv.dim != dim) continue;
            if (iv.essential()) inf_b.push_back({iv.birth, static_cast<int>(j)});
            else fin_b.push_back({iv.birth, iv.death, static_cast<int>(j)});
        }

        // Essential classes pair in birth order; on a line the sorted
        // pairing minimizes the largest displacement.
        std::sort(inf_a.begin(), inf_a.end());
        std::sort(inf_b.begin(), inf_b.end());
        for (std::size_t k = 0; k < inf_a.size(); ++k) {
            dist = std::max(dist, std::abs(inf_a[k].first - inf_b[k].first));
            res.matching.push_back({inf_a[k].second, inf_b[k].second});
        }

        if (fin_a.empty() && fin_b.empty()) continue;

        // The optimum is one of finitely many values: some pairwise
        // distance or half-lifespan (or zero). Feasibility is monotone in
        // eps, so binary search over the sorted candidates is exact.
        std::vector<double> cands{0.0};
        for (const Pt& p : fin_a) cands.push_back(diag_cost(p));
        for (const Pt& q : fin_b) cands.push_back(diag_cost(q));
        for (const Pt& p : fin_a) {
            for (const Pt& q : fin_b) cands.push_back(linf(p, q));
        }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

        std::size_t lo = 0;
        std::size_t hi = cands.size() - 1;
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (feasible(fin_a, fin_b, cands[mid])) hi = mid;
            else lo = mid + 1;
        }
        const double eps = cands[lo];
        dist = std::max(dist, eps);
        append_witness(fin_a, fin_b, eps, res.matching);
    }
    res.distance = dist;
    return res;
}

}  // namespace mmph
