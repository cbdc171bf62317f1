#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mmph/diagram.hpp"

using namespace mmph;
using mmph_test::brute_bottleneck;
using mmph_test::make_rng;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PersistenceDiagram make_pd(std::vector<Interval> intervals, double scale = 1.0) {
    PersistenceDiagram pd;
    pd.intervals = std::move(intervals);
    pd.scale = scale;
    pd.canonicalize();
    return pd;
}

PersistenceDiagram random_pd(std::mt19937_64& rng, int max_points) {
    std::vector<Interval> ivs;
    const int n = static_cast<int>(rng() % static_cast<std::uint64_t>(max_points + 1));
    for (int i = 0; i < n; ++i) {
        const int dim = static_cast<int>(rng() % 2);
        const double birth = static_cast<double>(rng() % 8);
        if (rng() % 5 == 0) {
            ivs.push_back({dim, birth, kInf});
        } else {
            const double death = birth + 1.0 + static_cast<double>(rng() % 6);
            ivs.push_back({dim, birth, death});
        }
    }
    return make_pd(std::move(ivs));
}

double pair_cost(const PersistenceDiagram& a, const PersistenceDiagram& b,
                 const MatchedPair& m) {
    if (m.index_a >= 0 && m.index_b >= 0) {
        const Interval& p = a.intervals[static_cast<std::size_t>(m.index_a)];
        const Interval& q = b.intervals[static_cast<std::size_t>(m.index_b)];
        if (p.essential() && q.essential()) return std::abs(p.birth - q.birth);
        if (p.essential() || q.essential()) return kInf;
        return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
    }
    const Interval& p = m.index_a >= 0
                            ? a.intervals[static_cast<std::size_t>(m.index_a)]
                            : b.intervals[static_cast<std::size_t>(m.index_b)];
    return p.essential() ? kInf : p.lifespan() / 2.0;
}

// The matching must cover every point of both diagrams exactly once and
// realize the reported distance.
void check_witness(const PersistenceDiagram& a, const PersistenceDiagram& b,
                   const BottleneckResult& r) {
    std::vector<int> seen_a(a.intervals.size(), 0);
    std::vector<int> seen_b(b.intervals.size(), 0);
    double worst = 0.0;
    for (const MatchedPair& m : r.matching) {
        if (m.index_a >= 0) ++seen_a[static_cast<std::size_t>(m.index_a)];
        if (m.index_b >= 0) ++seen_b[static_cast<std::size_t>(m.index_b)];
        if (m.index_a >= 0 && m.index_b >= 0) {
            const Interval& p = a.intervals[static_cast<std::size_t>(m.index_a)];
            const Interval& q = b.intervals[static_cast<std::size_t>(m.index_b)];
            CHECK(p.dim == q.dim);
        }
        worst = std::max(worst, pair_cost(a, b, m));
    }
    for (int c : seen_a) CHECK(c == 1);
    for (int c : seen_b) CHECK(c == 1);
    if (std::isinf(r.distance)) return;  // degenerate all-diagonal witness
    CHECK(worst == doctest::Approx(r.distance).epsilon(1e-12));
}

}  // namespace

TEST_CASE("hand checked distances") {
    SUBCASE("single pair beats the diagonal") {
        const auto r = bottleneck(make_pd({{0, 0.0, 4.0}}), make_pd({{0, 1.0, 3.0}}));
        CHECK(r.distance == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(r.matching.size() == 1);
        CHECK(r.matching[0] == MatchedPair{0, 0});
    }
    SUBCASE("lonely point goes to the diagonal") {
        const auto r = bottleneck(make_pd({{0, 0.0, 1.0}}), make_pd({}));
        CHECK(r.distance == doctest::Approx(0.5).epsilon(1e-12));
        REQUIRE(r.matching.size() == 1);
        CHECK(r.matching[0] == MatchedPair{0, -1});
    }
    SUBCASE("diagonal pair beats a distant match") {
        const auto r = bottleneck(make_pd({{1, 2.0, 6.0}}), make_pd({{1, 2.0, 2.5}}));
        CHECK(r.distance == doctest::Approx(2.0).epsilon(1e-12));
        REQUIRE(r.matching.size() == 2);
        CHECK(r.matching[0] == MatchedPair{0, -1});
        CHECK(r.matching[1] == MatchedPair{-1, 0});
    }
    SUBCASE("identical diagrams have distance zero") {
        const PersistenceDiagram pd =
            make_pd({{0, 0.0, 2.0}, {0, 1.0, kInf}, {1, 1.0, 3.0}});
        const auto r = bottleneck(pd, pd);
        CHECK(r.distance == 0.0);
        check_witness(pd, pd, r);
    }
    SUBCASE("empty diagrams") {
        const auto r = bottleneck(make_pd({}), make_pd({}));
        CHECK(r.distance == 0.0);
        CHECK(r.matching.empty());
    }
}

TEST_CASE("essential points pair by sorted birth") {
    const auto r = bottleneck(make_pd({{0, 1.0, kInf}, {0, 5.0, kInf}}),
                              make_pd({{0, 2.0, kInf}, {0, 4.0, kInf}}));
    // Sorted pairing: |1-2| and |5-4|; the crossing pairing would cost 3.
    CHECK(r.distance == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("essential count mismatch is infinite") {
    const PersistenceDiagram a = make_pd({{0, 0.0, kInf}, {0, 1.0, 2.0}});
    const PersistenceDiagram b = make_pd({{0, 1.0, 2.0}});
    const auto r = bottleneck(a, b);
    CHECK(std::isinf(r.distance));
    // Degenerate witness: everything sits on the diagonal.
    REQUIRE(r.matching.size() == 3);
    for (const MatchedPair& m : r.matching) {
        CHECK((m.index_a == -1 || m.index_b == -1));
    }
    // Mismatch in one dimension is enough even if the other agrees.
    const auto r2 = bottleneck(make_pd({{1, 0.0, kInf}}), make_pd({}));
    CHECK(std::isinf(r2.distance));
}

TEST_CASE("dimensions never mix") {
    // Identical coordinates in different dimensions cannot be paired.
    const auto r = bottleneck(make_pd({{0, 0.0, 8.0}}), make_pd({{1, 0.0, 8.0}}));
    CHECK(r.distance == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("scales must agree") {
    PersistenceDiagram a = make_pd({{0, 0.0, 1.0}});
    PersistenceDiagram b = a;
    b.scale = 2.0;
    CHECK_THROWS_AS(bottleneck(a, b), ScaleMismatch);
}

TEST_CASE("bottleneck is symmetric and deterministic") {
    auto rng = make_rng(73);
    for (int it = 0; it < 40; ++it) {
        const PersistenceDiagram a = random_pd(rng, 5);
        const PersistenceDiagram b = random_pd(rng, 5);
        const auto r1 = bottleneck(a, b);
        const auto r2 = bottleneck(a, b);
        CHECK(r1.distance == r2.distance);
        CHECK(r1.matching == r2.matching);
        const auto rev = bottleneck(b, a);
        if (std::isinf(r1.distance)) {
            CHECK(std::isinf(rev.distance));
        } else {
            CHECK(rev.distance == doctest::Approx(r1.distance).epsilon(1e-12));
        }
    }
}

TEST_CASE("exact distance against exhaustive search") {
    auto rng = make_rng(97);
    int finite_seen = 0;
    int infinite_seen = 0;
    for (int it = 0; it < 250; ++it) {
        const PersistenceDiagram a = random_pd(rng, 6);
        const PersistenceDiagram b = random_pd(rng, 6);
        const double want = brute_bottleneck(a, b);
        const auto r = bottleneck(a, b);
        if (std::isinf(want)) {
            CHECK(std::isinf(r.distance));
            ++infinite_seen;
        } else {
            CHECK(r.distance == doctest::Approx(want).epsilon(1e-12));
            ++finite_seen;
        }
        check_witness(a, b, r);
    }
    // The corpus must exercise both regimes.
    CHECK(finite_seen > 50);
    CHECK(infinite_seen > 20);
}
