#include <catch_amalgamated.hpp>

#include <algorithm>

#include "epschain/rips.hpp"
#include "support/generators.hpp"

using namespace epschain;

TEST_CASE("filled triangle") {
    const auto c = PointCloud::from_points("tri", {{0, 0}, {1, 0}, {0.5, 0.8}});
    const RipsSkeleton sk(c, Scale(1));
    CHECK(sk.edges().size() == 3);
    REQUIRE(sk.triangles().size() == 1);
    CHECK(sk.triangles()[0] == Triangle{0, 1, 2});
    CHECK(sk.betti1() == 0);
    CHECK(sk.boundary2_rank() == 1);
    CHECK(sk.loop_class(Chain(c, {0, 1, 2, 0}, Scale(1))).is_zero());
    CHECK(sk.boundary1(*sk.edge_index(2, 1)) == std::array<VertexId, 2>{1, 2});
}

TEST_CASE("hexagon has one hole at 1.01") {
    const auto hex = testgen::polygon(6);
    const RipsSkeleton sk(hex, Scale(1.01));
    CHECK(sk.edges().size() == 6);
    CHECK(sk.triangles().empty());
    CHECK(sk.betti1() == 1);
    const Chain ccw(hex, {0, 1, 2, 3, 4, 5, 0}, Scale(1.01));
    const CycleClass cls = sk.loop_class(ccw);
    CHECK_FALSE(cls.is_zero());
    CHECK(sk.loop_class(inverse(ccw)) == cls);  // GF(2) ignores orientation
    // a backtracking loop cancels
    CHECK(sk.loop_class(Chain(hex, {0, 1, 2, 1, 0}, Scale(1.01))).is_zero());
    // at 1.75 only antipodal pairs are missing: the octahedron, no holes
    const RipsSkeleton mid(hex, Scale(1.75));
    CHECK(mid.edges().size() == 12);
    CHECK(mid.triangles().size() == 8);
    CHECK(mid.betti1() == 0);
    const RipsSkeleton wide(hex, Scale(2.01));
    CHECK(wide.betti1() == 0);
}

TEST_CASE("two disjoint hexagons") {
    std::vector<Point2> pts;
    const auto left = testgen::polygon(6), right = testgen::polygon(6, 1.0, 10.0);
    for (const auto& p : left.points())
        pts.push_back(p);
    for (const auto& p : right.points())
        pts.push_back(p);
    const auto c = PointCloud::from_points("two", pts);
    CHECK(RipsSkeleton(c, Scale(1.01)).betti1() == 2);
}

TEST_CASE("cycle class is a complete invariant on small examples") {
    // square with one diagonal: both triangles are filled, so the outer loop is null
    const auto sq = PointCloud::from_points("sq", {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const RipsSkeleton sk(sq, Scale(1.5));
    CHECK(sk.betti1() == 0);
    const RipsSkeleton bare(sq, Scale(1.0));
    CHECK(bare.betti1() == 1);
    const Chain loop(sq, {0, 1, 2, 3, 0}, Scale(1.0));
    CHECK_FALSE(bare.loop_class(loop).is_zero());
    // homologous cycles have equal residues
    const Chain loop2(sq, {0, 3, 2, 1, 0}, Scale(1.0));
    CHECK(bare.loop_class(loop2) == bare.loop_class(loop));
}

TEST_CASE("loop_class errors") {
    const auto hex = testgen::polygon(6);
    const RipsSkeleton sk(hex, Scale(1.01));
    CHECK_THROWS_AS(sk.loop_class(Chain(hex, {0, 1}, Scale(1.01))), std::invalid_argument);
    CHECK_THROWS_AS(sk.loop_class(Chain(hex, {0, 1, 0}, Scale(2))), std::invalid_argument);
    CHECK_THROWS_AS(sk.loop_class(Chain(hex, {0, 2, 0}, Scale(1.01))), std::invalid_argument);
    const auto other = testgen::polygon(6);
    CHECK_THROWS_AS(sk.loop_class(Chain(other, {0, 1, 0}, Scale(1.01))), std::invalid_argument);
}

TEST_CASE("bounded subsets") {
    const auto c = PointCloud::from_points("pts", {{0, 0}, {1, 0}, {2, 0}});
    const std::vector<VertexId> ab{0, 1}, abc{0, 1, 2}, none;
    CHECK(is_bounded(c, ab, Scale(1)));
    CHECK_FALSE(is_bounded(c, abc, Scale(1)));
    CHECK(is_bounded(c, abc, Scale(2)));
    CHECK_THROWS_AS(is_bounded(c, none, Scale(1)), std::invalid_argument);
    const std::vector<VertexId> bad{0, 9};
    CHECK_THROWS_AS(is_bounded(c, bad, Scale(1)), std::out_of_range);
}

namespace {

// dense GF(2) rank by row reduction
std::size_t dense_rank(std::vector<std::vector<char>> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot][c])
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[pivot], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r][c])
                for (std::size_t k = 0; k < cols; ++k)
                    rows[r][k] ^= rows[rank][k];
        ++rank;
    }
    return rank;
}

}  // namespace

TEST_CASE("betti number agrees with dense GF(2) ranks") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 40; ++k) {
        const auto c = testgen::random_cloud(rng, 20);
        const RipsSkeleton sk(c, Scale(testgen::uniform(rng, 0.1, 0.45)));
        const std::size_t E = sk.edges().size();
        std::vector<std::vector<char>> d1(E, std::vector<char>(c.size(), 0));
        for (std::size_t e = 0; e < E; ++e) {
            d1[e][sk.edges()[e].a] = 1;
            d1[e][sk.edges()[e].b] = 1;
        }
        std::vector<std::vector<char>> d2;
        for (const Triangle& t : sk.triangles()) {
            std::vector<char> row(E, 0);
            for (auto [a, b] : {std::pair{t.a, t.b}, std::pair{t.a, t.c}, std::pair{t.b, t.c}}) {
                auto it = std::find(sk.edges().begin(), sk.edges().end(), Edge{a, b});
                REQUIRE(it != sk.edges().end());
                row[static_cast<std::size_t>(it - sk.edges().begin())] = 1;
            }
            d2.push_back(std::move(row));
        }
        const std::size_t r1 = dense_rank(d1), r2 = dense_rank(d2);
        CHECK(sk.boundary2_rank() == r2);
        CHECK(sk.betti1() == E - r1 - r2);
        CHECK(sk.boundaries_compose_to_zero());
    }
}

TEST_CASE("edge ids are lexicographic") {
    const auto c = testgen::polygon(8);
    const RipsSkeleton sk(c, Scale(0.9));
    for (std::size_t e = 1; e < sk.edges().size(); ++e)
        CHECK(sk.edges()[e - 1] < sk.edges()[e]);
    for (std::size_t e = 0; e < sk.edges().size(); ++e)
        CHECK(*sk.edge_index(sk.edges()[e].a, sk.edges()[e].b) == e);
    CHECK_FALSE(sk.edge_index(0, 0));
    CHECK_FALSE(sk.edge_index(0, 4));
}
