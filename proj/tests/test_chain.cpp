#include <catch_amalgamated.hpp>

#include <random>

#include "epschain/chain.hpp"
#include "support/generators.hpp"

using namespace epschain;

namespace {

PointCloud line(std::size_t n, double step) {
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back({static_cast<double>(i) * step, 0.0});
    return PointCloud::from_points("line", std::move(pts));
}

}  // namespace

TEST_CASE("chain construction and validity") {
    const auto c = line(5, 1.0);
    CHECK_THROWS_AS(Chain(c, {}, Scale(1)), std::invalid_argument);
    CHECK_THROWS_AS(Chain(c, {0, 7}, Scale(1)), std::out_of_range);
    CHECK(Chain(c, {0, 1, 2}, Scale(1)).valid());
    CHECK_FALSE(Chain(c, {0, 2}, Scale(1)).valid());
    CHECK(Chain(c, {0, 2}, Scale(2)).valid());
    CHECK(Chain(c, {3}, Scale(0)).valid());
    CHECK(Chain(c, {3, 3, 3}, Scale(0)).valid());  // repeats have length 0
    CHECK(Chain(c, {0, 1, 3}, Scale(2)).mesh() == 2.0);
    CHECK(validate(Chain(c, {0, 1}, Scale(1))));
}

TEST_CASE("inverse and concatenation") {
    const auto c = line(5, 1.0);
    const Chain a(c, {0, 1, 2}, Scale(1)), b(c, {2, 3}, Scale(1));
    CHECK(inverse(a).vertex_list() == std::vector<VertexId>{2, 1, 0});
    CHECK(inverse(inverse(a)) == a);
    CHECK(concatenate(a, b).vertex_list() == std::vector<VertexId>{0, 1, 2, 3});
    CHECK_THROWS_AS(concatenate(b, a), std::invalid_argument);
    CHECK_THROWS_AS(concatenate(a, Chain(c, {2, 3}, Scale(2))), std::invalid_argument);
    const auto other = line(5, 1.0);
    CHECK_THROWS_AS(concatenate(a, Chain(other, {2, 3}, Scale(1))), std::invalid_argument);
}

TEST_CASE("inverse is an involution on random chains") {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 300; ++k) {
        const auto cloud = testgen::random_cloud(rng, 12);
        const NeighborhoodGraph g(cloud, Scale(0.4));
        const Chain c = testgen::random_chain(rng, cloud, g, 10);
        REQUIRE(inverse(inverse(c)) == c);
        REQUIRE(inverse(c).valid());
    }
}

TEST_CASE("legal moves on a two-point cloud") {
    const auto c = PointCloud::from_points("two", {{0, 0}, {0.5, 0}});
    const Chain pq(c, {0, 1}, Scale(0.5));
    const auto moves = legal_moves(pq);
    REQUIRE(moves.size() == 2);
    CHECK(moves[0] == ElementaryMove::insert(1, 0));
    CHECK(moves[1] == ElementaryMove::insert(1, 1));
    // too far apart: no chain, and a too-coarse chain offers nothing to insert
    const Chain far(c, {0, 1}, Scale(0.4));
    CHECK(legal_moves(far).empty());
}

TEST_CASE("move rules") {
    const auto c = line(5, 1.0);
    const Chain ch(c, {0, 1, 2}, Scale(1));
    // insertion needs both neighbours close
    CHECK(is_legal(ch, ElementaryMove::insert(1, 1)));
    CHECK_FALSE(is_legal(ch, ElementaryMove::insert(1, 2)));
    CHECK_FALSE(is_legal(ch, ElementaryMove::insert(0, 0)));
    CHECK_FALSE(is_legal(ch, ElementaryMove::insert(3, 2)));
    // deletion needs the flanking vertices close
    CHECK_FALSE(is_legal(ch, ElementaryMove::remove(1)));
    CHECK(is_legal(Chain(c, {0, 1, 2}, Scale(2)), ElementaryMove::remove(1)));
    CHECK_FALSE(is_legal(ch, ElementaryMove::remove(0)));
    CHECK_FALSE(is_legal(ch, ElementaryMove::remove(2)));
    CHECK_THROWS_AS(apply(ch, ElementaryMove::remove(1)), std::invalid_argument);
    CHECK(apply(ch, ElementaryMove::insert(2, 2)).vertex_list() == std::vector<VertexId>{0, 1, 2, 2});
    // a one-vertex chain has no interior
    CHECK(legal_moves(Chain(c, {0}, Scale(1))).empty());
}

TEST_CASE("legal_moves respects a candidate restriction") {
    const auto c = line(4, 0.5);
    const Chain ch(c, {0, 2}, Scale(1));
    const std::vector<VertexId> only{1, 1};
    auto moves = legal_moves(ch, std::span<const VertexId>(only));
    REQUIRE(moves.size() == 1);
    CHECK(moves[0] == ElementaryMove::insert(1, 1));
    CHECK(legal_moves(ch).size() == 3);
}

TEST_CASE("components and shortest chains") {
    const auto c = PointCloud::from_points("pts", {{0, 0}, {1, 0}, {2, 0}, {10, 0}, {11, 0}});
    const auto comps = components(c, Scale(1));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == std::vector<VertexId>{0, 1, 2});
    CHECK(comps[1] == std::vector<VertexId>{3, 4});
    CHECK(components(c, Scale(0)).size() == 5);

    auto ch = find_chain(c, 0, 2, Scale(1));
    REQUIRE(ch);
    CHECK(ch->vertex_list() == std::vector<VertexId>{0, 1, 2});
    CHECK_FALSE(find_chain(c, 0, 4, Scale(1)));
    CHECK(find_chain(c, 0, 2, Scale(2))->vertex_list() == std::vector<VertexId>{0, 2});
    CHECK(find_chain(c, 3, 3, Scale(0))->vertex_list() == std::vector<VertexId>{3});
}

TEST_CASE("find_chain is shortest and lexicographically smallest") {
    // a square with both diagonals missing: two shortest routes 0-1-2 and 0-3-2
    const auto c = PointCloud::from_points("sq", {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    auto ch = find_chain(c, 0, 2, Scale(1));
    REQUIRE(ch);
    CHECK(ch->vertex_list() == std::vector<VertexId>{0, 1, 2});
    const NeighborhoodGraph g(c, Scale(1));
    const std::vector<char> blocked{0, 1, 0, 0};
    CHECK(find_chain(g, 0, 2, blocked)->vertex_list() == std::vector<VertexId>{0, 3, 2});
    const std::vector<char> all{1, 1, 1, 1};
    CHECK_FALSE(find_chain(g, 0, 2, all));
    CHECK(find_chain(g, 0, 1, all)->vertex_list() == std::vector<VertexId>{0, 1});  // endpoints exempt
}

TEST_CASE("find_chain hop count matches breadth-first distance") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const auto cloud = testgen::random_cloud(rng, 25);
        const Scale s(0.25);
        const NeighborhoodGraph g(cloud, s);
        const auto a = static_cast<VertexId>(testgen::below(rng, 25));
        const auto b = static_cast<VertexId>(testgen::below(rng, 25));
        // Floyd-Warshall distances
        const std::size_t inf = 1000;
        std::vector<std::vector<std::size_t>> d(25, std::vector<std::size_t>(25, inf));
        for (std::size_t i = 0; i < 25; ++i)
            for (std::size_t j = 0; j < 25; ++j)
                d[i][j] = i == j ? 0 : cloud.in_entourage(i, j, s) ? 1 : inf;
        for (std::size_t m = 0; m < 25; ++m)
            for (std::size_t i = 0; i < 25; ++i)
                for (std::size_t j = 0; j < 25; ++j)
                    d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
        auto ch = find_chain(g, a, b);
        if (d[a][b] >= inf) {
            REQUIRE_FALSE(ch);
        } else {
            REQUIRE(ch);
            REQUIRE(ch->valid());
            REQUIRE(ch->size() == d[a][b] + 1);
            REQUIRE(ch->front() == a);
            REQUIRE(ch->back() == b);
        }
    }
}

TEST_CASE("collapse_repeats") {
    const std::vector<VertexId> v{1, 1, 2, 2, 2, 1, 3, 3};
    CHECK(collapse_repeats(v) == std::vector<VertexId>{1, 2, 1, 3});
    CHECK(collapse_repeats(std::vector<VertexId>{4, 4}) == std::vector<VertexId>{4});
}
